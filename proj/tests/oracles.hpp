// Brute-force oracles shared by the unit and acceptance suites.  None of
// them calls into the code path they check.

#ifndef TCPDL_TESTS_ORACLES_HPP
#define TCPDL_TESTS_ORACLES_HPP

#include "tcpdl/allen.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using tcpdl::allen::Relation;
using tcpdl::allen::RelationSet;

struct Iv {
    int s, e;
};

// Endpoint definitions of the thirteen relations for proper intervals.
inline Relation classify(Iv x, Iv y) {
    if (x.e < y.s) return Relation::Before;
    if (x.e == y.s) return Relation::Meets;
    if (y.e < x.s) return Relation::After;
    if (y.e == x.s) return Relation::MetBy;
    if (x.s == y.s && x.e == y.e) return Relation::Equals;
    if (x.s == y.s) return x.e < y.e ? Relation::Starts : Relation::StartedBy;
    if (x.e == y.e) return x.s > y.s ? Relation::Finishes : Relation::FinishedBy;
    if (x.s < y.s) return x.e < y.e ? Relation::Overlaps : Relation::Contains;
    return x.e < y.e ? Relation::During : Relation::OverlappedBy;
}

inline std::vector<Iv> proper_intervals(int lo, int hi) {
    std::vector<Iv> out;
    for (int s = lo; s <= hi; ++s)
        for (int e = s + 1; e <= hi; ++e) out.push_back({s, e});
    return out;
}

// Observed X-Z relations over all triples with X r1 Y and Y r2 Z.
using Table = std::array<std::array<RelationSet, 13>, 13>;

inline Table composition_by_enumeration(int lo = 0, int hi = 12) {
    Table t{};
    auto ivs = proper_intervals(lo, hi);
    for (const auto& x : ivs)
        for (const auto& y : ivs) {
            auto r1 = static_cast<std::size_t>(classify(x, y));
            for (const auto& z : ivs) {
                auto r2 = static_cast<std::size_t>(classify(y, z));
                t[r1][r2].insert(classify(x, z));
            }
        }
    return t;
}

// A network of n intervals with constraints c[i][j] (i < j meaningful).
struct Net {
    int n = 0;
    std::vector<std::vector<RelationSet>> c;
};

// Backtracking search over proper integer intervals in [lo, hi].  For n <= 5
// the range [0,10] is complete: a scenario needs at most 2n <= 10 distinct
// endpoint values.
inline std::optional<std::vector<Iv>> solve(const Net& net, int lo = 0, int hi = 10) {
    auto ivs = proper_intervals(lo, hi);
    std::vector<Iv> assign;
    auto rec = [&](auto& self, int k) -> bool {
        if (k == net.n) return true;
        for (const auto& iv : ivs) {
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                ok = net.c[j][k].contains(classify(assign[j], iv));
            }
            if (!ok) continue;
            assign.push_back(iv);
            if (self(self, k + 1)) return true;
            assign.pop_back();
        }
        return false;
    };
    if (rec(rec, 0)) return assign;
    return std::nullopt;
}

}  // namespace oracle

#endif
