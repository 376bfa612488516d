// Finite-model oracle for untimed ALCQ concepts: enumerates every
// interpretation over a domain of size d.  Concept extensions are evaluated
// for all atomic assignments at once (one bit per assignment), roles are
// enumerated explicitly.

#ifndef TCPDL_TESTS_DL_ORACLE_HPP
#define TCPDL_TESTS_DL_ORACLE_HPP

#include "tcpdl/concept.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using tcpdl::dl::Concept;
using tcpdl::dl::ConceptKind;

class ModelEnumerator {
public:
    ModelEnumerator(std::vector<std::string> atomics, std::vector<std::string> roles, int domain)
        : atomics_(std::move(atomics)), roles_(std::move(roles)), d_(domain) {
        if (atomics_.size() * d_ > 12 || roles_.size() * d_ * d_ > 20)
            throw std::invalid_argument("oracle domain too large");
        assignments_ = std::size_t{1} << (atomics_.size() * d_);
        words_ = (assignments_ + 63) / 64;
        ones_.assign(words_, ~std::uint64_t{0});
        if (assignments_ % 64) ones_.back() = (std::uint64_t{1} << (assignments_ % 64)) - 1;
        for (std::size_t a = 0; a < atomics_.size(); ++a)
            for (int i = 0; i < d_; ++i) {
                Bits b(words_, 0);
                std::size_t bit = a * d_ + i;
                for (std::size_t k = 0; k < assignments_; ++k)
                    if ((k >> bit) & 1) b[k / 64] |= std::uint64_t{1} << (k % 64);
                atomic_bits_[{atomics_[a], i}] = std::move(b);
            }
    }

    /// Some interpretation of this size has a nonempty extension for c while
    /// every element satisfies every concept in `global`.
    bool satisfiable(const Concept& c, const std::vector<Concept>& global = {}) const {
        const std::size_t role_bits = roles_.size() * d_ * d_;
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << role_bits); ++r) {
            Bits mask = ones_;
            for (const auto& g : global) {
                auto ext = eval(g, r);
                for (int i = 0; i < d_; ++i) and_in(mask, ext[i]);
            }
            auto ext = eval(c, r);
            for (int i = 0; i < d_; ++i) {
                Bits b = ext[i];
                and_in(b, mask);
                if (any(b)) return true;
            }
        }
        return false;
    }

private:
    using Bits = std::vector<std::uint64_t>;

    static void and_in(Bits& a, const Bits& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] &= b[k];
    }
    static void or_in(Bits& a, const Bits& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] |= b[k];
    }
    static bool any(const Bits& a) {
        return std::any_of(a.begin(), a.end(), [](std::uint64_t w) { return w != 0; });
    }
    Bits complement(const Bits& a) const {
        Bits out(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) out[k] = ~a[k] & ones_[k];
        return out;
    }

    bool edge(std::uint64_t r, std::size_t role, int i, int j) const {
        return (r >> (role * d_ * d_ + i * d_ + j)) & 1;
    }

    std::size_t role_index(const std::string& name) const {
        auto it = std::find(roles_.begin(), roles_.end(), name);
        if (it == roles_.end()) throw std::invalid_argument("oracle: unknown role " + name);
        return static_cast<std::size_t>(it - roles_.begin());
    }

    Bits at_least(unsigned n, const std::vector<const Bits*>& succ) const {
        if (n == 0) return ones_;
        Bits out(words_, 0);
        if (n > succ.size()) return out;
        std::vector<bool> pick(succ.size(), false);
        std::fill(pick.begin(), pick.begin() + n, true);
        do {
            Bits b = ones_;
            for (std::size_t k = 0; k < succ.size(); ++k)
                if (pick[k]) and_in(b, *succ[k]);
            or_in(out, b);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return out;
    }

    std::vector<Bits> eval(const Concept& c, std::uint64_t r) const {
        std::vector<Bits> out(d_);
        switch (c.kind()) {
            case ConceptKind::Atomic:
                for (int i = 0; i < d_; ++i) out[i] = atomic_bits_.at({c.name(), i});
                break;
            case ConceptKind::Top:
                for (int i = 0; i < d_; ++i) out[i] = ones_;
                break;
            case ConceptKind::Bottom:
                for (int i = 0; i < d_; ++i) out[i] = Bits(words_, 0);
                break;
            case ConceptKind::Not: {
                auto x = eval(c.child(), r);
                for (int i = 0; i < d_; ++i) out[i] = complement(x[i]);
                break;
            }
            case ConceptKind::And:
            case ConceptKind::Or: {
                auto x = eval(c.child(0), r);
                auto y = eval(c.child(1), r);
                for (int i = 0; i < d_; ++i) {
                    out[i] = x[i];
                    if (c.kind() == ConceptKind::And) and_in(out[i], y[i]); else or_in(out[i], y[i]);
                }
                break;
            }
            case ConceptKind::Exists:
            case ConceptKind::Forall:
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost: {
                auto x = eval(c.child(), r);
                std::size_t role = role_index(c.name());
                for (int i = 0; i < d_; ++i) {
                    std::vector<const Bits*> succ;
                    for (int j = 0; j < d_; ++j)
                        if (edge(r, role, i, j)) succ.push_back(&x[j]);
                    if (c.kind() == ConceptKind::Exists) {
                        out[i] = at_least(1, succ);
                    } else if (c.kind() == ConceptKind::Forall) {
                        out[i] = ones_;
                        for (const Bits* b : succ) and_in(out[i], *b);
                    } else if (c.kind() == ConceptKind::AtLeast) {
                        out[i] = at_least(c.number(), succ);
                    } else {
                        out[i] = complement(at_least(c.number() + 1, succ));
                    }
                }
                break;
            }
            default:
                throw std::invalid_argument("oracle: temporal constructs are not supported");
        }
        return out;
    }

    std::vector<std::string> atomics_;
    std::vector<std::string> roles_;
    int d_;
    std::size_t assignments_ = 0;
    std::size_t words_ = 0;
    Bits ones_;
    std::map<std::pair<std::string, int>, Bits> atomic_bits_;
};

/// Satisfiable in some interpretation with domain size <= max_domain.
inline bool finitely_satisfiable(const Concept& c, const std::vector<Concept>& global = {}, int max_domain = 3) {
    std::vector<std::string> atomics = tcpdl::dl::atomic_names(c);
    for (const auto& g : global)
        for (const auto& a : tcpdl::dl::atomic_names(g)) atomics.push_back(a);
    std::sort(atomics.begin(), atomics.end());
    atomics.erase(std::unique(atomics.begin(), atomics.end()), atomics.end());
    std::vector<std::string> roles;
    auto collect = [&](auto& self, const Concept& x) -> void {
        switch (x.kind()) {
            case ConceptKind::Exists:
            case ConceptKind::Forall:
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost:
                if (std::find(roles.begin(), roles.end(), x.name()) == roles.end()) roles.push_back(x.name());
                break;
            default:
                break;
        }
        for (std::size_t i = 0; i < x.arity(); ++i) self(self, x.child(i));
    };
    collect(collect, c);
    for (const auto& g : global) collect(collect, g);
    for (int d = 1; d <= max_domain; ++d)
        if (ModelEnumerator(atomics, roles, d).satisfiable(c, global)) return true;
    return false;
}

/// Random untimed concept: atomics from {A,B,C}, roles from {R,S},
/// quantifier depth <= max_depth, number restrictions with n <= 2.
class ConceptGenerator {
public:
    explicit ConceptGenerator(std::uint32_t seed) : rng_(seed) {}

    Concept next(int max_depth = 2) { return gen(max_depth, 3); }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Concept gen(int depth, int budget) {
        static const char* kAtoms[] = {"A", "B", "C"};
        static const char* kRoles[] = {"R", "S"};
        if (budget <= 0) {
            Concept a = Concept::atomic(kAtoms[pick(3)]);
            return pick(3) == 0 ? Concept::negation(a) : a;
        }
        int choice = pick(depth > 0 ? 10 : 5);
        switch (choice) {
            case 0: return Concept::atomic(kAtoms[pick(3)]);
            case 1: return Concept::negation(gen(depth, budget - 1));
            case 2:
            case 3: return Concept::conjunction(gen(depth, budget - 1), gen(depth, budget - 1));
            case 4: return Concept::disjunction(gen(depth, budget - 1), gen(depth, budget - 1));
            case 5: return Concept::some(kRoles[pick(2)], gen(depth - 1, budget - 1));
            case 6: return Concept::all(kRoles[pick(2)], gen(depth - 1, budget - 1));
            case 7: return Concept::at_least(static_cast<unsigned>(pick(3)), kRoles[pick(2)], gen(depth - 1, budget - 1));
            case 8: return Concept::at_most(static_cast<unsigned>(pick(3)), kRoles[pick(2)], gen(depth - 1, budget - 1));
            default: return pick(2) ? Concept::top() : Concept::bottom();
        }
    }

    std::mt19937 rng_;
};

}  // namespace oracle

#endif
