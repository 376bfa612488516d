// ============================================================================
// allen.cpp: relation names, converse, composition via point algebra
// ============================================================================

#include "tcpdl/allen.hpp"

#include <bit>
#include <numeric>

namespace tcpdl::allen {

namespace {

struct NameEntry {
    Relation rel;
    std::string_view short_name;
    std::string_view long_name;
};

constexpr std::array<NameEntry, kRelationCount> kNames = {{
    {Relation::Before, "b", "before"},
    {Relation::Meets, "m", "meets"},
    {Relation::Overlaps, "o", "overlaps"},
    {Relation::Starts, "s", "starts"},
    {Relation::During, "d", "during"},
    {Relation::Finishes, "f", "finishes"},
    {Relation::Equals, "=", "equals"},
    {Relation::After, "bi", "after"},
    {Relation::MetBy, "mi", "met-by"},
    {Relation::OverlappedBy, "oi", "overlapped-by"},
    {Relation::StartedBy, "si", "started-by"},
    {Relation::Contains, "di", "contains"},
    {Relation::FinishedBy, "fi", "finished-by"},
}};

// Endpoint signs of X r Y, in the order (xs?ys, xs?ye, xe?ys, xe?ye);
// -1 is <, 0 is =, +1 is >.
using Signs = std::array<int, 4>;

constexpr std::array<Signs, kRelationCount> kEndpointSigns = {{
    {-1, -1, -1, -1},  // b
    {-1, -1, 0, -1},   // m
    {-1, -1, +1, -1},  // o
    {0, -1, +1, -1},   // s
    {+1, -1, +1, -1},  // d
    {+1, -1, +1, 0},   // f
    {0, -1, +1, 0},    // =
    {+1, +1, +1, +1},  // bi
    {+1, 0, +1, +1},   // mi
    {+1, -1, +1, +1},  // oi
    {0, -1, +1, +1},   // si
    {-1, -1, +1, +1},  // di
    {-1, -1, +1, 0},   // fi
}};

// Six endpoints: X = (0,1), Y = (2,3), Z = (4,5).
struct PointConstraint {
    int a;
    int b;
    int sign;
};

class PointSystem {
public:
    void relate(int a, int b, int sign) { constraints_.push_back({a, b, sign}); }

    void relate_intervals(int x, int y, Relation r) {
        const Signs& s = kEndpointSigns[index_of(r)];
        relate(x, y, s[0]);
        relate(x, y + 1, s[1]);
        relate(x + 1, y, s[2]);
        relate(x + 1, y + 1, s[3]);
    }

    bool consistent() const {
        std::array<int, 6> parent{};
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& c : constraints_)
            if (c.sign == 0) parent[find(c.a)] = find(c.b);

        // less[i][j]: class i < class j
        std::array<std::array<bool, 6>, 6> less{};
        for (const auto& c : constraints_) {
            if (c.sign == 0) continue;
            int lo = find(c.sign < 0 ? c.a : c.b);
            int hi = find(c.sign < 0 ? c.b : c.a);
            if (lo == hi) return false;
            less[lo][hi] = true;
        }
        for (int k = 0; k < 6; ++k)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    if (less[i][k] && less[k][j]) less[i][j] = true;
        for (int i = 0; i < 6; ++i)
            if (less[i][i]) return false;
        return true;
    }

private:
    std::vector<PointConstraint> constraints_;
};

using CompositionTable = std::array<std::array<RelationSet, kRelationCount>, kRelationCount>;

CompositionTable build_composition_table() {
    CompositionTable table{};
    for (Relation r1 : kAllRelations) {
        for (Relation r2 : kAllRelations) {
            RelationSet out;
            for (Relation s : kAllRelations) {
                PointSystem sys;
                sys.relate(0, 1, -1);
                sys.relate(2, 3, -1);
                sys.relate(4, 5, -1);
                sys.relate_intervals(0, 2, r1);
                sys.relate_intervals(2, 4, r2);
                sys.relate_intervals(0, 4, s);
                if (sys.consistent()) out.insert(s);
            }
            table[index_of(r1)][index_of(r2)] = out;
        }
    }
    return table;
}

const CompositionTable& composition_table() {
    static const CompositionTable table = build_composition_table();
    return table;
}

}  // namespace

Relation converse(Relation r) noexcept {
    switch (r) {
        case Relation::Before:       return Relation::After;
        case Relation::Meets:        return Relation::MetBy;
        case Relation::Overlaps:     return Relation::OverlappedBy;
        case Relation::Starts:       return Relation::StartedBy;
        case Relation::During:       return Relation::Contains;
        case Relation::Finishes:     return Relation::FinishedBy;
        case Relation::Equals:       return Relation::Equals;
        case Relation::After:        return Relation::Before;
        case Relation::MetBy:        return Relation::Meets;
        case Relation::OverlappedBy: return Relation::Overlaps;
        case Relation::StartedBy:    return Relation::Starts;
        case Relation::Contains:     return Relation::During;
        case Relation::FinishedBy:   return Relation::Finishes;
    }
    return r;
}

std::string_view short_name(Relation r) noexcept { return kNames[index_of(r)].short_name; }

std::string_view long_name(Relation r) noexcept { return kNames[index_of(r)].long_name; }

std::optional<Relation> parse_relation(std::string_view name) noexcept {
    if (name == "eq" || name == "equal") return Relation::Equals;
    // These two spellings are reserved for interval timestamps in spec.json.
    if (name == "starts" || name == "finished-by") return std::nullopt;
    for (const auto& e : kNames)
        if (name == e.short_name || name == e.long_name) return e.rel;
    return std::nullopt;
}

int RelationSet::size() const noexcept { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<Relation> RelationSet::members() const {
    std::vector<Relation> out;
    for (Relation r : kAllRelations)
        if (contains(r)) out.push_back(r);
    return out;
}

std::string RelationSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (Relation r : members()) {
        if (!first) out += ',';
        out += short_name(r);
        first = false;
    }
    out += '}';
    return out;
}

RelationSet converse(RelationSet s) noexcept {
    RelationSet out;
    for (Relation r : kAllRelations)
        if (s.contains(r)) out.insert(converse(r));
    return out;
}

RelationSet intersect(RelationSet a, RelationSet b) noexcept { return a & b; }

RelationSet compose(Relation r1, Relation r2) noexcept {
    return composition_table()[index_of(r1)][index_of(r2)];
}

RelationSet compose_sets(RelationSet s1, RelationSet s2) noexcept {
    if (s1.is_full() && s2.is_full()) return RelationSet::full();
    const auto& table = composition_table();
    RelationSet out;
    for (Relation r1 : kAllRelations) {
        if (!s1.contains(r1)) continue;
        for (Relation r2 : kAllRelations) {
            if (!s2.contains(r2)) continue;
            out |= table[index_of(r1)][index_of(r2)];
            if (out.is_full()) return out;
        }
    }
    return out;
}

RelationSet parse_relation_set(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (!text.empty() && text.front() == '{') {
        if (text.back() != '}') throw std::invalid_argument("unterminated relation set: " + std::string(text));
        text = text.substr(1, text.size() - 2);
    }
    RelationSet out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        if (item.empty()) throw std::invalid_argument("empty relation name");
        auto rel = parse_relation(item);
        if (!rel) throw std::invalid_argument("unknown Allen relation: " + std::string(item));
        out.insert(*rel);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

Relation relation_of_timestamped(Endpoints a, Endpoints b) {
    if (a.end < a.start || b.end < b.start)
        throw InvalidInterval("interval end precedes its start");
    if (a.start == b.start && a.end == b.end) return Relation::Equals;
    if (a.end < b.start) return Relation::Before;
    if (b.end < a.start) return Relation::After;
    if (a.start == b.start) return a.end < b.end ? Relation::Starts : Relation::StartedBy;
    if (a.end == b.end) return a.start > b.start ? Relation::Finishes : Relation::FinishedBy;
    if (a.end == b.start) return Relation::Meets;
    if (b.end == a.start) return Relation::MetBy;
    if (a.start < b.start) return a.end < b.end ? Relation::Overlaps : Relation::Contains;
    return a.end < b.end ? Relation::During : Relation::OverlappedBy;
}

}  // namespace tcpdl::allen
