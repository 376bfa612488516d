// ============================================================================
// tcpdl/allen.hpp: Allen's interval algebra
// ============================================================================
//
// The thirteen primitive relations, their converses and the composition
// table.  RelationSet is a 13-bit mask; the empty set is a contradiction and
// the full set carries no information.
//
// The composition table is derived once, at first use, by checking the
// consistency of the endpoint (point algebra) constraints of each triple
// r1 ∘ r2 ⊇ s.  Nothing is hand-typed.
// ============================================================================

#ifndef TCPDL_ALLEN_HPP
#define TCPDL_ALLEN_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcpdl::allen {

enum class Relation : std::uint8_t {
    Before,        // b
    Meets,         // m
    Overlaps,      // o
    Starts,        // s
    During,        // d
    Finishes,      // f
    Equals,        // =
    After,         // bi
    MetBy,         // mi
    OverlappedBy,  // oi
    StartedBy,     // si
    Contains,      // di
    FinishedBy,    // fi
};

inline constexpr std::size_t kRelationCount = 13;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::Before,       Relation::Meets,     Relation::Overlaps, Relation::Starts,
    Relation::During,       Relation::Finishes,  Relation::Equals,   Relation::After,
    Relation::MetBy,        Relation::OverlappedBy, Relation::StartedBy,
    Relation::Contains,     Relation::FinishedBy,
};

constexpr std::size_t index_of(Relation r) noexcept { return static_cast<std::size_t>(r); }

Relation converse(Relation r) noexcept;

/// Short name as emitted on output: b m o s d f = bi mi oi si di fi.
std::string_view short_name(Relation r) noexcept;

/// Long name for display (before, meets, ..., finished-by).
std::string_view long_name(Relation r) noexcept;

/// Accepts short names, `eq`/`=`, and the long names that do not collide
/// with the spec.json timestamp keys (`starts`, `finished-by` are rejected).
std::optional<Relation> parse_relation(std::string_view name) noexcept;

// ── RelationSet ─────────────────────────────────────────────────────────────

class RelationSet {
public:
    using Mask = std::uint16_t;
    static constexpr Mask kFullMask = (1u << kRelationCount) - 1;

    constexpr RelationSet() noexcept = default;
    constexpr RelationSet(Relation r) noexcept : mask_(bit(r)) {}
    constexpr RelationSet(std::initializer_list<Relation> rs) noexcept {
        for (Relation r : rs) mask_ |= bit(r);
    }

    static constexpr RelationSet empty() noexcept { return RelationSet{}; }
    static constexpr RelationSet full() noexcept { return from_mask(kFullMask); }
    static constexpr RelationSet from_mask(Mask m) noexcept {
        RelationSet s;
        s.mask_ = static_cast<Mask>(m & kFullMask);
        return s;
    }

    constexpr Mask mask() const noexcept { return mask_; }
    constexpr bool is_empty() const noexcept { return mask_ == 0; }
    constexpr bool is_full() const noexcept { return mask_ == kFullMask; }
    constexpr bool contains(Relation r) const noexcept { return (mask_ & bit(r)) != 0; }
    constexpr bool subset_of(RelationSet o) const noexcept { return (mask_ & ~o.mask_) == 0; }
    constexpr bool is_singleton() const noexcept { return mask_ != 0 && (mask_ & (mask_ - 1)) == 0; }
    int size() const noexcept;

    constexpr RelationSet& insert(Relation r) noexcept { mask_ |= bit(r); return *this; }

    constexpr RelationSet operator&(RelationSet o) const noexcept { return from_mask(mask_ & o.mask_); }
    constexpr RelationSet operator|(RelationSet o) const noexcept { return from_mask(mask_ | o.mask_); }
    constexpr RelationSet& operator&=(RelationSet o) noexcept { mask_ &= o.mask_; return *this; }
    constexpr RelationSet& operator|=(RelationSet o) noexcept { mask_ |= o.mask_; return *this; }
    constexpr bool operator==(const RelationSet&) const noexcept = default;

    std::vector<Relation> members() const;

    /// "{b,m}" using short names; "{}" for the empty set.
    std::string to_string() const;

private:
    static constexpr Mask bit(Relation r) noexcept { return static_cast<Mask>(1u << index_of(r)); }
    Mask mask_ = 0;
};

RelationSet converse(RelationSet s) noexcept;

RelationSet intersect(RelationSet a, RelationSet b) noexcept;

/// All s such that X r1 Y and Y r2 Z admit X s Z.
RelationSet compose(Relation r1, Relation r2) noexcept;

/// Union of compose() over all member pairs; empty if either side is empty.
RelationSet compose_sets(RelationSet s1, RelationSet s2) noexcept;

/// Parses "{b,m}", "b", "before" or "{before, meets}".  Throws
/// std::invalid_argument on an unknown name.
RelationSet parse_relation_set(std::string_view text);

// ── Concrete intervals ──────────────────────────────────────────────────────

struct Endpoints {
    std::int64_t start = 0;
    std::int64_t end = 0;
};

class InvalidInterval : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The unique relation between two concrete intervals.  Zero-length
/// intervals are admitted; identical points classify as eq.  Throws
/// InvalidInterval if end < start.
Relation relation_of_timestamped(Endpoints a, Endpoints b);

}  // namespace tcpdl::allen

#endif  // TCPDL_ALLEN_HPP
