// ============================================================================
// tcpdl/temporal.hpp: qualitative temporal constraint networks
// ============================================================================

#ifndef TCPDL_TEMPORAL_HPP
#define TCPDL_TEMPORAL_HPP

#include "tcpdl/allen.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpdl::temporal {

using allen::RelationSet;
using Tick = std::int64_t;

struct Bounds {
    Tick start = 0;
    Tick end = 0;
    bool operator==(const Bounds&) const = default;
};

enum class Origin : std::uint8_t {
    Declared,  // listed in the knowledge base
    Implicit,  // only referenced as the target of a constraint
    Fresh,     // introduced by a temporal quantifier or a query
};

struct IntervalDecl {
    std::string id;
    std::optional<Bounds> bounds;
    Origin origin = Origin::Declared;
};

class TemporalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownInterval : public TemporalError {
public:
    explicit UnknownInterval(const std::string& id) : TemporalError("unknown interval: " + id) {}
};

class DuplicateInterval : public TemporalError {
public:
    explicit DuplicateInterval(const std::string& id) : TemporalError("duplicate interval: " + id) {}
};

/// Thrown by add_constraint when the new set is disjoint from the stored one.
class InconsistentConstraint : public TemporalError {
public:
    InconsistentConstraint(std::string x, std::string y, RelationSet existing, RelationSet added);
    std::string x, y;
    RelationSet existing, added;
};

struct Witness {
    std::string x, y, z;
    RelationSet xy, yz, xz;  // xz is the stored set before tightening
    RelationSet composed;    // compose_sets(xy, yz)
};

struct PathConsistencyResult {
    bool consistent = true;
    std::optional<Witness> witness;
};

struct TimestampConflict {
    std::string x, y;
    RelationSet declared;
    allen::Relation from_timestamps;
};

struct ReconcileResult {
    std::vector<TimestampConflict> conflicts;
    bool ok() const { return conflicts.empty(); }
};

class TemporalNetwork {
public:
    enum class BoundsPolicy { Apply, Defer };

    /// Registers an interval with FULL relations to every other one.  With
    /// BoundsPolicy::Apply, bounded pairs are tightened immediately to their
    /// timestamp relation.
    void add_interval(IntervalDecl decl, BoundsPolicy policy = BoundsPolicy::Apply);

    /// Intersects rels into constraint(x, y) and the converse into
    /// constraint(y, x).  Throws InconsistentConstraint on an empty result;
    /// the network is left unchanged in that case.
    void add_constraint(const std::string& x, RelationSet rels, const std::string& y);

    /// Queue-driven path consistency to a fixpoint.  On inconsistency the
    /// network is left partially tightened.
    PathConsistencyResult path_consistency();

    /// Intersects the timestamp relation of every bounded pair into the
    /// qualitative constraint; conflicts are reported, not thrown.
    ReconcileResult reconcile_timestamps();

    RelationSet implied_relation(const std::string& x, const std::string& y) const;
    RelationSet relation(std::size_t i, std::size_t j) const { return matrix_[i][j]; }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    std::size_t index_of(const std::string& id) const;
    std::size_t size() const { return intervals_.size(); }
    const std::vector<IntervalDecl>& intervals() const { return intervals_; }
    const IntervalDecl& interval(std::size_t i) const { return intervals_[i]; }

    /// Id that is not yet registered, derived from base.
    std::string fresh_id(const std::string& base) const;

    bool operator==(const TemporalNetwork& o) const { return intervals_ == o.intervals_ && matrix_ == o.matrix_; }

private:
    std::vector<IntervalDecl> intervals_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<RelationSet>> matrix_;
};

bool operator==(const IntervalDecl& a, const IntervalDecl& b);

}  // namespace tcpdl::temporal

#endif  // TCPDL_TEMPORAL_HPP
