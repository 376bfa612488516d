#include "tcpdl/temporal.hpp"

#include <deque>

namespace tcpdl::temporal {

using allen::Relation;

bool operator==(const IntervalDecl& a, const IntervalDecl& b) {
    return a.id == b.id && a.bounds == b.bounds && a.origin == b.origin;
}

InconsistentConstraint::InconsistentConstraint(std::string x_, std::string y_, RelationSet existing_,
                                               RelationSet added_)
    : TemporalError("inconsistent constraint " + x_ + " " + added_.to_string() + " " + y_ +
                    " (already " + existing_.to_string() + ")"),
      x(std::move(x_)),
      y(std::move(y_)),
      existing(existing_),
      added(added_) {}

void TemporalNetwork::add_interval(IntervalDecl decl, BoundsPolicy policy) {
    if (contains(decl.id)) throw DuplicateInterval(decl.id);
    if (decl.bounds && decl.bounds->end < decl.bounds->start)
        throw allen::InvalidInterval("interval " + decl.id + " ends before it starts");

    const std::size_t n = intervals_.size();
    for (auto& row : matrix_) row.push_back(RelationSet::full());
    matrix_.emplace_back(n + 1, RelationSet::full());
    matrix_[n][n] = Relation::Equals;
    index_.emplace(decl.id, n);
    intervals_.push_back(std::move(decl));

    const auto& added = intervals_[n];
    if (policy == BoundsPolicy::Apply && added.bounds) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& other = intervals_[i];
            if (!other.bounds) continue;
            Relation r = allen::relation_of_timestamped({added.bounds->start, added.bounds->end},
                                                        {other.bounds->start, other.bounds->end});
            matrix_[n][i] = r;
            matrix_[i][n] = allen::converse(r);
        }
    }
}

std::size_t TemporalNetwork::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownInterval(id);
    return it->second;
}

void TemporalNetwork::add_constraint(const std::string& x, RelationSet rels, const std::string& y) {
    const std::size_t i = index_of(x);
    const std::size_t j = index_of(y);
    if (i == j) rels = rels & RelationSet(Relation::Equals);
    RelationSet tightened = matrix_[i][j] & rels;
    if (tightened.is_empty()) throw InconsistentConstraint(x, y, matrix_[i][j], rels);
    matrix_[i][j] = tightened;
    matrix_[j][i] = allen::converse(tightened);
}

PathConsistencyResult TemporalNetwork::path_consistency() {
    const std::size_t n = intervals_.size();
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    std::vector<std::vector<bool>> queued(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            queue.emplace_back(i, j);
            queued[i][j] = true;
        }

    // Tightens (a,c) through b; returns false on an empty result.
    auto revise = [&](std::size_t a, std::size_t b, std::size_t c, PathConsistencyResult& res) {
        RelationSet composed = allen::compose_sets(matrix_[a][b], matrix_[b][c]);
        RelationSet next = matrix_[a][c] & composed;
        if (next == matrix_[a][c]) return true;
        if (next.is_empty()) {
            res.consistent = false;
            res.witness = Witness{intervals_[a].id, intervals_[b].id, intervals_[c].id,
                                  matrix_[a][b], matrix_[b][c], matrix_[a][c], composed};
            return false;
        }
        matrix_[a][c] = next;
        matrix_[c][a] = allen::converse(next);
        auto lo = std::min(a, c), hi = std::max(a, c);
        if (!queued[lo][hi]) {
            queued[lo][hi] = true;
            queue.emplace_back(lo, hi);
        }
        return true;
    };

    PathConsistencyResult res;
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        queued[i][j] = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            // (i,j) changed: re-examine (i,k) via j and (k,j) via i.
            if (!revise(i, j, k, res)) return res;
            if (!revise(k, i, j, res)) return res;
        }
    }
    return res;
}

ReconcileResult TemporalNetwork::reconcile_timestamps() {
    ReconcileResult res;
    const std::size_t n = intervals_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!intervals_[i].bounds) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!intervals_[j].bounds) continue;
            const auto& a = *intervals_[i].bounds;
            const auto& b = *intervals_[j].bounds;
            Relation r = allen::relation_of_timestamped({a.start, a.end}, {b.start, b.end});
            if (!matrix_[i][j].contains(r)) {
                res.conflicts.push_back({intervals_[i].id, intervals_[j].id, matrix_[i][j], r});
                continue;
            }
            matrix_[i][j] = r;
            matrix_[j][i] = allen::converse(r);
        }
    }
    return res;
}

RelationSet TemporalNetwork::implied_relation(const std::string& x, const std::string& y) const {
    return matrix_[index_of(x)][index_of(y)];
}

std::string TemporalNetwork::fresh_id(const std::string& base) const {
    if (!contains(base)) return base;
    for (std::size_t k = 1;; ++k) {
        std::string candidate = base + "#" + std::to_string(k);
        if (!contains(candidate)) return candidate;
    }
}

}  // namespace tcpdl::temporal
