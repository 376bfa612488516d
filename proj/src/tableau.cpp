#include "tcpdl/tableau.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tcpdl::dl {

using allen::Relation;
using allen::RelationSet;
using temporal::TemporalNetwork;

allen::RelationSet PreventiveAxiom::effective_relations() const {
    RelationSet out = relations;
    if (out.contains(Relation::Before)) out.insert(Relation::Meets);
    if (out.contains(Relation::After)) out.insert(Relation::MetBy);
    return out;
}

namespace {

constexpr int kAlways = -1;

struct Node {
    std::string individual;  // empty for anonymous nodes
    int parent = -1;
    bool alive = true;
    std::map<int, std::set<int>> label;  // time key -> concept ids

    bool named() const { return !individual.empty(); }
};

struct Edge {
    int from;
    int to;
    int role;
    int key;
    bool operator==(const Edge&) const = default;
};

struct State {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> distinct;
    TemporalNetwork net;
    std::set<std::pair<int, int>> expanded;  // (node, temporal-quantifier id)
    std::map<std::string, std::string> fresh_signature;  // fresh interval -> "var@binder"
    int fresh_counter = 0;

    std::size_t alive_count() const {
        return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.alive; }));
    }
};

struct Clash {
    std::string message;
};

struct ResourceExhausted {};

class Reasoner {
public:
    Reasoner(const TBox& tbox, const TableauOptions& opts) : opts_(opts) {
        for (const auto& ax : tbox.subsumptions) {
            if (!free_intervals(ax.sub).empty() || contains_quantifier(ax.sub))
                throw std::invalid_argument("subsumption with a temporally qualified left-hand side: " +
                                            ax.sub.to_string());
            tbox_ids_.push_back(intern(nnf(Concept::disjunction(Concept::negation(ax.sub), ax.sup))));
        }
        for (const auto& ax : tbox.preventive)
            preventive_.push_back({ax.id, intern(nnf(ax.guard)), intern(negate_nnf(ax.effect)),
                                   ax.effective_relations()});
    }

    TableauResult run(State initial) {
        TableauResult res;
        try {
            bool sat = solve(std::move(initial), res);
            res.verdict = sat ? Verdict::Satisfiable : Verdict::Unsatisfiable;
            if (!sat) res.trace = clashes_;
        } catch (const ResourceExhausted&) {
            res.verdict = Verdict::ResourceLimit;
            res.trace = clashes_;
            res.trace.push_back("resource ceiling reached (nodes <= " + std::to_string(opts_.max_nodes) +
                                ", branches <= " + std::to_string(opts_.max_branches) + ")");
        }
        res.branches = branches_;
        res.max_graph_size = max_graph_;
        return res;
    }

    int intern(const Concept& c) {
        auto it = ids_.find(c);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(concepts_.size());
        concepts_.push_back(c);
        ids_.emplace(c, id);
        return id;
    }

    const std::vector<int>& tbox_ids() const { return tbox_ids_; }

    int role_id(const std::string& r) {
        auto [it, inserted] = roles_.emplace(r, static_cast<int>(roles_.size()));
        if (inserted) role_names_.push_back(r);
        return it->second;
    }

    int key_of(State& s, const std::string& interval) {
        if (!s.net.contains(interval))
            s.net.add_interval({interval, std::nullopt, temporal::Origin::Implicit});
        return static_cast<int>(s.net.index_of(interval));
    }

private:
    struct Prevent {
        std::string id;
        int guard;
        int neg_effect;
        RelationSet rels;
    };

    static bool contains_quantifier(const Concept& c) {
        if (c.kind() == ConceptKind::TemporalExists) return true;
        for (std::size_t i = 0; i < c.arity(); ++i)
            if (contains_quantifier(c.child(i))) return true;
        return false;
    }

    int negation_of(int id) {
        auto it = neg_.find(id);
        if (it != neg_.end()) return it->second;
        int n = intern(negate_nnf(concepts_[id]));
        neg_.emplace(id, n);
        return n;
    }

    const Concept& concept_of(int id) const { return concepts_[static_cast<std::size_t>(id)]; }

    // ── time keys ───────────────────────────────────────────────────────────

    static bool same_time(const State& s, int a, int b) {
        if (a == b) return true;
        if (a == kAlways || b == kAlways) return false;
        return s.net.relation(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) == RelationSet(Relation::Equals);
    }

    static bool compatible(const State& s, int a, int b) {
        return a == kAlways || b == kAlways || same_time(s, a, b);
    }

    static int target_key(int restriction_key, int edge_key) {
        return restriction_key == kAlways ? edge_key : restriction_key;
    }

    static bool holds(const State& s, int node, int key, int cid) {
        const auto& label = s.nodes[static_cast<std::size_t>(node)].label;
        if (auto it = label.find(kAlways); it != label.end() && it->second.count(cid)) return true;
        if (key == kAlways) return false;
        for (const auto& [k, set] : label)
            if (k != kAlways && same_time(s, key, k) && set.count(cid)) return true;
        return false;
    }

    static bool add(State& s, int node, int key, int cid) {
        return s.nodes[static_cast<std::size_t>(node)].label[key].insert(cid).second;
    }

    std::string key_name(const State& s, int key) const {
        return key == kAlways ? std::string("always") : s.net.interval(static_cast<std::size_t>(key)).id;
    }

    std::string node_name(const State& s, int node) const {
        const auto& n = s.nodes[static_cast<std::size_t>(node)];
        return n.named() ? n.individual : "_:n" + std::to_string(node);
    }

    // ── successors ──────────────────────────────────────────────────────────

    struct Successor {
        int node;
        int target;  // key at which the restriction's filler is evaluated
    };

    std::vector<Successor> successors(const State& s, int x, int role, int key) const {
        std::vector<Successor> out;
        for (const auto& e : s.edges) {
            if (e.from != x || e.role != role || !compatible(s, key, e.key)) continue;
            if (!s.nodes[static_cast<std::size_t>(e.to)].alive) continue;
            Successor succ{e.to, target_key(key, e.key)};
            bool seen = false;
            for (const auto& o : out) seen = seen || (o.node == succ.node && o.target == succ.target);
            if (!seen) out.push_back(succ);
        }
        return out;
    }

    std::vector<int> satisfying(const State& s, int x, int role, int key, int filler) const {
        std::vector<int> out;
        for (const auto& e : s.edges) {
            if (e.from != x || e.role != role || !compatible(s, key, e.key)) continue;
            if (!s.nodes[static_cast<std::size_t>(e.to)].alive) continue;
            if (std::find(out.begin(), out.end(), e.to) != out.end()) continue;
            if (holds(s, e.to, target_key(key, e.key), filler)) out.push_back(e.to);
        }
        return out;
    }

    static bool are_distinct(const State& s, int a, int b) {
        if (a == b) return false;
        const auto& na = s.nodes[static_cast<std::size_t>(a)];
        const auto& nb = s.nodes[static_cast<std::size_t>(b)];
        if (na.named() && nb.named()) return true;  // unique names
        return s.distinct.count({std::min(a, b), std::max(a, b)}) != 0;
    }

    static bool has_distinct_subset(const State& s, const std::vector<int>& cands, unsigned n) {
        if (n == 0) return true;
        std::vector<int> chosen;
        std::function<bool(std::size_t)> rec = [&](std::size_t from) {
            if (chosen.size() == n) return true;
            for (std::size_t i = from; i < cands.size(); ++i) {
                bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int c) { return are_distinct(s, c, cands[i]); });
                if (!ok) continue;
                chosen.push_back(cands[i]);
                if (rec(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        return rec(0);
    }

    int new_node(State& s, int parent) {
        Node n;
        n.parent = parent;
        s.nodes.push_back(std::move(n));
        int id = static_cast<int>(s.nodes.size()) - 1;
        for (int t : tbox_ids_) add(s, id, kAlways, t);
        std::size_t alive = s.alive_count();
        max_graph_ = std::max(max_graph_, alive);
        if (alive > opts_.max_nodes) throw ResourceExhausted{};
        return id;
    }

    void prune_subtree(State& s, int root) {
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            if (!s.nodes[i].alive || s.nodes[i].named()) continue;
            for (int p = s.nodes[i].parent; p != -1; p = s.nodes[static_cast<std::size_t>(p)].parent) {
                if (p == root) {
                    s.nodes[i].alive = false;
                    break;
                }
                if (s.nodes[static_cast<std::size_t>(p)].named()) break;
            }
        }
        std::erase_if(s.edges, [&](const Edge& e) {
            return !s.nodes[static_cast<std::size_t>(e.from)].alive || !s.nodes[static_cast<std::size_t>(e.to)].alive ||
                   e.from == root;
        });
    }

    void merge(State& s, int from, int into) {
        if (s.nodes[static_cast<std::size_t>(from)].named()) std::swap(from, into);
        prune_subtree(s, from);
        for (const auto& [key, set] : s.nodes[static_cast<std::size_t>(from)].label)
            for (int c : set) add(s, into, key, c);
        std::vector<Edge> edges;
        for (Edge e : s.edges) {
            if (e.to == from) e.to = into;
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
        s.edges = std::move(edges);
        std::set<std::pair<int, int>> distinct;
        for (auto [a, b] : s.distinct) {
            if (a == from) a = into;
            if (b == from) b = into;
            distinct.insert({std::min(a, b), std::max(a, b)});
        }
        s.distinct = std::move(distinct);
        s.nodes[static_cast<std::size_t>(from)].alive = false;
    }

    // ── blocking ────────────────────────────────────────────────────────────

    // Label projected onto interval signatures so that fresh intervals
    // introduced for the same quantifier variable compare equal.
    std::map<std::string, std::set<int>> signature(const State& s, int node) {
        std::map<std::string, std::set<int>> out;
        std::vector<std::pair<std::string, std::string>> mapping(s.fresh_signature.begin(), s.fresh_signature.end());
        for (const auto& [key, set] : s.nodes[static_cast<std::size_t>(node)].label) {
            std::string k;
            if (key == kAlways) {
                k = "*";
            } else {
                const std::string& id = s.net.interval(static_cast<std::size_t>(key)).id;
                auto it = s.fresh_signature.find(id);
                k = it == s.fresh_signature.end() ? id : it->second;
            }
            auto& dst = out[k];
            for (int c : set) {
                const Concept& con = concept_of(c);
                if (mapping.empty() || free_intervals(con).empty()) {
                    dst.insert(c);
                } else {
                    dst.insert(intern(rename_intervals(con, mapping)));
                }
            }
        }
        return out;
    }

    static bool subset(const std::map<std::string, std::set<int>>& a, const std::map<std::string, std::set<int>>& b) {
        for (const auto& [k, set] : a) {
            if (set.empty()) continue;
            auto it = b.find(k);
            if (it == b.end()) return false;
            if (!std::includes(it->second.begin(), it->second.end(), set.begin(), set.end())) return false;
        }
        return true;
    }

    bool directly_blocked(const State& s, int node) {
        const auto& n = s.nodes[static_cast<std::size_t>(node)];
        if (n.named()) return false;
        auto sig = signature(s, node);
        for (int p = n.parent; p != -1; p = s.nodes[static_cast<std::size_t>(p)].parent) {
            const auto& pn = s.nodes[static_cast<std::size_t>(p)];
            if (pn.named()) break;
            if (subset(sig, signature(s, p))) return true;
        }
        return false;
    }

    bool blocked(const State& s, int node) {
        for (int p = node; p != -1; p = s.nodes[static_cast<std::size_t>(p)].parent) {
            if (s.nodes[static_cast<std::size_t>(p)].named()) return false;
            if (directly_blocked(s, p)) return true;
        }
        return false;
    }

    // ── rules ───────────────────────────────────────────────────────────────

    using Item = std::tuple<int, int, int>;  // node, key, concept

    static std::vector<Item> items(const State& s) {
        std::vector<Item> out;
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            if (!s.nodes[i].alive) continue;
            for (const auto& [key, set] : s.nodes[i].label)
                for (int c : set) out.emplace_back(static_cast<int>(i), key, c);
        }
        return out;
    }

    std::optional<Clash> find_clash(const State& s) const {
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            const auto& n = s.nodes[i];
            if (!n.alive) continue;
            for (const auto& [key, set] : n.label) {
                for (int c : set) {
                    const Concept& con = concept_of(c);
                    if (con.kind() == ConceptKind::Bottom)
                        return Clash{"bottom at " + node_name(s, static_cast<int>(i)) + " during " + key_name(s, key)};
                    if (con.kind() != ConceptKind::Not || con.child().kind() != ConceptKind::Atomic) continue;
                    auto pos = ids_.find(con.child());
                    if (pos == ids_.end()) continue;
                    for (const auto& [k2, set2] : n.label) {
                        if (!compatible(s, key, k2) || !set2.count(pos->second)) continue;
                        return Clash{con.child().to_string() + " and " + con.to_string() + " at " +
                                     node_name(s, static_cast<int>(i)) + " during " + key_name(s, k2) +
                                     (k2 == key ? "" : " / " + key_name(s, key))};
                    }
                }
            }
        }
        return std::nullopt;
    }

    // Applies deterministic rules to a fixpoint; returns a clash if one of
    // them fails (temporal quantifier inconsistency, unknown interval).
    std::optional<Clash> saturate(State& s) {
        for (bool changed = true; changed;) {
            changed = false;
            for (auto [node, key, cid] : items(s)) {
                if (!s.nodes[static_cast<std::size_t>(node)].alive) continue;
                const Concept con = concept_of(cid);
                switch (con.kind()) {
                    case ConceptKind::And:
                        changed |= add(s, node, key, intern(con.child(0)));
                        changed |= add(s, node, key, intern(con.child(1)));
                        break;
                    case ConceptKind::At:
                        changed |= add(s, node, key_of(s, con.name()), intern(con.child()));
                        break;
                    case ConceptKind::TemporalExists:
                        if (s.expanded.insert({node, cid}).second) {
                            if (auto clash = expand_temporal(s, node, key, cid)) return clash;
                            changed = true;
                        }
                        break;
                    case ConceptKind::Forall: {
                        int role = role_id(con.name());
                        int filler = intern(con.child());
                        for (const auto& succ : successors(s, node, role, key))
                            changed |= add(s, succ.node, succ.target, filler);
                        break;
                    }
                    default:
                        break;
                }
            }
            changed |= apply_preventive(s);
        }
        return std::nullopt;
    }

    std::optional<Clash> expand_temporal(State& s, int node, int key, int cid) {
        const Concept& con = concept_of(cid);
        std::vector<std::pair<std::string, std::string>> mapping;
        for (const auto& v : con.vars()) {
            std::string fresh = s.net.fresh_id(v + "#" + std::to_string(++s.fresh_counter));
            s.net.add_interval({fresh, std::nullopt, temporal::Origin::Fresh});
            s.fresh_signature[fresh] = v + "@" + std::to_string(cid);
            mapping.emplace_back(v, fresh);
        }
        auto rn = [&](const std::string& id) {
            for (const auto& [from, to] : mapping)
                if (from == id) return to;
            return id;
        };
        try {
            for (const auto& k : con.constraints()) {
                std::string x = rn(k.x), y = rn(k.y);
                key_of(s, x);
                key_of(s, y);
                s.net.add_constraint(x, k.rels, y);
            }
        } catch (const temporal::InconsistentConstraint& e) {
            return Clash{"temporal quantifier " + con.to_string() + " at " + node_name(s, node) + ": " + e.what()};
        }
        auto pc = s.net.path_consistency();
        if (!pc.consistent) {
            const auto& w = *pc.witness;
            return Clash{"temporal quantifier " + con.to_string() + " at " + node_name(s, node) +
                         ": no consistent placement (" + w.x + ", " + w.y + ", " + w.z + ")"};
        }
        add(s, node, key, intern(rename_intervals(con.child(), mapping)));
        return std::nullopt;
    }

    bool apply_preventive(State& s) {
        if (preventive_.empty()) return false;
        bool changed = false;
        const std::size_t n = s.net.size();
        for (const auto& ax : preventive_) {
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) {
                    RelationSet r = s.net.relation(u, v);
                    if (u == v || r.is_empty() || !r.subset_of(ax.rels)) continue;
                    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
                        if (!s.nodes[i].alive) continue;
                        if (holds(s, static_cast<int>(i), static_cast<int>(u), ax.guard))
                            changed |= add(s, static_cast<int>(i), static_cast<int>(v), ax.neg_effect);
                    }
                }
            }
        }
        return changed;
    }

    // ── search ──────────────────────────────────────────────────────────────

    void record(const Clash& c) {
        if (clashes_.size() < 16 && std::find(clashes_.begin(), clashes_.end(), c.message) == clashes_.end())
            clashes_.push_back(c.message);
    }

    bool branch(const State& s, const std::vector<std::function<void(State&)>>& alternatives, TableauResult& res) {
        for (const auto& alt : alternatives) {
            if (++branches_ > opts_.max_branches) throw ResourceExhausted{};
            State copy = s;
            alt(copy);
            if (solve(std::move(copy), res)) return true;
        }
        return false;
    }

    bool solve(State s, TableauResult& res) {
        for (;;) {
            if (auto clash = saturate(s)) {
                record(*clash);
                return false;
            }
            if (auto clash = find_clash(s)) {
                record(*clash);
                return false;
            }

            // Disjunction.
            for (auto [node, key, cid] : items(s)) {
                const Concept con = concept_of(cid);
                if (con.kind() != ConceptKind::Or) continue;
                int a = intern(con.child(0)), b = intern(con.child(1));
                if (holds(s, node, key, a) || holds(s, node, key, b)) continue;
                return branch(s,
                              {[=](State& st) { add(st, node, key, a); },
                               [=](State& st) { add(st, node, key, b); }},
                              res);
            }

            // Choose rule and merging for at-most restrictions.
            for (auto [node, key, cid] : items(s)) {
                const Concept con = concept_of(cid);
                if (con.kind() != ConceptKind::AtMost) continue;
                int role = role_id(con.name());
                int filler = intern(con.child());
                int neg = negation_of(filler);
                for (const auto& succ : successors(s, node, role, key)) {
                    if (holds(s, succ.node, succ.target, filler) || holds(s, succ.node, succ.target, neg)) continue;
                    int y = succ.node, t = succ.target;
                    return branch(s,
                                  {[=](State& st) { add(st, y, t, filler); },
                                   [=](State& st) { add(st, y, t, neg); }},
                                  res);
                }
                auto sat = satisfying(s, node, role, key, filler);
                if (sat.size() <= con.number()) continue;
                std::vector<std::function<void(State&)>> merges;
                for (std::size_t i = 0; i < sat.size(); ++i)
                    for (std::size_t j = i + 1; j < sat.size(); ++j) {
                        if (are_distinct(s, sat[i], sat[j])) continue;
                        int y = sat[j], z = sat[i];
                        merges.push_back([this, y, z](State& st) { merge(st, y, z); });
                    }
                if (merges.empty()) {
                    record({"more than " + std::to_string(con.number()) + " distinct " + con.name() +
                            "-successors of " + node_name(s, node) + " satisfy " + con.child().to_string()});
                    return false;
                }
                return branch(s, merges, res);
            }

            // Generating rules on unblocked nodes.
            bool generated = false;
            for (auto [node, key, cid] : items(s)) {
                if (!s.nodes[static_cast<std::size_t>(node)].alive) continue;
                const Concept con = concept_of(cid);
                if (con.kind() != ConceptKind::Exists && con.kind() != ConceptKind::AtLeast) continue;
                int role = role_id(con.name());
                int filler = intern(con.child());
                unsigned need = con.kind() == ConceptKind::Exists ? 1u : con.number();
                if (need == 0) continue;
                auto sat = satisfying(s, node, role, key, filler);
                if (con.kind() == ConceptKind::Exists ? !sat.empty() : has_distinct_subset(s, sat, need)) continue;
                if (blocked(s, node)) continue;
                std::vector<int> created;
                for (unsigned k = 0; k < need; ++k) {
                    int y = new_node(s, node);
                    s.edges.push_back({node, y, role, key});
                    add(s, y, key, filler);
                    for (int other : created) s.distinct.insert({std::min(other, y), std::max(other, y)});
                    created.push_back(y);
                }
                generated = true;
                break;
            }
            if (generated) continue;

            res.trace = model_sketch(s);
            return true;
        }
    }

    std::vector<std::string> model_sketch(const State& s) const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < s.nodes.size() && out.size() < 32; ++i) {
            const auto& n = s.nodes[i];
            if (!n.alive) continue;
            for (const auto& [key, set] : n.label) {
                std::string line = node_name(s, static_cast<int>(i)) + " [" + key_name(s, key) + "]:";
                for (int c : set) {
                    const Concept& con = concept_of(c);
                    if (con.is_literal()) line += " " + con.to_string();
                }
                out.push_back(line);
            }
        }
        for (const auto& e : s.edges)
            if (s.nodes[static_cast<std::size_t>(e.from)].alive && s.nodes[static_cast<std::size_t>(e.to)].alive)
                out.push_back(node_name(s, e.from) + " -" + role_names_[static_cast<std::size_t>(e.role)] + "[" +
                              key_name(s, e.key) + "]-> " + node_name(s, e.to));
        return out;
    }

    TableauOptions opts_;
    std::vector<Concept> concepts_;
    std::map<Concept, int> ids_;
    std::map<int, int> neg_;
    std::map<std::string, int> roles_;
    std::vector<std::string> role_names_;
    std::vector<int> tbox_ids_;
    std::vector<Prevent> preventive_;
    std::vector<std::string> clashes_;
    std::size_t branches_ = 0;
    std::size_t max_graph_ = 0;
};

}  // namespace

TableauResult is_satisfiable(const TBox& tbox, const Concept& c, const TemporalNetwork& net,
                             const TableauOptions& opts) {
    Reasoner r(tbox, opts);
    State s;
    s.net = net;
    Node root;
    for (int t : r.tbox_ids()) root.label[kAlways].insert(t);
    root.label[kAlways].insert(r.intern(nnf(c)));
    s.nodes.push_back(std::move(root));
    return r.run(std::move(s));
}

TableauResult kb_consistent(const TBox& tbox, const ABox& abox, const TemporalNetwork& net,
                            const TableauOptions& opts) {
    Reasoner r(tbox, opts);
    State s;
    s.net = net;
    std::map<std::string, int> individuals;
    auto node_for = [&](const std::string& name) {
        auto [it, inserted] = individuals.emplace(name, static_cast<int>(s.nodes.size()));
        if (inserted) {
            Node n;
            n.individual = name;
            for (int t : r.tbox_ids()) n.label[kAlways].insert(t);
            s.nodes.push_back(std::move(n));
        }
        return it->second;
    };
    for (const auto& a : abox.concepts) {
        int node = node_for(a.individual);
        int key = a.interval ? r.key_of(s, *a.interval) : kAlways;
        s.nodes[static_cast<std::size_t>(node)].label[key].insert(r.intern(nnf(a.expr)));
    }
    for (const auto& ra : abox.roles) {
        int from = node_for(ra.subject);
        int to = node_for(ra.object);
        int key = ra.interval ? r.key_of(s, *ra.interval) : kAlways;
        s.edges.push_back({from, to, r.role_id(ra.role), key});
    }
    return r.run(std::move(s));
}

bool subsumes(const TBox& tbox, const Concept& c, const Concept& d, const TemporalNetwork& net,
              const TableauOptions& opts) {
    auto res = is_satisfiable(tbox, Concept::conjunction(c, Concept::negation(d)), net, opts);
    if (res.verdict == Verdict::ResourceLimit)
        throw TableauLimit("subsumption test exceeded the tableau resource ceiling");
    return res.verdict == Verdict::Unsatisfiable;
}

}  // namespace tcpdl::dl
