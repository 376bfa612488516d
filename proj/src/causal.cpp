#include "tcpdl/causal.hpp"

#include <algorithm>
#include <map>

namespace tcpdl::causal {

using allen::Relation;

namespace {

const RelationSet kPrecedes{Relation::Before, Relation::Meets};

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

const CausalEdge& CausalGraph::add_edge(CausalEdge e) {
    if (e.cause.empty() || e.effect.empty()) throw CausalError("edge needs a cause and an effect");
    if (e.probability && !valid_probability(*e.probability))
        throw CausalError("probability outside [0,1] on " + e.cause + " -> " + e.effect);
    if (e.derived && e.provenance.size() < 2) throw CausalError("derived edge needs at least two sources");
    if (!e.derived) {
        for (const auto& o : edges_)
            if (!o.derived && o.cause == e.cause && o.effect == e.effect && o.anchor_interval == e.anchor_interval)
                throw CausalError("duplicate edge " + e.cause + " -> " + e.effect);
    }
    if (e.id.empty()) e.id = (e.derived ? "d" : "e") + std::to_string(edges_.size());
    if (find(e.id)) throw CausalError("duplicate edge id " + e.id);
    edges_.push_back(std::move(e));
    return edges_.back();
}

const CausalEdge* CausalGraph::find(const std::string& id) const {
    for (const auto& e : edges_)
        if (e.id == id) return &e;
    return nullptr;
}

std::set<std::string> CausalGraph::nodes() const {
    std::set<std::string> out;
    for (const auto& e : edges_) {
        out.insert(e.cause);
        out.insert(e.effect);
    }
    return out;
}

bool CausalGraph::has_node(const std::string& name) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const CausalEdge& e) { return e.cause == name || e.effect == name; });
}

// ── acyclicity ──────────────────────────────────────────────────────────────

bool AcyclicityResult::has_violation() const {
    return std::any_of(issues.begin(), issues.end(), [](const HypothesisIssue& i) { return i.violation; });
}

AcyclicityResult acyclicity_check(const CausalGraph& g, const temporal::TemporalNetwork& net) {
    AcyclicityResult res;
    for (const auto& e : g.edges()) {
        if (e.derived || !e.anchor_interval || !e.effect_interval) continue;
        if (!net.contains(*e.anchor_interval) || !net.contains(*e.effect_interval)) continue;
        RelationSet rel = net.implied_relation(*e.anchor_interval, *e.effect_interval);
        if (rel.subset_of(kPrecedes) && !rel.is_empty()) continue;
        res.issues.push_back({e.id, rel, (rel & kPrecedes).is_empty()});
    }

    std::map<std::string, std::vector<std::string>> succ, pred;
    std::map<std::string, int> indeg;
    for (const auto& n : g.nodes()) indeg[n] = 0;
    for (const auto& e : g.edges()) {
        if (e.derived) continue;
        succ[e.cause].push_back(e.effect);
        pred[e.effect].push_back(e.cause);
        ++indeg[e.effect];
    }
    std::set<std::string> ready;
    for (const auto& [n, d] : indeg)
        if (d == 0) ready.insert(n);
    while (!ready.empty()) {
        std::string n = *ready.begin();
        ready.erase(ready.begin());
        res.order.push_back(n);
        for (const auto& m : succ[n])
            if (--indeg[m] == 0) ready.insert(m);
    }
    if (res.order.size() == indeg.size()) return res;

    // Every remaining node has a remaining predecessor; walk backwards until
    // a node repeats.
    res.dag = false;
    std::set<std::string> remaining;
    for (const auto& [n, d] : indeg)
        if (d > 0) remaining.insert(n);
    std::vector<std::string> walk{*remaining.begin()};
    std::map<std::string, std::size_t> seen{{walk[0], 0}};
    for (;;) {
        const std::string& cur = walk.back();
        std::string prev;
        for (const auto& p : pred[cur])
            if (remaining.count(p) && (prev.empty() || p < prev)) prev = p;
        auto it = seen.find(prev);
        if (it != seen.end()) {
            std::vector<std::string> cyc(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
            std::reverse(cyc.begin(), cyc.end());
            std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
            res.cycle = std::move(cyc);
            break;
        }
        seen[prev] = walk.size();
        walk.push_back(prev);
    }
    res.order.clear();
    return res;
}

// ── paths and closure ───────────────────────────────────────────────────────

Derivation derive(const CausalGraph& g, const std::string& source, const std::string& target, Combination mode,
                  const std::vector<bool>& active) {
    Derivation d;
    const auto& edges = g.edges();
    auto usable = [&](std::size_t i) { return !edges[i].derived && (active.empty() || active[i]); };

    std::vector<std::size_t> stack;
    std::set<std::string> on_path{source};
    auto dfs = [&](auto& self, const std::string& at) -> void {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!usable(i) || edges[i].cause != at) continue;
            const std::string& next = edges[i].effect;
            if (next == target) {
                stack.push_back(i);
                PathInfo p;
                p.nodes.push_back(source);
                std::optional<double> prod = 1.0;
                for (std::size_t k : stack) {
                    p.nodes.push_back(edges[k].effect);
                    p.edge_ids.push_back(edges[k].id);
                    p.factors.push_back(edges[k].probability);
                    if (prod && edges[k].probability) *prod *= *edges[k].probability;
                    else prod.reset();
                }
                p.product = prod;
                d.paths.push_back(std::move(p));
                stack.pop_back();
                continue;
            }
            if (on_path.count(next)) continue;
            on_path.insert(next);
            stack.push_back(i);
            self(self, next);
            stack.pop_back();
            on_path.erase(next);
        }
    };
    if (source != target) dfs(dfs, source);

    for (std::size_t a = 0; a < d.paths.size() && d.independent; ++a)
        for (std::size_t b = a + 1; b < d.paths.size() && d.independent; ++b) {
            const auto& pa = d.paths[a].nodes;
            const auto& pb = d.paths[b].nodes;
            for (std::size_t i = 1; i + 1 < pa.size() && d.independent; ++i)
                if (std::find(pb.begin() + 1, pb.end() - 1, pa[i]) != pb.end() - 1) d.independent = false;
        }

    if (d.paths.empty()) return d;
    if (d.paths.size() == 1) {
        d.combined = d.paths[0].product;
        return d;
    }
    if (!d.independent || mode == Combination::PerPath) return d;
    for (const auto& p : d.paths)
        if (!p.product) return d;
    if (mode == Combination::MaxPath) {
        double best = 0.0;
        for (const auto& p : d.paths) best = std::max(best, *p.product);
        d.combined = best;
    } else {
        double miss = 1.0;
        for (const auto& p : d.paths) miss *= 1.0 - *p.product;
        d.combined = 1.0 - miss;
    }
    return d;
}

CausalGraph transitive_closure(const CausalGraph& g, Combination mode) {
    CausalGraph out = g;
    std::vector<bool> active;
    for (const auto& e : g.edges()) active.push_back(!e.context);
    std::set<std::pair<std::string, std::string>> have;
    for (const auto& e : g.edges())
        if (e.derived) have.insert({e.cause, e.effect});

    const auto nodes = g.nodes();
    for (const auto& s : nodes)
        for (const auto& t : nodes) {
            if (s == t || have.count({s, t})) continue;
            Derivation d = derive(g, s, t, mode, active);
            bool chained = std::any_of(d.paths.begin(), d.paths.end(),
                                       [](const PathInfo& p) { return p.edge_ids.size() >= 2; });
            if (!chained) continue;
            std::set<std::string> ids;
            for (const auto& p : d.paths) ids.insert(p.edge_ids.begin(), p.edge_ids.end());
            CausalEdge e;
            e.cause = s;
            e.effect = t;
            e.probability = d.combined;
            e.derived = true;
            e.provenance.assign(ids.begin(), ids.end());
            out.add_edge(std::move(e));
        }
    return out;
}

// ── defeaters ───────────────────────────────────────────────────────────────

DefeaterResult defeater_check(const std::vector<dl::PreventiveAxiom>& axioms, const std::string& effect,
                              const std::string& candidate_interval, const dl::ABox& abox,
                              const temporal::TemporalNetwork& net) {
    DefeaterResult res;
    if (!net.contains(candidate_interval)) return res;
    const dl::Concept target = dl::Concept::atomic(effect);
    for (const auto& ax : axioms) {
        if (!(ax.effect == target)) continue;
        const RelationSet allowed = ax.effective_relations();
        for (const auto& a : abox.concepts) {
            if (!a.interval || !(a.expr == ax.guard) || !net.contains(*a.interval)) continue;
            RelationSet rel = net.implied_relation(*a.interval, candidate_interval);
            if (rel.is_empty() || !rel.subset_of(allowed)) continue;
            res.blocked = true;
            res.axiom_id = ax.id;
            res.guard_individual = a.individual;
            res.witness_interval = *a.interval;
            res.relation = rel;
            return res;
        }
    }
    return res;
}

// ── queries ─────────────────────────────────────────────────────────────────

namespace {

std::set<std::string> known_names(const CausalGraph& g, const dl::TBox& tbox, const dl::ABox& abox) {
    std::set<std::string> names = g.nodes();
    auto add = [&](const dl::Concept& c) {
        for (auto& n : dl::atomic_names(c)) names.insert(std::move(n));
    };
    for (const auto& a : abox.concepts) add(a.expr);
    for (const auto& s : tbox.subsumptions) {
        add(s.sub);
        add(s.sup);
    }
    for (const auto& p : tbox.preventive) {
        add(p.guard);
        add(p.effect);
    }
    return names;
}

std::string fmt(double p) {
    std::string s = std::to_string(p);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::optional<std::string> asserted_interval(const dl::ABox& abox, const std::string& concept_name) {
    const dl::Concept c = dl::Concept::atomic(concept_name);
    for (const auto& a : abox.concepts)
        if (a.interval && a.expr == c) return a.interval;
    return std::nullopt;
}

class Projection {
public:
    explicit Projection(const temporal::TemporalNetwork& net) : work_(net) {}

    void assign(const std::string& concept_name, const std::string& interval) { of_[concept_name] = interval; }

    const std::string* interval_of(const std::string& concept_name) const {
        auto it = of_.find(concept_name);
        return it == of_.end() ? nullptr : &it->second;
    }

    std::string fresh(const std::string& concept_name, std::optional<temporal::Bounds> bounds = std::nullopt) {
        std::string id = work_.fresh_id("v_" + concept_name);
        work_.add_interval({id, bounds, temporal::Origin::Fresh});
        of_[concept_name] = id;
        return id;
    }

    bool is_fresh(const std::string& id) const {
        return work_.interval(work_.index_of(id)).origin == temporal::Origin::Fresh;
    }

    temporal::TemporalNetwork& net() { return work_; }

private:
    temporal::TemporalNetwork work_;
    std::map<std::string, std::string> of_;
};

}  // namespace

QueryAnswer chain_probability(const CausalGraph& g, const dl::TBox& tbox, const dl::ABox& abox,
                              const temporal::TemporalNetwork& net, const std::string& source,
                              const std::string& target, const QueryOptions& opts) {
    const auto names = known_names(g, tbox, abox);
    if (!names.count(source)) throw UnknownConcept(source);
    if (!names.count(target)) throw UnknownConcept(target);
    for (const auto& ev : opts.evidence) {
        if (ev.interval && !net.contains(*ev.interval)) throw CausalError("unknown evidence interval: " + *ev.interval);
    }
    if (opts.target_interval && !net.contains(*opts.target_interval))
        throw CausalError("unknown target interval: " + *opts.target_interval);

    QueryAnswer ans;
    ans.source = source;
    ans.target = target;

    // Context edges are active only when the evidence entails their condition.
    std::vector<bool> active;
    dl::Concept evidence = dl::Concept::atomic(source);
    for (const auto& ev : opts.evidence)
        evidence = dl::Concept::conjunction(evidence, dl::Concept::atomic(ev.concept_name));
    for (const auto& e : g.edges()) {
        bool on = true;
        if (e.context) {
            try {
                on = dl::subsumes(tbox, evidence, *e.context);
            } catch (const dl::TableauLimit&) {
                on = false;
                ans.diagnostics.push_back("context of " + e.id + " undecided within resource limits");
            }
            if (!on) ans.inactive_edges.push_back(e.id);
        }
        active.push_back(on);
    }

    if (source == target) {
        ans.reflexive = true;
        ans.probability = 1.0;
        ans.diagnostics.push_back("reflexive query: empty causal chain");
    } else {
        Derivation d = derive(g, source, target, opts.mode, active);
        ans.paths = d.paths;
        ans.independent = d.independent;
        ans.probability = d.combined;
        if (d.paths.empty()) ans.diagnostics.push_back("no causal path from " + source + " to " + target);
        if (!d.independent) ans.diagnostics.push_back("paths share a mediator; combined value withheld");
        for (const auto& p : d.paths)
            if (!p.product) {
                ans.diagnostics.push_back("unknown edge probability on a path");
                break;
            }
        if (d.independent && d.paths.size() > 1 && opts.mode == Combination::PerPath)
            ans.diagnostics.push_back("per-path mode: no combined value");
    }

    // Temporal projection.
    Projection proj(net);
    for (const auto& ev : opts.evidence) {
        if (ev.concept_name != source || proj.interval_of(source)) continue;
        if (ev.interval) proj.assign(source, *ev.interval);
        else if (ev.tick) proj.fresh(source, temporal::Bounds{*ev.tick, *ev.tick});
    }
    if (!proj.interval_of(source))
        if (auto observed = asserted_interval(abox, source)) proj.assign(source, *observed);
    if (!proj.interval_of(source) && !ans.paths.empty()) {
        const CausalEdge* first = g.find(ans.paths.front().edge_ids.front());
        if (first->anchor_interval && net.contains(*first->anchor_interval))
            proj.assign(source, *first->anchor_interval);
    }
    if (!proj.interval_of(source) && !ans.paths.empty()) proj.fresh(source);
    if (ans.reflexive && opts.target_interval) proj.assign(target, *opts.target_interval);

    for (const auto& p : ans.paths)
        for (const auto& id : p.edge_ids) {
            const CausalEdge* e = g.find(id);
            const std::string ci = *proj.interval_of(e->cause);
            if (!proj.interval_of(e->effect)) {
                if (e->effect == target && opts.target_interval) proj.assign(target, *opts.target_interval);
                else if (e->effect_interval && net.contains(*e->effect_interval))
                    proj.assign(e->effect, *e->effect_interval);
                else if (auto observed = asserted_interval(abox, e->effect)) proj.assign(e->effect, *observed);
                else proj.fresh(e->effect);
            }
            const std::string ei = *proj.interval_of(e->effect);
            if (!proj.is_fresh(ci) && !proj.is_fresh(ei)) continue;
            try {
                proj.net().add_constraint(ci, kPrecedes, ei);
            } catch (const temporal::InconsistentConstraint&) {
                ans.diagnostics.push_back("causal precedence contradicts the network on " + id);
            }
        }
    if (ans.paths.empty() && !ans.reflexive) {
        if (opts.target_interval) proj.assign(target, *opts.target_interval);
        else if (auto observed = asserted_interval(abox, target)) proj.assign(target, *observed);
    }

    auto pc = proj.net().path_consistency();
    if (!pc.consistent) ans.diagnostics.push_back("temporal projection is inconsistent");
    if (const std::string* si = proj.interval_of(source)) ans.source_interval = *si;
    if (const std::string* ti = proj.interval_of(target)) ans.target_interval = *ti;
    if (pc.consistent && !ans.source_interval.empty() && !ans.target_interval.empty()) {
        ans.projection = proj.net().implied_relation(ans.source_interval, ans.target_interval);
        ans.effect_projection = allen::converse(ans.projection);
    }

    if (pc.consistent && !ans.target_interval.empty()) {
        ans.defeater = defeater_check(tbox.preventive, target, ans.target_interval, abox, proj.net());
        ans.blocked = ans.defeater.blocked;
        if (ans.blocked)
            ans.diagnostics.push_back("blocked by preventive axiom " + ans.defeater.axiom_id + " (guard at " +
                                      ans.defeater.witness_interval + ")");
    }
    if (ans.probability && ans.paths.size() > 1)
        ans.diagnostics.push_back("combined " + fmt(*ans.probability) + " by " + to_string(opts.mode));
    return ans;
}

// ── updates and names ───────────────────────────────────────────────────────

double bayes_update(double prior, double likelihood_weight) {
    if (!valid_probability(prior) || !valid_probability(likelihood_weight))
        throw CausalError("bayes_update arguments must lie in [0,1]");
    return prior * likelihood_weight;
}

double bayes_update(double prior, double likelihood_weight, double complement_weight) {
    if (!valid_probability(complement_weight)) throw CausalError("bayes_update arguments must lie in [0,1]");
    double num = bayes_update(prior, likelihood_weight);
    double den = num + (1.0 - prior) * complement_weight;
    return den == 0.0 ? 0.0 : num / den;
}

std::string to_string(Combination mode) {
    switch (mode) {
        case Combination::NoisyOr: return "noisy-or";
        case Combination::MaxPath: return "max-path";
        case Combination::PerPath: return "per-path";
    }
    return "noisy-or";
}

std::optional<Combination> parse_combination(const std::string& text) {
    if (text == "noisy-or") return Combination::NoisyOr;
    if (text == "max-path") return Combination::MaxPath;
    if (text == "per-path") return Combination::PerPath;
    return std::nullopt;
}

}  // namespace tcpdl::causal
