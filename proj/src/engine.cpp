#include "tcpdl/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace tcpdl::engine {

using allen::RelationSet;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "null"; }

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

}  // namespace

LoadResult load(std::string_view text) {
    LoadResult res;
    auto parsed = specio::parse_spec(text);
    res.diagnostics = parsed.diagnostics;
    if (!parsed.document) return res;
    auto more = specio::validate_spec(*parsed.document);
    res.diagnostics.insert(res.diagnostics.end(), more.begin(), more.end());
    if (specio::has_errors(res.diagnostics)) return res;
    res.kb = specio::to_knowledge_base(*parsed.document);
    return res;
}

std::string_view to_string(FailureKind k) noexcept {
    switch (k) {
        case FailureKind::Temporal: return "temporal";
        case FailureKind::Causal: return "causal";
        case FailureKind::Tableau: return "tableau";
    }
    return "temporal";
}

ConsistencyReport check_consistency(KnowledgeBase& kb, const dl::TableauOptions& opts) {
    ConsistencyReport rep;
    kb.frozen = false;

    // Temporal.
    std::vector<std::string> temporal_trace;
    for (const auto& c : kb.load_conflicts)
        temporal_trace.push_back("declared " + c.x + " " + c.added.to_string() + " " + c.y + " contradicts " +
                                 c.existing.to_string());
    for (const auto& c : kb.network.reconcile_timestamps().conflicts)
        temporal_trace.push_back("declared " + c.x + " " + c.declared.to_string() + " " + c.y +
                                 " contradicts timestamps (" + std::string(allen::short_name(c.from_timestamps)) + ")");
    auto pc = kb.network.path_consistency();
    if (!pc.consistent) {
        const auto& w = *pc.witness;
        temporal_trace.push_back("path consistency: " + w.x + " " + w.xy.to_string() + " " + w.y + ", " + w.y + " " +
                                 w.yz.to_string() + " " + w.z + " compose to " + w.composed.to_string() + " but " + w.x +
                                 " " + w.xz.to_string() + " " + w.z);
    }
    if (!temporal_trace.empty())
        rep.failures.push_back({FailureKind::Temporal, "temporal network is inconsistent", std::move(temporal_trace)});

    // Causal.
    auto acyc = causal::acyclicity_check(kb.graph, kb.network);
    std::vector<std::string> causal_trace;
    if (!acyc.dag) {
        auto cyc = acyc.cycle;
        cyc.push_back(cyc.front());
        causal_trace.push_back("cycle: " + join(cyc, " -> "));
    }
    for (const auto& issue : acyc.issues) {
        const auto* e = kb.graph.find(issue.edge_id);
        std::string what = e->cause + " -> " + e->effect + " (" + issue.edge_id + "): cause interval " +
                           *e->anchor_interval + " relates to effect interval " + *e->effect_interval + " by " +
                           issue.implied.to_string();
        if (issue.violation) causal_trace.push_back(what + ", outside {b,m}");
        else rep.notes.push_back("undetermined precedence on " + what);
    }
    if (!causal_trace.empty())
        rep.failures.push_back({FailureKind::Causal,
                                acyc.dag ? "causal precedence violated" : "causal graph has a cycle",
                                std::move(causal_trace)});

    // Tableau, on the tightened network.
    if (pc.consistent) {
        auto tab = dl::kb_consistent(kb.tbox, kb.abox, kb.network, opts);
        if (tab.verdict == dl::Verdict::Unsatisfiable)
            rep.failures.push_back({FailureKind::Tableau, "ABox is inconsistent with the TBox", tab.trace});
        else if (tab.verdict == dl::Verdict::ResourceLimit)
            rep.failures.push_back({FailureKind::Tableau, "tableau resource limit reached", tab.trace});
    } else {
        rep.notes.push_back("tableau skipped: no path-consistent network");
    }

    kb.frozen = rep.consistent();
    return rep;
}

Inference infer(const KnowledgeBase& kb, const std::string& source, const std::string& target,
                const causal::QueryOptions& opts) {
    if (!kb.frozen) throw EngineError("knowledge base is not frozen; run a consistency check first");
    Inference inf;
    inf.answer = causal::chain_probability(kb.graph, kb.tbox, kb.abox, kb.network, source, target, opts);
    const auto& ans = inf.answer;
    auto& steps = inf.trace.steps;

    if (ans.reflexive) steps.push_back({"reflexive", {source}, "empty chain " + source + " => " + target, {}, 1.0});

    std::set<std::string> shown;
    for (const auto& p : ans.paths)
        for (std::size_t i = 0; i < p.edge_ids.size(); ++i) {
            if (!shown.insert(p.edge_ids[i]).second) continue;
            const auto* e = kb.graph.find(p.edge_ids[i]);
            TraceStep s{"edge", {e->id}, "φ(" + e->cause + ", " + e->effect + ")[P=" + num(e->probability) + "]", {}, e->probability};
            if (e->probability) s.factors.push_back(*e->probability);
            if (e->context) s.inputs.push_back("context " + e->context->to_string());
            steps.push_back(std::move(s));
        }
    for (const auto& p : ans.paths) {
        TraceStep s{"chain-product", p.edge_ids, "φ(" + join(p.nodes, " => ") + ")[P=" + num(p.product) + "]", {}, p.product};
        for (const auto& f : p.factors)
            if (f) s.factors.push_back(*f);
        steps.push_back(std::move(s));
    }
    if (ans.paths.size() > 1) {
        TraceStep s{causal::to_string(opts.mode), {}, "", {}, ans.probability};
        for (std::size_t i = 0; i < ans.paths.size(); ++i) {
            s.inputs.push_back("path " + std::to_string(i + 1));
            if (ans.paths[i].product) s.factors.push_back(*ans.paths[i].product);
        }
        if (!ans.independent) s.output = "withheld: paths share a mediator";
        else if (!ans.probability) s.output = "no combined value";
        else s.output = "φ(" + source + ", " + target + ")[P=" + num(ans.probability) + "]";
        steps.push_back(std::move(s));
    }
    if (ans.paths.empty() && !ans.reflexive) steps.push_back({"no-path", {source, target}, "probability unknown", {}, std::nullopt});

    if (!ans.source_interval.empty() && !ans.target_interval.empty())
        steps.push_back({"projection",
                         {ans.source_interval, ans.target_interval},
                         source + "@" + ans.source_interval + " " + ans.projection.to_string() + " " + target + "@" +
                             ans.target_interval,
                         {},
                         std::nullopt});

    std::vector<std::string> axioms;
    for (const auto& ax : kb.tbox.preventive)
        if (ax.effect == dl::Concept::atomic(target)) axioms.push_back(ax.id);
    if (!axioms.empty()) {
        std::string out = ans.blocked ? "blocked by " + ans.defeater.axiom_id + ": " + ans.defeater.witness_interval +
                                            " " + ans.defeater.relation.to_string() + " " + ans.target_interval
                                      : "unblocked";
        steps.push_back({"defeater", axioms, out, {}, std::nullopt});
    }
    return inf;
}

std::vector<Recommendation> recommend_prevention(const KnowledgeBase& kb, const std::string& target) {
    std::vector<std::string> candidates;
    auto add = [&](const std::string& iv) {
        if (kb.network.contains(iv) && std::find(candidates.begin(), candidates.end(), iv) == candidates.end())
            candidates.push_back(iv);
    };
    const dl::Concept effect = dl::Concept::atomic(target);
    for (const auto& a : kb.abox.concepts)
        if (a.interval && a.expr == effect) add(*a.interval);
    for (const auto& e : kb.graph.edges())
        if (e.effect == target && e.effect_interval) add(*e.effect_interval);

    std::vector<Recommendation> out;
    for (const auto& ax : kb.tbox.preventive) {
        if (!(ax.effect == effect)) continue;
        bool satisfied = !candidates.empty();
        for (const auto& iv : candidates)
            satisfied = satisfied && causal::defeater_check({ax}, target, iv, kb.abox, kb.network).blocked;
        if (!satisfied) out.push_back({ax.id, ax.guard, ax.effective_relations()});
    }
    return out;
}

}  // namespace tcpdl::engine
