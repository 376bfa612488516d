// ============================================================================
// tcpdl/causal.hpp: probabilistic causal graph over concept names
// ============================================================================

#ifndef TCPDL_CAUSAL_HPP
#define TCPDL_CAUSAL_HPP

#include "tcpdl/tableau.hpp"
#include "tcpdl/temporal.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpdl::causal {

using allen::RelationSet;
using temporal::Tick;

struct CausalEdge {
    std::string id;  // assigned by CausalGraph::add_edge when empty
    std::string cause;
    std::string effect;
    std::optional<double> probability;
    std::optional<std::string> anchor_interval;  // where the cause holds
    std::optional<std::string> effect_interval;  // where the effect holds
    std::optional<Tick> timestamp;
    std::optional<dl::Concept> context;
    bool derived = false;
    bool auto_uniform = false;
    std::vector<std::string> provenance;
};

struct Evidence {
    std::string concept_name;
    std::optional<std::string> individual;
    std::optional<std::string> interval;
    std::optional<Tick> tick;
};

class CausalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownConcept : public CausalError {
public:
    explicit UnknownConcept(const std::string& name) : CausalError("unknown concept: " + name), name(name) {}
    std::string name;
};

class CausalGraph {
public:
    /// Throws CausalError on a bad probability, on a derived edge with fewer
    /// than two provenance entries, or on a second asserted edge with the
    /// same (cause, effect, anchor).
    const CausalEdge& add_edge(CausalEdge e);

    const std::vector<CausalEdge>& edges() const { return edges_; }
    const CausalEdge* find(const std::string& id) const;
    std::set<std::string> nodes() const;
    bool has_node(const std::string& name) const;

    /// Ids of preventive axioms that may defeat an effect in this graph.
    std::vector<std::string> defeaters;

private:
    std::vector<CausalEdge> edges_;
};

struct HypothesisIssue {
    std::string edge_id;
    RelationSet implied;  // cause interval to effect interval
    bool violation = false;  // implied ∩ {b,m} = ∅; otherwise undetermined
};

struct AcyclicityResult {
    bool dag = true;
    std::vector<std::string> cycle;  // node sequence, first node not repeated
    std::vector<std::string> order;  // topological order when dag
    std::vector<HypothesisIssue> issues;

    bool has_violation() const;
    bool ok() const { return dag && !has_violation(); }
};

AcyclicityResult acyclicity_check(const CausalGraph& g, const temporal::TemporalNetwork& net);

enum class Combination { NoisyOr, MaxPath, PerPath };

struct PathInfo {
    std::vector<std::string> nodes;
    std::vector<std::string> edge_ids;
    std::vector<std::optional<double>> factors;
    std::optional<double> product;
};

struct Derivation {
    std::vector<PathInfo> paths;
    std::optional<double> combined;
    bool independent = true;  // paths share no mediator
};

/// All simple paths source → target over asserted edges accepted by `active`
/// (every asserted edge when empty), combined according to mode.
Derivation derive(const CausalGraph& g, const std::string& source, const std::string& target, Combination mode,
                  const std::vector<bool>& active = {});

/// Adds one derived edge per ordered pair joined by a path of length >= 2.
/// Edges with a context take part only in queries.
CausalGraph transitive_closure(const CausalGraph& g, Combination mode = Combination::NoisyOr);

struct DefeaterResult {
    bool blocked = false;
    std::string axiom_id;
    std::string guard_individual;
    std::string witness_interval;
    RelationSet relation;  // guard interval to candidate interval
};

DefeaterResult defeater_check(const std::vector<dl::PreventiveAxiom>& axioms, const std::string& effect,
                              const std::string& candidate_interval, const dl::ABox& abox,
                              const temporal::TemporalNetwork& net);

struct QueryOptions {
    Combination mode = Combination::NoisyOr;
    std::vector<Evidence> evidence;
    std::optional<std::string> target_interval;
};

struct QueryAnswer {
    std::string source;
    std::string target;
    std::optional<double> probability;
    std::vector<PathInfo> paths;
    bool independent = true;
    bool reflexive = false;
    bool blocked = false;
    DefeaterResult defeater;
    std::string source_interval;
    std::string target_interval;
    RelationSet projection;         // source interval to target interval
    RelationSet effect_projection;  // its converse
    std::vector<std::string> inactive_edges;  // context not entailed
    std::vector<std::string> diagnostics;
};

QueryAnswer chain_probability(const CausalGraph& g, const dl::TBox& tbox, const dl::ABox& abox,
                              const temporal::TemporalNetwork& net, const std::string& source,
                              const std::string& target, const QueryOptions& opts = {});

double bayes_update(double prior, double likelihood_weight);

/// Posterior against the complementary hypothesis with its own weight.
double bayes_update(double prior, double likelihood_weight, double complement_weight);

std::string to_string(Combination mode);
std::optional<Combination> parse_combination(const std::string& text);

}  // namespace tcpdl::causal

#endif  // TCPDL_CAUSAL_HPP
