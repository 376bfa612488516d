// ============================================================================
// tcpdl/engine.hpp: load, check, query
// ============================================================================

#ifndef TCPDL_ENGINE_HPP
#define TCPDL_ENGINE_HPP

#include "tcpdl/causal.hpp"
#include "tcpdl/knowledge_base.hpp"
#include "tcpdl/specio.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpdl::engine {

struct LoadResult {
    std::optional<KnowledgeBase> kb;  // absent when any error was reported
    std::vector<specio::Diagnostic> diagnostics;
};

/// parse_spec, validate_spec, to_knowledge_base.
LoadResult load(std::string_view text);

enum class FailureKind { Temporal, Causal, Tableau };

std::string_view to_string(FailureKind k) noexcept;

struct Failure {
    FailureKind kind;
    std::string summary;
    std::vector<std::string> trace;
};

struct ConsistencyReport {
    std::vector<Failure> failures;  // at most one entry per kind
    std::vector<std::string> notes;

    bool consistent() const { return failures.empty(); }
};

/// Temporal (load conflicts, timestamp reconciliation, path consistency),
/// then causal acyclicity, then the tableau.  Tightens the network in place
/// and freezes the knowledge base when everything passes.
ConsistencyReport check_consistency(KnowledgeBase& kb, const dl::TableauOptions& opts = {});

struct TraceStep {
    std::string rule;
    std::vector<std::string> inputs;
    std::string output;
    std::vector<double> factors;
    std::optional<double> value;
};

struct ProofTrace {
    std::vector<TraceStep> steps;
};

struct Inference {
    causal::QueryAnswer answer;
    ProofTrace trace;
};

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws EngineError on an unfrozen knowledge base and
/// causal::UnknownConcept on unknown names.
Inference infer(const KnowledgeBase& kb, const std::string& source, const std::string& target,
                const causal::QueryOptions& opts = {});

struct Recommendation {
    std::string axiom_id;
    dl::Concept guard;
    allen::RelationSet relations;  // guard interval to the effect interval
};

/// Preventive axioms that could block `target` but are not yet instantiated.
std::vector<Recommendation> recommend_prevention(const KnowledgeBase& kb, const std::string& target);

}  // namespace tcpdl::engine

#endif  // TCPDL_ENGINE_HPP
