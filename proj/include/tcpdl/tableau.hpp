// ============================================================================
// tcpdl/tableau.hpp: ALCQ tableau with interval-qualified labels
// ============================================================================
//
// Each completion-tree node carries one label set per time key: the
// unqualified key ("at all times") and one key per network interval.  Two
// keys are compatible when one is unqualified or the network entails {eq}
// between them; a clash is {A, ¬A} (or ⊥) under compatible keys.
//
// TBox subsumptions are internalised (¬C ⊔ D on every node).  Preventive
// axioms  ∃(U,V)(U rel V). G@U ⊑ ¬D@V  fire on a node when G holds at some
// U and the network entails (U,V) ⊆ rel; the node then gets ¬D at V.
//
// Termination: subset blocking on anonymous nodes plus a node ceiling.
// ============================================================================

#ifndef TCPDL_TABLEAU_HPP
#define TCPDL_TABLEAU_HPP

#include "tcpdl/concept.hpp"
#include "tcpdl/temporal.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpdl::dl {

struct Subsumption {
    Concept sub;
    Concept sup;
};

/// ∃(U,V)(U rel V). guard@U ⊑ ¬effect@V
struct PreventiveAxiom {
    std::string id;
    Concept guard;
    Concept effect;
    allen::RelationSet relations;

    /// The declared relations plus their boundary cases: `b` admits `m`,
    /// `bi` admits `mi` (the guard ends no later than the effect starts).
    allen::RelationSet effective_relations() const;
};

struct TBox {
    std::vector<Subsumption> subsumptions;
    std::vector<PreventiveAxiom> preventive;
};

struct ConceptAssertion {
    std::string individual;
    Concept expr;
    std::optional<std::string> interval;
};

struct RoleAssertion {
    std::string role;
    std::string subject;
    std::string object;
    std::optional<std::string> interval;
};

struct ABox {
    std::vector<ConceptAssertion> concepts;
    std::vector<RoleAssertion> roles;
};

enum class Verdict { Satisfiable, Unsatisfiable, ResourceLimit };

struct TableauOptions {
    std::size_t max_nodes = 512;        // per completion graph
    std::size_t max_branches = 200000;  // per run
};

struct TableauResult {
    Verdict verdict = Verdict::Satisfiable;
    /// Model sketch when satisfiable; clash trace otherwise.
    std::vector<std::string> trace;
    std::size_t branches = 0;
    std::size_t max_graph_size = 0;

    bool satisfiable() const { return verdict == Verdict::Satisfiable; }
};

class TableauLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

TableauResult is_satisfiable(const TBox& tbox, const Concept& c,
                             const temporal::TemporalNetwork& net = {}, const TableauOptions& opts = {});

/// Consistency of the ABox w.r.t. the TBox.  The network should already be
/// path-consistent; the reasoner works on a private copy.
TableauResult kb_consistent(const TBox& tbox, const ABox& abox, const temporal::TemporalNetwork& net,
                            const TableauOptions& opts = {});

/// True iff c ⊓ ¬d is unsatisfiable.  Throws TableauLimit if the run hits
/// the resource ceiling.
bool subsumes(const TBox& tbox, const Concept& c, const Concept& d,
              const temporal::TemporalNetwork& net = {}, const TableauOptions& opts = {});

}  // namespace tcpdl::dl

#endif  // TCPDL_TABLEAU_HPP
