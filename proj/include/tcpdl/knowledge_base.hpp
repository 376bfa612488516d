#ifndef TCPDL_KNOWLEDGE_BASE_HPP
#define TCPDL_KNOWLEDGE_BASE_HPP

#include "tcpdl/causal.hpp"
#include "tcpdl/tableau.hpp"
#include "tcpdl/temporal.hpp"

#include <string>
#include <vector>

namespace tcpdl {

enum class Variant { Allen, Timestamped };

std::string_view to_string(Variant v) noexcept;  // "T-CPDL_A" / "T-CPDL_T"

/// A qualitative constraint exactly as declared in the source document.
struct DeclaredConstraint {
    std::string x;
    allen::Relation rel;
    std::string y;
};

/// A declared constraint that contradicted earlier ones while loading.
struct LoadConflict {
    std::string x, y;
    allen::RelationSet existing, added;
};

struct KnowledgeBase {
    Variant variant = Variant::Allen;
    temporal::TemporalNetwork network;
    std::vector<DeclaredConstraint> constraints;
    std::vector<LoadConflict> load_conflicts;
    dl::TBox tbox;
    dl::ABox abox;
    causal::CausalGraph graph;
    bool frozen = false;

    std::size_t declared_interval_count() const;
    std::size_t asserted_edge_count() const;
};

}  // namespace tcpdl

#endif  // TCPDL_KNOWLEDGE_BASE_HPP
