// ============================================================================
// tcpdl/specio.hpp: spec.json reader, validator, writer and time codec
// ============================================================================
//
// Besides the core schema (variant, intervals, assertions, causes) the
// reader understands a few extension keys: top-level `roles`, `axioms` and
// `preventive`, and per-cause `effectInterval` and `context`.  Rule ids are
// listed in docs/diagnostics.md.
// ============================================================================

#ifndef TCPDL_SPECIO_HPP
#define TCPDL_SPECIO_HPP

#include "tcpdl/knowledge_base.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcpdl::specio {

using temporal::Tick;

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule;
    std::string message;
    std::string path;  // e.g. $.causes[2].atInterval
};

std::string_view to_string(Severity s) noexcept;
std::string format(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& ds);

struct AllenField {
    allen::Relation rel;
    std::string target;
    std::string path;
};

struct IntervalEntry {
    std::string id;
    std::optional<std::string> starts;
    std::optional<std::string> finished_by;
    std::vector<AllenField> allen;
    std::string path;
};

struct AssertionEntry {
    dl::Concept expr;
    std::string individual;
    std::optional<std::string> at_interval;
    std::string path;
};

struct RoleEntry {
    std::string role;
    std::string subject;
    std::string object;
    std::optional<std::string> at_interval;
    std::string path;
};

struct CauseEntry {
    std::string cause;
    std::string effect;
    std::optional<double> probability;
    std::optional<std::string> at_interval;
    std::optional<std::string> effect_interval;
    std::optional<std::string> tau;
    std::optional<dl::Concept> context;
    std::string path;
};

struct AxiomEntry {
    dl::Concept sub;
    dl::Concept sup;
};

struct PreventiveEntry {
    std::string id;
    dl::Concept guard;
    dl::Concept effect;
    allen::RelationSet relations;
};

struct SpecDocument {
    Variant variant = Variant::Allen;
    bool variant_declared = false;
    std::vector<IntervalEntry> intervals;
    std::vector<AssertionEntry> assertions;
    std::vector<RoleEntry> roles;
    bool has_roles = false;
    std::vector<CauseEntry> causes;
    std::vector<AxiomEntry> axioms;
    std::vector<PreventiveEntry> preventive;
};

struct ParseResult {
    std::optional<SpecDocument> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value() && !has_errors(diagnostics); }
};

/// Structural parse.  A document is returned whenever the text is a JSON
/// object, even with error diagnostics, so validation can continue.
ParseResult parse_spec(std::string_view text);

/// Semantic checks: timestamps and chronology, timestamp/Allen agreement,
/// causal precedence of anchored edges, uniform-prior sanity.
std::vector<Diagnostic> validate_spec(const SpecDocument& doc);

/// Requires a document without error diagnostics.
KnowledgeBase to_knowledge_base(const SpecDocument& doc);

/// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string export_spec(const KnowledgeBase& kb);

class TimestampError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Seconds since 1970-01-01T00:00:00Z on the proleptic Gregorian calendar.
/// Accepts YYYY, YYYY-MM-DD and YYYY-MM-DDTHH:MM:SSZ; a bare year is
/// January 1st at midnight.
Tick parse_timestamp(std::string_view text);

/// YYYY-MM-DD at midnight, YYYY-MM-DDTHH:MM:SSZ otherwise.
std::string format_timestamp(Tick t);

}  // namespace tcpdl::specio

#endif  // TCPDL_SPECIO_HPP
