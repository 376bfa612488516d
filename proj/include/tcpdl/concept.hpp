// ============================================================================
// tcpdl/concept.hpp: ALCQ concepts with temporal qualifiers
// ============================================================================
//
// Concept is an immutable value with shared structure.  Equality and
// ordering are structural.
//
// Textual notation (used by the CLI and by spec.json extension keys):
//
//   concept  := or
//   or       := and ('or' and)*
//   and      := unary ('and' unary)*
//   unary    := 'not' unary
//             | 'some' ROLE '.' unary        | 'all' ROLE '.' unary
//             | 'atleast' N ROLE '.' unary   | 'atmost' N ROLE '.' unary
//             | 'exists' '(' VARS ')' '(' PHI ')' '.' unary
//             | primary ('@' INTERVAL)?
//   primary  := NAME | 'top' | 'bottom' | '(' concept ')'
//   PHI      := X REL Y ('and' X REL Y)*     REL := name | '{' name, ... '}'
//
// `C @ X` binds tighter than the connectives: `A @ X and B` is
// `(A @ X) and B`.
// ============================================================================

#ifndef TCPDL_CONCEPT_HPP
#define TCPDL_CONCEPT_HPP

#include "tcpdl/allen.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcpdl::dl {

enum class ConceptKind : std::uint8_t {
    Atomic,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Exists,
    Forall,
    AtLeast,
    AtMost,
    At,              // C @ X
    TemporalExists,  // exists(X...) Phi . C
};

struct IntervalConstraint {
    std::string x;
    allen::RelationSet rels;
    std::string y;
    bool operator==(const IntervalConstraint&) const = default;
};

class Concept;

struct ConceptNode;

class Concept {
public:
    /// Default-constructed concept is Top.
    Concept();

    static Concept atomic(std::string name);
    static Concept top();
    static Concept bottom();
    static Concept negation(Concept c);
    static Concept conjunction(Concept a, Concept b);
    static Concept disjunction(Concept a, Concept b);
    static Concept some(std::string role, Concept c);
    static Concept all(std::string role, Concept c);
    static Concept at_least(unsigned n, std::string role, Concept c);
    static Concept at_most(unsigned n, std::string role, Concept c);
    static Concept at(Concept c, std::string interval);
    static Concept temporal_exists(std::vector<std::string> vars, std::vector<IntervalConstraint> phi, Concept c);

    ConceptKind kind() const;
    /// Atomic name, role name, or interval id (At).
    const std::string& name() const;
    unsigned number() const;
    const Concept& child(std::size_t i = 0) const;
    std::size_t arity() const;
    const std::vector<std::string>& vars() const;
    const std::vector<IntervalConstraint>& constraints() const;

    bool is_atomic() const { return kind() == ConceptKind::Atomic; }
    /// Atomic or negated atomic.
    bool is_literal() const;

    /// Fully parenthesised text in the notation above; parse(to_string(c)) == c.
    std::string to_string() const;

    friend bool operator==(const Concept& a, const Concept& b);
    friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

private:
    explicit Concept(std::shared_ptr<const ConceptNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ConceptNode> node_;
};

struct ConceptNode {
    ConceptKind kind = ConceptKind::Top;
    std::string name;
    unsigned number = 0;
    std::vector<Concept> children;
    std::vector<std::string> vars;
    std::vector<IntervalConstraint> phi;
};

class ConceptSyntaxError : public std::runtime_error {
public:
    ConceptSyntaxError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Parses the textual notation and checks the grammar restrictions
/// (see check_grammar).  Throws ConceptSyntaxError.
Concept parse_concept(std::string_view text);

/// Returns a message if c violates the T-/E-concept layering: qualifiers and
/// temporal quantifiers only at the top level (under conjunction, other
/// quantifiers or a negated qualifier), never inside or, role restrictions
/// or an At; negation of a temporal quantifier is rejected.
std::optional<std::string> check_grammar(const Concept& c);

/// Negation normal form.  ¬(C@X) becomes (¬C)@X; negation never reaches a
/// temporal quantifier because the grammar rejects it.
Concept nnf(const Concept& c);

/// nnf(¬c).
Concept negate_nnf(const Concept& c);

/// Atomic concept names occurring in c, sorted.
std::vector<std::string> atomic_names(const Concept& c);

/// Interval ids referenced by At nodes (excluding quantified variables).
std::vector<std::string> free_intervals(const Concept& c);

/// Replaces interval ids according to the mapping (used to rename the
/// variables of a temporal quantifier to fresh network intervals).
Concept rename_intervals(const Concept& c, const std::vector<std::pair<std::string, std::string>>& mapping);

}  // namespace tcpdl::dl

#endif  // TCPDL_CONCEPT_HPP
