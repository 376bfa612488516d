#include "tcpdl/concept.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace tcpdl::dl {

// ── construction ────────────────────────────────────────────────────────────

namespace {

std::shared_ptr<const ConceptNode> make(ConceptKind kind, std::string name = {}, unsigned number = 0,
                                        std::vector<Concept> children = {}) {
    auto n = std::make_shared<ConceptNode>();
    n->kind = kind;
    n->name = std::move(name);
    n->number = number;
    n->children = std::move(children);
    return n;
}

const std::shared_ptr<const ConceptNode>& top_node() {
    static const auto node = make(ConceptKind::Top);
    return node;
}

}  // namespace

Concept::Concept() : node_(top_node()) {}

Concept Concept::atomic(std::string name) { return Concept(make(ConceptKind::Atomic, std::move(name))); }
Concept Concept::top() { return Concept(top_node()); }
Concept Concept::bottom() { return Concept(make(ConceptKind::Bottom)); }
Concept Concept::negation(Concept c) { return Concept(make(ConceptKind::Not, {}, 0, {std::move(c)})); }
Concept Concept::conjunction(Concept a, Concept b) {
    return Concept(make(ConceptKind::And, {}, 0, {std::move(a), std::move(b)}));
}
Concept Concept::disjunction(Concept a, Concept b) {
    return Concept(make(ConceptKind::Or, {}, 0, {std::move(a), std::move(b)}));
}
Concept Concept::some(std::string role, Concept c) {
    return Concept(make(ConceptKind::Exists, std::move(role), 0, {std::move(c)}));
}
Concept Concept::all(std::string role, Concept c) {
    return Concept(make(ConceptKind::Forall, std::move(role), 0, {std::move(c)}));
}
Concept Concept::at_least(unsigned n, std::string role, Concept c) {
    return Concept(make(ConceptKind::AtLeast, std::move(role), n, {std::move(c)}));
}
Concept Concept::at_most(unsigned n, std::string role, Concept c) {
    return Concept(make(ConceptKind::AtMost, std::move(role), n, {std::move(c)}));
}
Concept Concept::at(Concept c, std::string interval) {
    return Concept(make(ConceptKind::At, std::move(interval), 0, {std::move(c)}));
}
Concept Concept::temporal_exists(std::vector<std::string> vars, std::vector<IntervalConstraint> phi, Concept c) {
    auto n = std::make_shared<ConceptNode>();
    n->kind = ConceptKind::TemporalExists;
    n->children = {std::move(c)};
    n->vars = std::move(vars);
    n->phi = std::move(phi);
    return Concept(std::move(n));
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
unsigned Concept::number() const { return node_->number; }
const Concept& Concept::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Concept::arity() const { return node_->children.size(); }
const std::vector<std::string>& Concept::vars() const { return node_->vars; }
const std::vector<IntervalConstraint>& Concept::constraints() const { return node_->phi; }

bool Concept::is_literal() const {
    return kind() == ConceptKind::Atomic || (kind() == ConceptKind::Not && child().kind() == ConceptKind::Atomic);
}

bool operator==(const Concept& a, const Concept& b) { return (a <=> b) == std::strong_ordering::equal; }

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const ConceptNode& x = *a.node_;
    const ConceptNode& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = x.name <=> y.name; c != 0) return c;
    if (auto c = x.number <=> y.number; c != 0) return c;
    if (auto c = x.vars <=> y.vars; c != 0) return c;
    if (auto c = x.phi.size() <=> y.phi.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.phi.size(); ++i) {
        const auto& p = x.phi[i];
        const auto& q = y.phi[i];
        if (auto c = p.x <=> q.x; c != 0) return c;
        if (auto c = p.rels.mask() <=> q.rels.mask(); c != 0) return c;
        if (auto c = p.y <=> q.y; c != 0) return c;
    }
    if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

// ── printing ────────────────────────────────────────────────────────────────

namespace {

const std::set<std::string, std::less<>>& keywords() {
    static const std::set<std::string, std::less<>> kw = {"and", "or", "not", "some", "all", "atleast",
                                                          "atmost", "exists", "top", "bottom"};
    return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '#' || c == '\'';
}

std::string quote_name(const std::string& name) {
    bool plain = !name.empty() && ident_start(name[0]) && !keywords().count(name) &&
                 std::all_of(name.begin(), name.end(), ident_char);
    if (plain) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string relation_text(allen::RelationSet s) {
    if (s.is_singleton()) return std::string(allen::short_name(s.members().front()));
    return s.to_string();
}

std::string print(const Concept& c);

std::string wrapped(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atomic:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::And:
        case ConceptKind::Or:
            return print(c);
        default:
            return "(" + print(c) + ")";
    }
}

std::string print(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atomic: return quote_name(c.name());
        case ConceptKind::Top: return "top";
        case ConceptKind::Bottom: return "bottom";
        case ConceptKind::Not: return "not " + wrapped(c.child());
        case ConceptKind::And: return "(" + print(c.child(0)) + " and " + print(c.child(1)) + ")";
        case ConceptKind::Or: return "(" + print(c.child(0)) + " or " + print(c.child(1)) + ")";
        case ConceptKind::Exists: return "some " + quote_name(c.name()) + ". " + wrapped(c.child());
        case ConceptKind::Forall: return "all " + quote_name(c.name()) + ". " + wrapped(c.child());
        case ConceptKind::AtLeast:
            return "atleast " + std::to_string(c.number()) + " " + quote_name(c.name()) + ". " + wrapped(c.child());
        case ConceptKind::AtMost:
            return "atmost " + std::to_string(c.number()) + " " + quote_name(c.name()) + ". " + wrapped(c.child());
        case ConceptKind::At: return wrapped(c.child()) + " @ " + quote_name(c.name());
        case ConceptKind::TemporalExists: {
            std::string out = "exists (";
            for (std::size_t i = 0; i < c.vars().size(); ++i) {
                if (i) out += ", ";
                out += quote_name(c.vars()[i]);
            }
            out += ") (";
            for (std::size_t i = 0; i < c.constraints().size(); ++i) {
                const auto& k = c.constraints()[i];
                if (i) out += " and ";
                out += quote_name(k.x) + " " + relation_text(k.rels) + " " + quote_name(k.y);
            }
            out += ") . " + wrapped(c.child());
            return out;
        }
    }
    return "?";
}

}  // namespace

std::string Concept::to_string() const { return print(*this); }

// ── parsing ─────────────────────────────────────────────────────────────────

namespace {

enum class Tok { Ident, Quoted, Number, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= s.size()) throw ConceptSyntaxError("unterminated quoted name", i);
                if (s[j] == '\\' && j + 1 < s.size()) {
                    text += s[++j];
                } else if (s[j] == '"') {
                    break;
                } else {
                    text += s[j];
                }
            }
            out.push_back({Tok::Quoted, std::move(text), i});
            i = j + 1;
        } else if (std::string_view("().@{},=[]").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), i});
            ++i;
        } else {
            throw ConceptSyntaxError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Concept parse() {
        Concept c = parse_or();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return c;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ConceptSyntaxError(msg, peek().pos); }

    bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
    bool at_sym(char c) const { return peek().kind == Tok::Sym && peek().text[0] == c; }

    void expect_sym(char c) {
        if (!at_sym(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string expect_name(const char* what) {
        const Token& t = peek();
        if (t.kind == Tok::Quoted || (t.kind == Tok::Ident && !keywords().count(t.text))) {
            ++pos_;
            return t.text;
        }
        fail(std::string("expected ") + what);
    }

    unsigned expect_number() {
        if (peek().kind != Tok::Number) fail("expected a number");
        return static_cast<unsigned>(std::stoul(next().text));
    }

    Concept parse_or() {
        Concept c = parse_and();
        while (at_keyword("or")) {
            ++pos_;
            c = Concept::disjunction(c, parse_and());
        }
        return c;
    }

    Concept parse_and() {
        Concept c = parse_unary();
        while (at_keyword("and")) {
            ++pos_;
            c = Concept::conjunction(c, parse_unary());
        }
        return c;
    }

    Concept parse_unary() {
        if (at_keyword("not")) {
            ++pos_;
            return Concept::negation(parse_unary());
        }
        if (at_keyword("some") || at_keyword("all")) {
            bool some = next().text == "some";
            std::string role = expect_name("a role name");
            expect_sym('.');
            Concept body = parse_unary();
            return some ? Concept::some(role, body) : Concept::all(role, body);
        }
        if (at_keyword("atleast") || at_keyword("atmost")) {
            bool least = next().text == "atleast";
            unsigned n = expect_number();
            std::string role = expect_name("a role name");
            expect_sym('.');
            Concept body = parse_unary();
            return least ? Concept::at_least(n, role, body) : Concept::at_most(n, role, body);
        }
        if (at_keyword("exists")) return parse_temporal_exists();
        Concept c = parse_primary();
        if (at_sym('[')) fail("bracketed qualifier C[Y]@X has no defined semantics and is not supported");
        if (at_sym('@')) {
            ++pos_;
            c = Concept::at(c, expect_name("an interval id"));
            if (at_sym('@')) fail("nested qualifier");
        }
        return c;
    }

    Concept parse_temporal_exists() {
        ++pos_;
        expect_sym('(');
        std::vector<std::string> vars;
        vars.push_back(expect_name("an interval variable"));
        while (at_sym(',')) {
            ++pos_;
            vars.push_back(expect_name("an interval variable"));
        }
        expect_sym(')');
        expect_sym('(');
        std::vector<IntervalConstraint> phi;
        phi.push_back(parse_constraint());
        while (at_keyword("and") || at_keyword("or")) {
            if (at_keyword("or"))
                fail("disjunction across interval pairs is not supported; use a relation set {r1,r2} on one pair");
            ++pos_;
            phi.push_back(parse_constraint());
        }
        expect_sym(')');
        expect_sym('.');
        return Concept::temporal_exists(std::move(vars), std::move(phi), parse_unary());
    }

    IntervalConstraint parse_constraint() {
        IntervalConstraint k;
        k.x = expect_name("an interval id");
        k.rels = parse_relations();
        k.y = expect_name("an interval id");
        return k;
    }

    allen::RelationSet parse_relations() {
        auto one = [this]() {
            std::string name;
            if (at_sym('=')) {
                ++pos_;
                name = "=";
            } else if (peek().kind == Tok::Ident) {
                name = next().text;
            } else {
                fail("expected an Allen relation");
            }
            auto r = allen::parse_relation(name);
            if (!r) fail("unknown Allen relation '" + name + "'");
            return *r;
        };
        allen::RelationSet s;
        if (at_sym('{')) {
            ++pos_;
            s.insert(one());
            while (at_sym(',')) {
                ++pos_;
                s.insert(one());
            }
            expect_sym('}');
        } else {
            s.insert(one());
        }
        return s;
    }

    Concept parse_primary() {
        if (at_keyword("top")) {
            ++pos_;
            return Concept::top();
        }
        if (at_keyword("bottom")) {
            ++pos_;
            return Concept::bottom();
        }
        if (at_sym('(')) {
            ++pos_;
            Concept c = parse_or();
            expect_sym(')');
            return c;
        }
        return Concept::atomic(expect_name("a concept"));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool has_qualifier(const Concept& c) {
    if (c.kind() == ConceptKind::At || c.kind() == ConceptKind::TemporalExists) return true;
    for (std::size_t i = 0; i < c.arity(); ++i)
        if (has_qualifier(c.child(i))) return true;
    return false;
}

std::optional<std::string> check_t_level(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::And:
            if (auto e = check_t_level(c.child(0))) return e;
            return check_t_level(c.child(1));
        case ConceptKind::At:
            if (has_qualifier(c.child()))
                return "qualifier nested inside a qualified concept: " + c.to_string();
            return std::nullopt;
        case ConceptKind::TemporalExists:
            return check_t_level(c.child());
        case ConceptKind::Not:
            if (c.child().kind() == ConceptKind::TemporalExists)
                return "negated temporal quantifier has no defined semantics: " + c.to_string();
            if (c.child().kind() == ConceptKind::At) return check_t_level(c.child());
            [[fallthrough]];
        default:
            if (has_qualifier(c))
                return "temporal qualifier below a connective that only admits untimed concepts: " + c.to_string();
            return std::nullopt;
    }
}

}  // namespace

Concept parse_concept(std::string_view text) {
    Concept c = Parser(text).parse();
    if (auto err = check_grammar(c)) throw ConceptSyntaxError(*err, 0);
    return c;
}

std::optional<std::string> check_grammar(const Concept& c) { return check_t_level(c); }

// ── normal forms and traversal ──────────────────────────────────────────────

Concept nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atomic:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not:
            return negate_nnf(c.child());
        case ConceptKind::And: return Concept::conjunction(nnf(c.child(0)), nnf(c.child(1)));
        case ConceptKind::Or: return Concept::disjunction(nnf(c.child(0)), nnf(c.child(1)));
        case ConceptKind::Exists: return Concept::some(c.name(), nnf(c.child()));
        case ConceptKind::Forall: return Concept::all(c.name(), nnf(c.child()));
        case ConceptKind::AtLeast: return Concept::at_least(c.number(), c.name(), nnf(c.child()));
        case ConceptKind::AtMost: return Concept::at_most(c.number(), c.name(), nnf(c.child()));
        case ConceptKind::At: return Concept::at(nnf(c.child()), c.name());
        case ConceptKind::TemporalExists: return Concept::temporal_exists(c.vars(), c.constraints(), nnf(c.child()));
    }
    return c;
}

Concept negate_nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atomic: return Concept::negation(c);
        case ConceptKind::Top: return Concept::bottom();
        case ConceptKind::Bottom: return Concept::top();
        case ConceptKind::Not: return nnf(c.child());
        case ConceptKind::And: return Concept::disjunction(negate_nnf(c.child(0)), negate_nnf(c.child(1)));
        case ConceptKind::Or: return Concept::conjunction(negate_nnf(c.child(0)), negate_nnf(c.child(1)));
        case ConceptKind::Exists: return Concept::all(c.name(), negate_nnf(c.child()));
        case ConceptKind::Forall: return Concept::some(c.name(), negate_nnf(c.child()));
        case ConceptKind::AtLeast:
            if (c.number() == 0) return Concept::bottom();
            return Concept::at_most(c.number() - 1, c.name(), nnf(c.child()));
        case ConceptKind::AtMost: return Concept::at_least(c.number() + 1, c.name(), nnf(c.child()));
        case ConceptKind::At: return Concept::at(negate_nnf(c.child()), c.name());
        case ConceptKind::TemporalExists:
            return Concept::negation(Concept::temporal_exists(c.vars(), c.constraints(), nnf(c.child())));
    }
    return c;
}

namespace {

void collect_atomic(const Concept& c, std::set<std::string>& out) {
    if (c.kind() == ConceptKind::Atomic) out.insert(c.name());
    for (std::size_t i = 0; i < c.arity(); ++i) collect_atomic(c.child(i), out);
}

void collect_intervals(const Concept& c, std::set<std::string>& bound, std::set<std::string>& out) {
    if (c.kind() == ConceptKind::At && !bound.count(c.name())) out.insert(c.name());
    if (c.kind() == ConceptKind::TemporalExists) {
        std::set<std::string> inner = bound;
        inner.insert(c.vars().begin(), c.vars().end());
        for (const auto& k : c.constraints()) {
            if (!inner.count(k.x)) out.insert(k.x);
            if (!inner.count(k.y)) out.insert(k.y);
        }
        collect_intervals(c.child(), inner, out);
        return;
    }
    for (std::size_t i = 0; i < c.arity(); ++i) collect_intervals(c.child(i), bound, out);
}

}  // namespace

std::vector<std::string> atomic_names(const Concept& c) {
    std::set<std::string> out;
    collect_atomic(c, out);
    return {out.begin(), out.end()};
}

std::vector<std::string> free_intervals(const Concept& c) {
    std::set<std::string> bound, out;
    collect_intervals(c, bound, out);
    return {out.begin(), out.end()};
}

Concept rename_intervals(const Concept& c, const std::vector<std::pair<std::string, std::string>>& mapping) {
    auto rename = [&](const std::string& id) {
        for (const auto& [from, to] : mapping)
            if (from == id) return to;
        return id;
    };
    switch (c.kind()) {
        case ConceptKind::Atomic:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not: return Concept::negation(rename_intervals(c.child(), mapping));
        case ConceptKind::And:
            return Concept::conjunction(rename_intervals(c.child(0), mapping), rename_intervals(c.child(1), mapping));
        case ConceptKind::Or:
            return Concept::disjunction(rename_intervals(c.child(0), mapping), rename_intervals(c.child(1), mapping));
        case ConceptKind::Exists: return Concept::some(c.name(), rename_intervals(c.child(), mapping));
        case ConceptKind::Forall: return Concept::all(c.name(), rename_intervals(c.child(), mapping));
        case ConceptKind::AtLeast:
            return Concept::at_least(c.number(), c.name(), rename_intervals(c.child(), mapping));
        case ConceptKind::AtMost:
            return Concept::at_most(c.number(), c.name(), rename_intervals(c.child(), mapping));
        case ConceptKind::At: return Concept::at(rename_intervals(c.child(), mapping), rename(c.name()));
        case ConceptKind::TemporalExists: {
            // Inner binders shadow the mapping.
            std::vector<std::pair<std::string, std::string>> inner;
            for (const auto& m : mapping)
                if (std::find(c.vars().begin(), c.vars().end(), m.first) == c.vars().end()) inner.push_back(m);
            auto rn = [&](const std::string& id) {
                for (const auto& [from, to] : inner)
                    if (from == id) return to;
                return id;
            };
            std::vector<IntervalConstraint> phi;
            for (const auto& k : c.constraints()) phi.push_back({rn(k.x), k.rels, rn(k.y)});
            return Concept::temporal_exists(c.vars(), std::move(phi), rename_intervals(c.child(), inner));
        }
    }
    return c;
}

}  // namespace tcpdl::dl
