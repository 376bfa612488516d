#include "tcpdl/specio.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace tcpdl {

std::string_view to_string(Variant v) noexcept { return v == Variant::Allen ? "T-CPDL_A" : "T-CPDL_T"; }

std::size_t KnowledgeBase::declared_interval_count() const {
    std::size_t n = 0;
    for (const auto& iv : network.intervals())
        if (iv.origin == temporal::Origin::Declared) ++n;
    return n;
}

std::size_t KnowledgeBase::asserted_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : graph.edges())
        if (!e.derived) ++n;
    return n;
}

}  // namespace tcpdl

namespace tcpdl::specio {

using json = nlohmann::json;
using allen::Relation;
using allen::RelationSet;

std::string_view to_string(Severity s) noexcept { return s == Severity::Error ? "error" : "warning"; }

std::string format(const Diagnostic& d) {
    return std::string(to_string(d.severity)) + "[" + d.rule + "] " + d.path + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

// ── timestamps ──────────────────────────────────────────────────────────────

namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
    if (pos + n > s.size()) return false;
    out = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

}  // namespace

Tick parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    auto fail = [&]() -> TimestampError { return TimestampError("invalid timestamp: \"" + std::string(text) + "\""); };
    int y = 0, mo = 1, d = 1, hh = 0, mm = 0, ss = 0;
    if (!digits(text, 0, 4, y)) throw fail();
    if (text.size() != 4) {
        if (text.size() < 10 || text[4] != '-' || text[7] != '-' || !digits(text, 5, 2, mo) || !digits(text, 8, 2, d))
            throw fail();
        if (text.size() != 10) {
            if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' || text[19] != 'Z' ||
                !digits(text, 11, 2, hh) || !digits(text, 14, 2, mm) || !digits(text, 17, 2, ss))
                throw fail();
            if (hh > 23 || mm > 59 || ss > 59) throw fail();
        }
    }
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw fail();
    Tick days_since = sys_days{ymd}.time_since_epoch().count();
    return days_since * 86400 + hh * 3600 + mm * 60 + ss;
}

std::string format_timestamp(Tick t) {
    using namespace std::chrono;
    Tick day_count = t / 86400;
    Tick sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        --day_count;
    }
    year_month_day ymd{sys_days{days{day_count}}};
    char buf[32];
    if (sod == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(sod / 3600),
                      static_cast<int>(sod / 60 % 60), static_cast<int>(sod % 60));
    }
    return buf;
}

// ── parsing ─────────────────────────────────────────────────────────────────

namespace {

const char* const kTauKeys[] = {"@tau", "@τ", "@\\tau"};

class Reader {
public:
    explicit Reader(std::vector<Diagnostic>& out) : out_(out) {}

    void error(std::string rule, std::string path, std::string msg) {
        out_.push_back({Severity::Error, std::move(rule), std::move(msg), std::move(path)});
    }
    void warning(std::string rule, std::string path, std::string msg) {
        out_.push_back({Severity::Warning, std::move(rule), std::move(msg), std::move(path)});
    }

    std::optional<std::string> string_field(const json& obj, const std::string& key, const std::string& path,
                                            bool required) {
        auto it = obj.find(key);
        if (it == obj.end() || (it->is_null() && !required)) {
            if (required) error("S004", path, "missing required field \"" + key + "\"");
            return std::nullopt;
        }
        if (!it->is_string()) {
            error("S003", path + "." + key, "expected a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<dl::Concept> concept_field(const json& obj, const std::string& key, const std::string& path,
                                             bool required) {
        auto text = string_field(obj, key, path, required);
        if (!text) return std::nullopt;
        try {
            return dl::parse_concept(*text);
        } catch (const dl::ConceptSyntaxError& e) {
            error("S009", path + "." + key, e.what());
            return std::nullopt;
        }
    }

    const json* array_field(const json& root, const std::string& key) {
        auto it = root.find(key);
        if (it == root.end() || it->is_null()) return nullptr;
        if (!it->is_array()) {
            error("S003", "$." + key, "expected an array");
            return nullptr;
        }
        return &*it;
    }

    void unknown_keys(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* k : known) ok = ok || it.key() == k;
            if (!ok) warning("S005", path + "." + it.key(), "unknown field ignored");
        }
    }

private:
    std::vector<Diagnostic>& out_;
};

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

}  // namespace

ParseResult parse_spec(std::string_view text) {
    ParseResult res;
    Reader rd(res.diagnostics);
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        rd.error("S001", "$", std::string("malformed JSON: ") + e.what());
        return res;
    }
    if (!root.is_object()) {
        rd.error("S002", "$", "top level must be an object");
        return res;
    }
    rd.unknown_keys(root, "$", {"variant", "intervals", "assertions", "roles", "causes", "axioms", "preventive"});

    SpecDocument doc;
    bool any_timestamp = false;

    // Intervals.
    std::set<std::string> declared;
    if (const json* arr = rd.array_field(root, "intervals")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.intervals", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            auto id = rd.string_field(o, "id", path, true);
            if (!id) continue;
            if (!declared.insert(*id).second) {
                rd.error("S007", path + ".id", "duplicate interval id \"" + *id + "\"");
                continue;
            }
            IntervalEntry e;
            e.id = *id;
            e.path = path;
            e.starts = rd.string_field(o, "starts", path, false);
            e.finished_by = rd.string_field(o, "finished-by", path, false);
            any_timestamp = any_timestamp || e.starts || e.finished_by;
            for (auto it = o.begin(); it != o.end(); ++it) {
                const std::string& key = it.key();
                if (key == "id" || key == "starts" || key == "finished-by") continue;
                const std::string fpath = path + "." + key;
                auto rel = allen::parse_relation(key);
                if (!rel) {
                    rd.warning("A002", fpath, "not an Allen relation name; field ignored");
                    continue;
                }
                std::vector<std::string> targets;
                if (it->is_string()) targets.push_back(it->get<std::string>());
                else if (it->is_array()) {
                    for (const auto& t : *it) {
                        if (!t.is_string()) {
                            targets.clear();
                            break;
                        }
                        targets.push_back(t.get<std::string>());
                    }
                }
                if (targets.empty()) {
                    rd.error("A001", fpath, "Allen field must name an interval id or a list of ids");
                    continue;
                }
                for (auto& t : targets) {
                    if (t == e.id) {
                        rd.error("A003", fpath, "interval related to itself");
                        continue;
                    }
                    e.allen.push_back({*rel, std::move(t), fpath});
                }
            }
            doc.intervals.push_back(std::move(e));
        }
    }
    std::set<std::string> resolvable = declared;
    for (const auto& iv : doc.intervals)
        for (const auto& f : iv.allen) resolvable.insert(f.target);
    auto check_ref = [&](const std::optional<std::string>& ref, const std::string& path) {
        if (ref && !resolvable.count(*ref)) rd.error("S008", path, "unknown interval \"" + *ref + "\"");
    };

    // Assertions.
    if (const json* arr = rd.array_field(root, "assertions")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.assertions", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            rd.unknown_keys(o, path, {"concept", "individual", "atInterval"});
            auto c = rd.concept_field(o, "concept", path, true);
            auto who = rd.string_field(o, "individual", path, true);
            auto iv = rd.string_field(o, "atInterval", path, false);
            check_ref(iv, path + ".atInterval");
            if (c && who) doc.assertions.push_back({*c, *who, iv, path});
        }
    }

    // Roles.
    if (root.contains("roles")) {
        doc.has_roles = true;
        rd.warning("S010", "$.roles", "\"roles\" is outside the base schema; ingested as role assertions");
    }
    if (const json* arr = rd.array_field(root, "roles")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.roles", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            rd.unknown_keys(o, path, {"role", "subject", "object", "atInterval"});
            auto role = rd.string_field(o, "role", path, true);
            auto subj = rd.string_field(o, "subject", path, true);
            auto obj = rd.string_field(o, "object", path, true);
            auto iv = rd.string_field(o, "atInterval", path, false);
            check_ref(iv, path + ".atInterval");
            if (role && subj && obj) doc.roles.push_back({*role, *subj, *obj, iv, path});
        }
    }

    // Causes.
    if (const json* arr = rd.array_field(root, "causes")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.causes", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            rd.unknown_keys(o, path,
                            {"causeConcept", "effectConcept", "probability", "atInterval", "effectInterval", "context",
                             kTauKeys[0], kTauKeys[1], kTauKeys[2]});
            CauseEntry c;
            c.path = path;
            auto cause = rd.string_field(o, "causeConcept", path, true);
            auto effect = rd.string_field(o, "effectConcept", path, true);
            bool ok = cause && effect;
            if (auto it = o.find("probability"); it == o.end()) {
                rd.warning("C006", path, "probability missing; stored as null");
            } else if (it->is_number()) {
                double p = it->get<double>();
                if (!(p >= 0.0 && p <= 1.0)) {
                    rd.error("S011", path + ".probability", "probability outside [0,1]");
                    ok = false;
                } else {
                    c.probability = p;
                }
            } else if (!it->is_null()) {
                rd.error("S003", path + ".probability", "expected a number or null");
                ok = false;
            }
            c.at_interval = rd.string_field(o, "atInterval", path, false);
            c.effect_interval = rd.string_field(o, "effectInterval", path, false);
            check_ref(c.at_interval, path + ".atInterval");
            check_ref(c.effect_interval, path + ".effectInterval");
            for (const char* k : kTauKeys)
                if (o.contains(k)) {
                    c.tau = rd.string_field(o, k, path, false);
                    if (c.tau) any_timestamp = true;
                    break;
                }
            if (o.contains("context")) {
                c.context = rd.concept_field(o, "context", path, false);
                ok = ok && c.context;
            }
            if (!ok) continue;
            c.cause = *cause;
            c.effect = *effect;
            doc.causes.push_back(std::move(c));
        }
    }

    // Extension axioms.
    if (const json* arr = rd.array_field(root, "axioms")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.axioms", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            rd.unknown_keys(o, path, {"subClass", "superClass"});
            auto sub = rd.concept_field(o, "subClass", path, true);
            auto sup = rd.concept_field(o, "superClass", path, true);
            if (sub && sup) doc.axioms.push_back({*sub, *sup});
        }
    }
    if (const json* arr = rd.array_field(root, "preventive")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const json& o = (*arr)[i];
            const std::string path = at("$.preventive", i);
            if (!o.is_object()) {
                rd.error("S003", path, "expected an object");
                continue;
            }
            rd.unknown_keys(o, path, {"id", "guardConcept", "effectConcept", "relation"});
            auto id = rd.string_field(o, "id", path, false);
            auto guard = rd.concept_field(o, "guardConcept", path, true);
            auto effect = rd.concept_field(o, "effectConcept", path, true);
            auto rel_text = rd.string_field(o, "relation", path, true);
            std::optional<RelationSet> rels;
            if (rel_text) {
                try {
                    rels = allen::parse_relation_set(*rel_text);
                    if (rels->is_empty()) throw std::invalid_argument("empty relation set");
                } catch (const std::invalid_argument& e) {
                    rd.error("S013", path + ".relation", e.what());
                    rels.reset();
                }
            }
            if (guard && effect && rels)
                doc.preventive.push_back({id ? *id : "ax" + std::to_string(i), *guard, *effect, *rels});
        }
    }

    // Variant.
    if (auto it = root.find("variant"); it != root.end()) {
        if (it->is_string() && *it == "T-CPDL_A") doc.variant = Variant::Allen;
        else if (it->is_string() && *it == "T-CPDL_T") doc.variant = Variant::Timestamped;
        else rd.error("S006", "$.variant", "variant must be \"T-CPDL_A\" or \"T-CPDL_T\"");
        doc.variant_declared = true;
    } else {
        doc.variant = any_timestamp ? Variant::Timestamped : Variant::Allen;
        rd.warning("S012", "$", "variant absent; inferred " + std::string(to_string(doc.variant)));
    }

    res.document = std::move(doc);
    return res;
}

// ── building ────────────────────────────────────────────────────────────────

namespace {

std::optional<Tick> try_tick(const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    try {
        return parse_timestamp(*s);
    } catch (const TimestampError&) {
        return std::nullopt;
    }
}

std::optional<temporal::Bounds> bounds_of(const IntervalEntry& e) {
    auto s = try_tick(e.starts);
    auto f = try_tick(e.finished_by);
    if (!s || !f || *s > *f) return std::nullopt;
    return temporal::Bounds{*s, *f};
}

KnowledgeBase build(const SpecDocument& doc) {
    KnowledgeBase kb;
    kb.variant = doc.variant;
    using temporal::Origin;
    for (const auto& e : doc.intervals)
        kb.network.add_interval({e.id, bounds_of(e), Origin::Declared}, temporal::TemporalNetwork::BoundsPolicy::Defer);
    for (const auto& e : doc.intervals)
        for (const auto& f : e.allen)
            if (!kb.network.contains(f.target)) kb.network.add_interval({f.target, std::nullopt, Origin::Implicit});
    for (const auto& e : doc.intervals)
        for (const auto& f : e.allen) {
            kb.constraints.push_back({e.id, f.rel, f.target});
            try {
                kb.network.add_constraint(e.id, RelationSet(f.rel), f.target);
            } catch (const temporal::InconsistentConstraint& c) {
                kb.load_conflicts.push_back({c.x, c.y, c.existing, c.added});
            }
        }

    for (const auto& a : doc.assertions) kb.abox.concepts.push_back({a.individual, a.expr, a.at_interval});
    for (const auto& r : doc.roles) kb.abox.roles.push_back({r.role, r.subject, r.object, r.at_interval});
    for (const auto& ax : doc.axioms) kb.tbox.subsumptions.push_back({ax.sub, ax.sup});
    for (const auto& p : doc.preventive) {
        kb.tbox.preventive.push_back({p.id, p.guard, p.effect, p.relations});
        kb.graph.defeaters.push_back(p.id);
    }

    std::map<std::string, std::vector<std::size_t>> by_effect;
    for (std::size_t i = 0; i < doc.causes.size(); ++i) by_effect[doc.causes[i].effect].push_back(i);
    std::vector<bool> fill(doc.causes.size(), false);
    std::vector<double> share(doc.causes.size(), 0.0);
    for (const auto& [effect, idx] : by_effect) {
        if (idx.size() < 2) continue;
        bool all_null = true;
        for (auto i : idx) all_null = all_null && !doc.causes[i].probability;
        if (!all_null) continue;
        for (auto i : idx) {
            fill[i] = true;
            share[i] = 1.0 / static_cast<double>(idx.size());
        }
    }
    for (std::size_t i = 0; i < doc.causes.size(); ++i) {
        const auto& c = doc.causes[i];
        causal::CausalEdge e;
        e.cause = c.cause;
        e.effect = c.effect;
        e.probability = fill[i] ? std::optional<double>(share[i]) : c.probability;
        e.auto_uniform = fill[i];
        e.anchor_interval = c.at_interval;
        e.effect_interval = c.effect_interval;
        e.timestamp = try_tick(c.tau);
        e.context = c.context;
        if (fill[i]) e.provenance.push_back("auto-uniform");
        kb.graph.add_edge(std::move(e));
    }
    return kb;
}

}  // namespace

std::vector<Diagnostic> validate_spec(const SpecDocument& doc) {
    std::vector<Diagnostic> out;
    Reader rd(out);
    bool timestamps_ok = true;
    std::map<std::string, const IntervalEntry*> by_id;

    for (const auto& e : doc.intervals) {
        by_id[e.id] = &e;
        const bool has_ts = e.starts || e.finished_by;
        if (doc.variant == Variant::Timestamped && !(e.starts && e.finished_by)) {
            rd.error("T003", e.path, "timestamped interval needs both \"starts\" and \"finished-by\"");
            timestamps_ok = false;
        }
        if (doc.variant == Variant::Allen && has_ts) {
            rd.error("T004", e.path, "Allen-relational document carries timestamps");
            timestamps_ok = false;
        }
        std::optional<Tick> s, f;
        for (auto [text, key, slot] : {std::tuple{&e.starts, "starts", &s}, std::tuple{&e.finished_by, "finished-by", &f}}) {
            if (!*text) continue;
            try {
                *slot = parse_timestamp(**text);
            } catch (const TimestampError& ex) {
                rd.error("T001", e.path + "." + key, ex.what());
                timestamps_ok = false;
            }
        }
        if (s && f && *s > *f) {
            rd.error("T002", e.path, "\"starts\" is later than \"finished-by\"");
            timestamps_ok = false;
        }
    }

    if (doc.variant == Variant::Allen && doc.intervals.size() >= 2) {
        std::set<std::string> related;
        for (const auto& e : doc.intervals)
            for (const auto& f : e.allen) {
                related.insert(e.id);
                related.insert(f.target);
            }
        for (const auto& e : doc.intervals)
            if (!related.count(e.id))
                rd.warning("A004", e.path, "interval \"" + e.id + "\" is not related to any other interval");
    }

    std::set<std::tuple<std::string, std::string, std::optional<std::string>>> seen;
    for (const auto& c : doc.causes) {
        if (!seen.insert({c.cause, c.effect, c.at_interval}).second)
            rd.error("C005", c.path, "duplicate cause " + c.cause + " -> " + c.effect + " at the same interval");
        if (!c.tau) continue;
        if (doc.variant == Variant::Allen) rd.warning("T006", c.path, "@tau in an Allen-relational document");
        std::optional<Tick> tau;
        try {
            tau = parse_timestamp(*c.tau);
        } catch (const TimestampError& ex) {
            rd.error("T001", c.path + ".@tau", ex.what());
            continue;
        }
        if (!c.at_interval) continue;
        auto it = by_id.find(*c.at_interval);
        if (it == by_id.end()) continue;
        if (auto b = bounds_of(*it->second); b && (*tau < b->start || *tau > b->end))
            rd.error("T007", c.path + ".@tau", "@tau lies outside interval \"" + *c.at_interval + "\"");
    }

    // Uniform-prior sanity on groups that look auto-filled.
    std::map<std::string, std::vector<const CauseEntry*>> by_effect;
    for (const auto& c : doc.causes) by_effect[c.effect].push_back(&c);
    for (const auto& [effect, group] : by_effect) {
        const std::size_t k = group.size();
        if (k < 2) continue;
        bool uniform = true;
        for (const auto* c : group) uniform = uniform && c->probability && *c->probability == *group[0]->probability;
        if (!uniform) continue;
        double sum = 0.0;
        for (const auto* c : group) sum += *c->probability;
        const double expect = 1.0 / static_cast<double>(k);
        if (std::abs(*group[0]->probability - expect) > 1e-3)
            rd.warning("C003", group[0]->path + ".probability",
                       "uniform probabilities for " + effect + " differ from 1/" + std::to_string(k));
        if (std::abs(sum - 1.0) > 1e-2)
            rd.warning("C004", group[0]->path + ".probability",
                       "probabilities of the causes of " + effect + " do not sum to 1");
    }

    if (!timestamps_ok) return out;

    // Network-level checks on a scratch build.
    KnowledgeBase kb;
    try {
        kb = build(doc);
    } catch (const std::exception&) {
        return out;  // structural problems are already reported
    }
    for (const auto& c : kb.network.reconcile_timestamps().conflicts)
        rd.error("T005", by_id.count(c.x) ? by_id[c.x]->path : "$.intervals",
                 "declared " + c.declared.to_string() + " between " + c.x + " and " + c.y + " contradicts timestamps (" +
                     std::string(allen::short_name(c.from_timestamps)) + ")");
    if (!kb.load_conflicts.empty() || !kb.network.path_consistency().consistent) return out;

    const RelationSet precedes{Relation::Before, Relation::Meets};
    for (const auto& c : doc.causes) {
        if (!c.at_interval || !c.effect_interval) continue;
        if (!kb.network.contains(*c.at_interval) || !kb.network.contains(*c.effect_interval)) continue;
        RelationSet rel = kb.network.implied_relation(*c.at_interval, *c.effect_interval);
        if ((rel & precedes).is_empty())
            rd.error("C001", c.path, "cause interval relates to effect interval by " + rel.to_string() +
                                         ", outside {b,m}");
        else if (!rel.subset_of(precedes))
            rd.warning("C002", c.path, "cause precedence undetermined: " + rel.to_string());
    }
    return out;
}

KnowledgeBase to_knowledge_base(const SpecDocument& doc) {
    KnowledgeBase kb = build(doc);
    kb.network.reconcile_timestamps();
    return kb;
}

// ── export ──────────────────────────────────────────────────────────────────

namespace {

std::string field_name(Relation r) {
    // The long forms of s and fi are the timestamp keys.
    if (r == Relation::Starts || r == Relation::FinishedBy) return std::string(allen::short_name(r));
    return std::string(allen::long_name(r));
}

}  // namespace

std::string export_spec(const KnowledgeBase& kb) {
    using ojson = nlohmann::ordered_json;
    ojson root = ojson::object();
    root["variant"] = std::string(to_string(kb.variant));

    ojson intervals = ojson::array();
    for (const auto& iv : kb.network.intervals()) {
        if (iv.origin != temporal::Origin::Declared) continue;
        ojson o = ojson::object();
        o["id"] = iv.id;
        if (iv.bounds) {
            o["starts"] = format_timestamp(iv.bounds->start);
            o["finished-by"] = format_timestamp(iv.bounds->end);
        }
        std::vector<std::pair<std::string, std::vector<std::string>>> fields;
        for (const auto& c : kb.constraints) {
            if (c.x != iv.id) continue;
            std::string key = field_name(c.rel);
            auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.first == key; });
            if (it == fields.end()) fields.push_back({key, {c.y}});
            else it->second.push_back(c.y);
        }
        for (const auto& [key, targets] : fields) {
            if (targets.size() == 1) o[key] = targets[0];
            else o[key] = targets;
        }
        intervals.push_back(std::move(o));
    }
    root["intervals"] = std::move(intervals);

    ojson assertions = ojson::array();
    for (const auto& a : kb.abox.concepts) {
        ojson o = ojson::object();
        o["concept"] = a.expr.to_string();
        o["individual"] = a.individual;
        if (a.interval) o["atInterval"] = *a.interval;
        assertions.push_back(std::move(o));
    }
    root["assertions"] = std::move(assertions);

    if (!kb.abox.roles.empty()) {
        ojson roles = ojson::array();
        for (const auto& r : kb.abox.roles) {
            ojson o = ojson::object();
            o["role"] = r.role;
            o["subject"] = r.subject;
            o["object"] = r.object;
            if (r.interval) o["atInterval"] = *r.interval;
            roles.push_back(std::move(o));
        }
        root["roles"] = std::move(roles);
    }

    ojson causes = ojson::array();
    for (const auto& e : kb.graph.edges()) {
        if (e.derived) continue;
        ojson o = ojson::object();
        o["causeConcept"] = e.cause;
        o["effectConcept"] = e.effect;
        if (e.probability && !e.auto_uniform) o["probability"] = *e.probability;
        else o["probability"] = nullptr;
        if (e.anchor_interval) o["atInterval"] = *e.anchor_interval;
        if (e.effect_interval) o["effectInterval"] = *e.effect_interval;
        if (e.timestamp) o["@tau"] = format_timestamp(*e.timestamp);
        if (e.context) o["context"] = e.context->to_string();
        causes.push_back(std::move(o));
    }
    root["causes"] = std::move(causes);

    if (!kb.tbox.subsumptions.empty()) {
        ojson axioms = ojson::array();
        for (const auto& s : kb.tbox.subsumptions)
            axioms.push_back(ojson{{"subClass", s.sub.to_string()}, {"superClass", s.sup.to_string()}});
        root["axioms"] = std::move(axioms);
    }
    if (!kb.tbox.preventive.empty()) {
        ojson prev = ojson::array();
        for (const auto& p : kb.tbox.preventive) {
            ojson o = ojson::object();
            o["id"] = p.id;
            o["guardConcept"] = p.guard.to_string();
            o["effectConcept"] = p.effect.to_string();
            o["relation"] = p.relations.to_string();
            prev.push_back(std::move(o));
        }
        root["preventive"] = std::move(prev);
    }
    return root.dump(2) + "\n";
}

}  // namespace tcpdl::specio
