#include "tcpdl/cli.hpp"

#include "tcpdl/engine.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>
#include <variant>

namespace tcpdl::cli {

namespace {

using ojson = nlohmann::ordered_json;
using specio::Diagnostic;
using specio::Severity;

struct Config {
    std::string file;
    std::string format = "text";
    std::string mode = "noisy-or";
    std::string from, to, at;
    std::vector<std::string> evidence;
    std::optional<long> seed;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// JSON carries the same rounded value the text mode prints.
ojson jnum(const std::optional<double>& v) { return v ? ojson(std::stod(num(*v))) : ojson(nullptr); }

std::string percent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g%%", p * 100.0);
    return buf;
}

class Printer {
public:
    Printer(std::ostream& out, std::ostream& err, bool json) : out(out), err(err), json(json) {
        const char* env = std::getenv("TCPDL_COLOR");
        std::string mode = env ? env : "auto";
        color_ = mode != "never" && &err == &std::cerr && isatty(STDERR_FILENO);
    }

    std::string paint(Severity s, const std::string& text) const {
        if (!color_) return text;
        return (s == Severity::Error ? "\033[31m" : "\033[33m") + text + "\033[0m";
    }

    void diagnostic(std::ostream& os, const Diagnostic& d) const {
        os << paint(d.severity, std::string(specio::to_string(d.severity))) << "[" << d.rule << "] " << d.path << ": "
           << d.message << "\n";
    }

    std::ostream& out;
    std::ostream& err;
    bool json;

private:
    bool color_ = false;
};

ojson diagnostics_json(const std::vector<Diagnostic>& ds) {
    ojson arr = ojson::array();
    for (const auto& d : ds)
        arr.push_back({{"severity", specio::to_string(d.severity)}, {"rule", d.rule}, {"path", d.path}, {"message", d.message}});
    return arr;
}

std::optional<std::string> read_input(const std::string& path, const Printer& p) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        p.err << "tcpdl: cannot read " << path << "\n";
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Loads the file; on error diagnostics reports them and returns nullopt.
std::optional<KnowledgeBase> load_or_report(const std::string& text, const Printer& p) {
    auto res = engine::load(text);
    if (res.kb) {
        if (!p.json)
            for (const auto& d : res.diagnostics) p.diagnostic(p.err, d);
        return std::move(res.kb);
    }
    if (p.json) {
        p.out << ojson{{"status", "invalid"}, {"diagnostics", diagnostics_json(res.diagnostics)}}.dump(2) << "\n";
    } else {
        for (const auto& d : res.diagnostics) p.diagnostic(p.err, d);
    }
    return std::nullopt;
}

ojson report_json(const engine::ConsistencyReport& rep) {
    ojson failures = ojson::array();
    for (const auto& f : rep.failures)
        failures.push_back({{"kind", engine::to_string(f.kind)}, {"summary", f.summary}, {"trace", f.trace}});
    return ojson{{"status", rep.consistent() ? "consistent" : "inconsistent"},
                 {"failures", std::move(failures)},
                 {"notes", rep.notes}};
}

void print_report(const engine::ConsistencyReport& rep, std::ostream& os) {
    os << (rep.consistent() ? "consistent" : "inconsistent") << "\n";
    for (const auto& f : rep.failures) {
        os << "  " << engine::to_string(f.kind) << " failure: " << f.summary << "\n";
        for (const auto& line : f.trace) os << "    " << line << "\n";
    }
    for (const auto& n : rep.notes) os << "  note: " << n << "\n";
}

// ── commands ────────────────────────────────────────────────────────────────

int cmd_validate(const Config& cfg, const Printer& p) {
    auto text = read_input(cfg.file, p);
    if (!text) return kUsage;
    auto res = engine::load(*text);
    std::size_t errors = 0, warnings = 0;
    for (const auto& d : res.diagnostics) (d.severity == Severity::Error ? errors : warnings)++;
    if (p.json) {
        ojson o{{"status", errors ? "invalid" : "valid"}, {"errors", errors}, {"warnings", warnings},
                {"diagnostics", diagnostics_json(res.diagnostics)}};
        if (res.kb)
            o["counts"] = {{"intervals", res.kb->declared_interval_count()},
                           {"assertions", res.kb->abox.concepts.size()},
                           {"causes", res.kb->asserted_edge_count()}};
        p.out << o.dump(2) << "\n";
    } else {
        for (const auto& d : res.diagnostics) p.diagnostic(p.out, d);
        if (res.kb)
            p.out << std::string(to_string(res.kb->variant)) << ": " << res.kb->declared_interval_count()
                  << " intervals, " << res.kb->abox.concepts.size() << " assertions, " << res.kb->asserted_edge_count()
                  << " causes\n";
        p.out << errors << " error(s), " << warnings << " warning(s)\n";
    }
    return errors ? kInvalid : kOk;
}

int cmd_check(const Config& cfg, const Printer& p) {
    auto text = read_input(cfg.file, p);
    if (!text) return kUsage;
    auto kb = load_or_report(*text, p);
    if (!kb) return kInvalid;
    auto rep = engine::check_consistency(*kb);
    if (p.json) p.out << report_json(rep).dump(2) << "\n";
    else print_report(rep, p.out);
    return rep.consistent() ? kOk : kInconsistent;
}

struct Query {
    KnowledgeBase kb;
    engine::Inference inf;
    std::vector<engine::Recommendation> recommendations;
};

// Shared by infer and explain.  Returns an exit code when the query cannot
// be answered.
std::variant<Query, int> run_query(const Config& cfg, const Printer& p) {
    auto mode = causal::parse_combination(cfg.mode);
    if (!mode) {
        p.err << "tcpdl: --mode must be noisy-or, max-path or per-path\n";
        return kUsage;
    }
    auto text = read_input(cfg.file, p);
    if (!text) return kUsage;
    auto kb = load_or_report(*text, p);
    if (!kb) return kInvalid;
    auto rep = engine::check_consistency(*kb);
    if (!rep.consistent()) {
        if (p.json) p.out << report_json(rep).dump(2) << "\n";
        else print_report(rep, p.err);
        return kInconsistent;
    }

    causal::QueryOptions opts;
    opts.mode = *mode;
    if (!cfg.at.empty()) opts.target_interval = cfg.at;
    for (const auto& ev : cfg.evidence) {
        causal::Evidence e;
        auto pos = ev.rfind('@');
        e.concept_name = ev.substr(0, pos);
        if (pos != std::string::npos) {
            std::string where = ev.substr(pos + 1);
            if (kb->network.contains(where)) {
                e.interval = where;
            } else {
                try {
                    e.tick = specio::parse_timestamp(where);
                } catch (const specio::TimestampError&) {
                    e.interval = where;  // reported as unknown below
                }
            }
        }
        opts.evidence.push_back(std::move(e));
    }

    Query q;
    try {
        q.inf = engine::infer(*kb, cfg.from, cfg.to, opts);
    } catch (const std::exception& ex) {
        if (p.json) p.out << ojson{{"status", "query-failed"}, {"message", ex.what()}}.dump(2) << "\n";
        else p.err << "tcpdl: " << ex.what() << "\n";
        return kQueryFailed;
    }
    if (!q.inf.answer.blocked) q.recommendations = engine::recommend_prevention(*kb, cfg.to);
    q.kb = std::move(*kb);
    return q;
}

ojson answer_json(const Query& q, const Config& cfg) {
    const auto& a = q.inf.answer;
    ojson paths = ojson::array();
    for (const auto& path : a.paths) {
        ojson factors = ojson::array();
        for (const auto& f : path.factors) factors.push_back(jnum(f));
        paths.push_back({{"nodes", path.nodes}, {"edges", path.edge_ids}, {"factors", factors}, {"product", jnum(path.product)}});
    }
    ojson recs = ojson::array();
    for (const auto& r : q.recommendations)
        recs.push_back({{"axiom", r.axiom_id}, {"guard", r.guard.to_string()}, {"relations", r.relations.to_string()}});
    ojson o{{"status", "answered"},
            {"source", a.source},
            {"target", a.target},
            {"mode", cfg.mode},
            {"probability", jnum(a.probability)},
            {"reflexive", a.reflexive},
            {"paths", std::move(paths)},
            {"source_interval", a.source_interval.empty() ? ojson(nullptr) : ojson(a.source_interval)},
            {"target_interval", a.target_interval.empty() ? ojson(nullptr) : ojson(a.target_interval)},
            {"projection", a.projection.to_string()},
            {"effect_projection", a.effect_projection.to_string()},
            {"blocked", a.blocked}};
    if (a.blocked)
        o["defeater"] = {{"axiom", a.defeater.axiom_id},
                         {"individual", a.defeater.guard_individual},
                         {"interval", a.defeater.witness_interval},
                         {"relation", a.defeater.relation.to_string()}};
    else o["defeater"] = nullptr;
    o["recommendations"] = std::move(recs);
    o["diagnostics"] = a.diagnostics;
    return o;
}

void print_answer(const Query& q, std::ostream& os) {
    const auto& a = q.inf.answer;
    os << "P(" << a.target << " | " << a.source << ") = ";
    if (a.probability) os << num(*a.probability) << " (" << percent(*a.probability) << " risk)";
    else os << "unknown";
    if (a.reflexive) os << " [reflexive]";
    os << "\n";
    for (const auto& path : a.paths) {
        os << "  path: ";
        for (std::size_t i = 0; i < path.nodes.size(); ++i) os << (i ? " -> " : "") << path.nodes[i];
        os << "  [";
        for (std::size_t i = 0; i < path.factors.size(); ++i)
            os << (i ? " x " : "") << (path.factors[i] ? num(*path.factors[i]) : "null");
        os << " = " << (path.product ? num(*path.product) : "null") << "]\n";
    }
    if (!a.source_interval.empty() && !a.target_interval.empty())
        os << "  projection: " << a.source << "@" << a.source_interval << " " << a.projection.to_string() << " "
           << a.target << "@" << a.target_interval << " (effect side " << a.effect_projection.to_string() << ")\n";
    if (a.blocked)
        os << "  blocked by " << a.defeater.axiom_id << ": " << a.defeater.guard_individual << "@"
           << a.defeater.witness_interval << " " << a.defeater.relation.to_string() << " " << a.target_interval << "\n";
    for (const auto& r : q.recommendations)
        os << "  recommend: " << r.guard.to_string() << "@U with U " << r.relations.to_string() << " "
           << (a.target_interval.empty() ? "the " + a.target + " interval" : a.target_interval) << " (" << r.axiom_id
           << ")\n";
    for (const auto& d : a.diagnostics) os << "  note: " << d << "\n";
}

int cmd_infer(const Config& cfg, const Printer& p) {
    auto r = run_query(cfg, p);
    if (auto* code = std::get_if<int>(&r)) return *code;
    const auto& q = std::get<Query>(r);
    if (p.json) p.out << answer_json(q, cfg).dump(2) << "\n";
    else print_answer(q, p.out);
    return kOk;
}

int cmd_explain(const Config& cfg, const Printer& p) {
    auto r = run_query(cfg, p);
    if (auto* code = std::get_if<int>(&r)) return *code;
    const auto& q = std::get<Query>(r);
    const auto& steps = q.inf.trace.steps;
    if (p.json) {
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto& s = steps[i];
            ojson factors = ojson::array();
            for (double f : s.factors) factors.push_back(jnum(f));
            p.out << ojson{{"step", i + 1}, {"rule", s.rule}, {"inputs", s.inputs}, {"output", s.output},
                           {"factors", factors}, {"value", jnum(s.value)}}
                         .dump()
                  << "\n";
        }
        p.out << ojson{{"answer", answer_json(q, cfg)}}.dump() << "\n";
        return kOk;
    }
    print_answer(q, p.out);
    p.out << "trace:\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        p.out << "  " << i + 1 << ". " << s.rule;
        if (!s.inputs.empty()) {
            p.out << " [";
            for (std::size_t k = 0; k < s.inputs.size(); ++k) p.out << (k ? ", " : "") << s.inputs[k];
            p.out << "]";
        }
        p.out << ": " << s.output;
        if (s.factors.size() > 1) {
            p.out << "  factors";
            for (double f : s.factors) p.out << " " << num(f);
        }
        p.out << "\n";
    }
    return kOk;
}

int cmd_export(const Config& cfg, const Printer& p) {
    auto text = read_input(cfg.file, p);
    if (!text) return kUsage;
    auto kb = load_or_report(*text, p);
    if (!kb) return kInvalid;
    p.out << specio::export_spec(*kb);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Temporal causal probabilistic description logic reasoner", "tcpdl"};
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "Fixed seed (the engine is deterministic; recorded only)");

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", cfg.file, "spec.json document")->required();
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto query = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("--from", cfg.from, "Cause concept")->required();
        sub->add_option("--to", cfg.to, "Effect concept")->required();
        sub->add_option("--mode", cfg.mode, "Multi-path combination")
            ->check(CLI::IsMember({"noisy-or", "max-path", "per-path"}));
        sub->add_option("--evidence", cfg.evidence, "Evidence Concept[@interval|@timestamp], repeatable");
        sub->add_option("--at", cfg.at, "Candidate interval for the effect");
    };
    auto* validate = app.add_subcommand("validate", "Print diagnostics for a document");
    common(validate);
    auto* check = app.add_subcommand("check", "Run the consistency pipeline");
    common(check);
    auto* infer = app.add_subcommand("infer", "Chain probability between two concepts");
    query(infer);
    auto* explain = app.add_subcommand("explain", "Chain probability with the full proof trace");
    query(explain);
    auto* exp = app.add_subcommand("export", "Print the canonical document");
    common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kOk : kUsage;
    }

    Printer p(out, err, cfg.format == "json");
    if (*validate) return cmd_validate(cfg, p);
    if (*check) return cmd_check(cfg, p);
    if (*infer) return cmd_infer(cfg, p);
    if (*explain) return cmd_explain(cfg, p);
    return cmd_export(cfg, p);
}

}  // namespace tcpdl::cli
