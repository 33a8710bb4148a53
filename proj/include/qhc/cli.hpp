#pragma once

// qhc classify|equiv|resolve|euclid [--mode exact|float] [--tol T] [--reduce]
//     [--format text|dot|json] ARGS...
//
// Exit codes: 0 ok / equivalent, 1 not equivalent, 2 bad arguments or parse
// error, 3 not quasi-homogeneous / not reduced / needs float mode, 4 internal
// cross-check failure.

#include "qhc/equivalence.hpp"
#include "qhc/moduli.hpp"
#include "qhc/parse.hpp"
#include "qhc/quasihom.hpp"
#include "qhc/resolution.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qhc {

enum ExitCode : int { ok = 0, not_equivalent = 1, usage_error = 2, analysis_error = 3, internal_error = 4 };

struct CliConfig {
    std::string mode = "exact";
    double tol = 1e-9;
    bool reduce = false;
    std::string format = "text";

    Field field() const { return mode == "float" ? float_field(tol) : exact_field; }
};

namespace detail {

using nlohmann::json;

inline std::string list_text(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

inline std::string scalars_text(const std::vector<Scalar>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
    return s + "}";
}

inline json scalars_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.to_string());
    return a;
}

inline std::string kind_text(TypeKind k) {
    switch (k) {
        case TypeKind::homogeneous: return "(1,1)";
        case TypeKind::one_q: return "(1,q)";
        case TypeKind::p_q: return "(p,q)";
    }
    return "?";
}

struct Prepared {
    BiPoly poly;
    Weights weights;
    NormalForm nf;
};

inline Prepared prepare(const std::string& text, const CliConfig& cfg, std::ostream& err) {
    Prepared p{parse_poly(text, cfg.field()), {}, {}};
    p.weights = require_weights(p.poly);
    p.nf = normal_form(p.poly);
    if (cfg.reduce) {
        Reduction r = reduce(p.nf);
        err << "warning: --reduce applied to " << format_poly(p.poly) << ": ";
        if (r.dropped.empty()) err << "already reduced";
        for (std::size_t i = 0; i < r.dropped.size(); ++i) err << (i ? "; " : "") << r.dropped[i];
        err << "\n";
        p.nf = r.nf;
    } else if (!check_reduced(p.nf)) {
        throw NotReduced("curve " + format_poly(p.poly) + " is not reduced (repeated factor); use --reduce");
    }
    return p;
}

inline json normal_form_json(const NormalForm& nf) {
    return {{"mu", nf.mu.to_string()}, {"m", nf.m},          {"n", nf.n},
            {"p", nf.p},               {"q", nf.q},          {"lambdas", scalars_json(nf.lambdas)},
            {"swapped", nf.swapped},   {"expanded", format_poly(expand(nf))}};
}

inline json type_json(const CurveType& t) {
    json j{{"kind", kind_text(t.kind)}, {"triple", t.triple()}, {"p", t.p}, {"q", t.q}, {"n", t.n}};
    j["m_parity"] = t.m_parity ? json(*t.m_parity) : json(nullptr);
    j["k_parity"] = t.k_parity ? json(*t.k_parity) : json(nullptr);
    json pts = json::array();
    for (const auto& pt : t.configuration.points()) pts.push_back(pt.to_string());
    j["configuration"] = {{"space", to_string(t.configuration.space())}, {"points", pts}};
    return j;
}

// Minimum distance between finite points; infinite when fewer than two.
inline json separation_json(const Configuration& c) {
    double d = c.min_separation();
    return std::isfinite(d) ? json(d) : json(nullptr);
}

inline std::string separation_text(const Configuration& c) {
    double d = c.min_separation();
    return std::isfinite(d) ? detail::format_double(d) : "none";
}

inline void require_format(const CliConfig& cfg, bool dot_allowed) {
    if (cfg.format == "dot" && !dot_allowed) throw std::invalid_argument("--format dot applies to resolve only");
}

inline int cmd_classify(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    require_format(cfg, false);
    Prepared p = prepare(text, cfg, err);
    CurveType t = classify_type(p.nf);
    std::string key = canonical_key(t.configuration);
    if (cfg.format == "json") {
        json j{{"input", format_poly(p.poly)},
               {"weights", {{"a", p.weights.a}, {"b", p.weights.b}, {"d", p.weights.d}}},
               {"normal_form", normal_form_json(p.nf)},
               {"type", type_json(t)},
               {"canonical_key", key}};
        if (!cfg.field().exact()) j["min_separation"] = separation_json(t.configuration);
        out << j.dump(2) << "\n";
        return ok;
    }
    const NormalForm& nf = p.nf;
    out << "input: " << format_poly(p.poly) << "\n";
    out << "weights: (" << p.weights.a << "," << p.weights.b << "," << p.weights.d << ")\n";
    out << "normal form: mu = " << nf.mu.to_string() << ", m = " << nf.m << ", n = " << nf.n << ", (p,q) = ("
        << nf.p << "," << nf.q << "), lambda = " << scalars_text(nf.lambdas) << (nf.swapped ? ", x and y swapped" : "")
        << "\n";
    out << "expanded: " << format_poly(expand(nf)) << "\n";
    out << "type: " << t.triple() << " kind " << kind_text(t.kind) << "\n";
    if (t.m_parity) out << "parity m: " << *t.m_parity << "\n";
    if (t.k_parity) out << "parity k: " << *t.k_parity << "\n";
    out << "configuration: " << to_string(t.configuration.space()) << " " << t.configuration.to_string() << "\n";
    out << "canonical key: " << key << "\n";
    if (!cfg.field().exact()) out << "minimum separation: " << separation_text(t.configuration) << "\n";
    return ok;
}

inline int cmd_equiv(const std::string& a, const std::string& b, const CliConfig& cfg, std::ostream& out,
                     std::ostream& err) {
    require_format(cfg, false);
    Prepared pa = prepare(a, cfg, err);
    Prepared pb = prepare(b, cfg, err);
    EquivalenceResult r = decide_equivalence(pa.nf, pb.nf);
    if (cfg.format == "json") {
        json j{{"equivalent", r.equivalent()},
               {"source_type", r.source_type.triple()},
               {"target_type", r.target_type.triple()}};
        if (!cfg.field().exact())
            j["min_separation"] = {separation_json(r.source_type.configuration),
                                   separation_json(r.target_type.configuration)};
        if (r.witness) {
            const Witness& w = *r.witness;
            j["witness"] = {{"T", {w.component_text(0), w.component_text(1)}},
                            {"alpha", w.alpha_text()},
                            {"group_element", to_string(w.group_element)}};
        } else {
            j["reason"] = r.reason;
        }
        out << j.dump(2) << "\n";
    } else if (r.witness) {
        const Witness& w = *r.witness;
        out << "equivalent\n";
        out << "type: " << r.source_type.triple() << "\n";
        out << "group element: " << to_string(w.group_element) << "\n";
        out << w.plane_map_text() << "\n";
        out << "alpha = " << w.alpha_text() << "\n";
        out << "check: f2(T(x,y)) = alpha * f1(x,y)\n";
    } else {
        out << "not equivalent: " << r.reason << "\n";
    }
    if (!cfg.field().exact() && cfg.format != "json")
        out << "minimum separation: " << separation_text(r.source_type.configuration) << ", "
            << separation_text(r.target_type.configuration) << "\n";
    return r.equivalent() ? ok : not_equivalent;
}

inline int cmd_resolve(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Prepared p = prepare(text, cfg, err);
    ResolutionTree tree = simulate_resolution(p.nf);
    std::vector<int> formula = chain_self_intersections(p.nf.p, p.nf.q);
    std::vector<int> simulated = tree.chain();
    std::vector<int> reversed(simulated.rbegin(), simulated.rend());
    const bool agree = formula == simulated || formula == reversed;
    if (cfg.format == "json") {
        json j = tree_to_json(tree);
        j["formula_chain"] = formula;
        j["simulator_chain"] = simulated;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "dot") {
        out << "// formula chain " << list_text(formula) << "\n";
        out << "// simulator chain " << list_text(simulated) << "\n";
        out << export_graph(tree, GraphFormat::dot);
    } else {
        out << export_graph(tree, GraphFormat::text) << "\n";
        out << "formula chain: " << list_text(formula) << "\n";
        out << "simulator chain: " << list_text(simulated) << "\n";
        out << "blowups: " << tree.blowup_count << "\n";
    }
    if (!agree) {
        err << "error: formula chain " << list_text(formula) << " disagrees with simulator chain "
            << list_text(simulated) << "\n";
        return internal_error;
    }
    return ok;
}

inline int cmd_euclid(unsigned p, unsigned q, const CliConfig& cfg, std::ostream& out) {
    require_format(cfg, false);
    EuclidChain ch = euclid_chain(p, q);
    std::vector<int> chain = chain_self_intersections(p, q);
    auto [rp, rq] = weights_from_chain(chain);
    std::vector<int> s;
    for (auto v : ch.quotients()) s.push_back(static_cast<int>(v));
    if (cfg.format == "json") {
        json steps = json::array();
        for (const auto& st : ch.steps) steps.push_back({st.q, st.p, st.s, st.r});
        json j{{"steps", steps}, {"s", s}, {"N", ch.blowups()}, {"chain", chain}, {"weights_from_chain", {rp, rq}}};
        out << j.dump(2) << "\n";
        return ok;
    }
    out << "steps: [";
    for (std::size_t i = 0; i < ch.steps.size(); ++i) {
        const auto& st = ch.steps[i];
        out << (i ? ", " : "") << "(" << st.q << "," << st.p << "," << st.s << "," << st.r << ")";
    }
    out << "]\n";
    out << "s: " << list_text(s) << "\n";
    out << "N: " << ch.blowups() << "\n";
    out << "chain: " << list_text(chain) << "\n";
    out << "weights from chain: (" << rp << "," << rq << ")\n";
    return ok;
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Normal forms, equivalence and resolution of quasi-homogeneous plane curves", "qhc"};
    app.require_subcommand(1, 1);
    app.add_option("--mode", cfg.mode, "exact (Gaussian rationals) or float")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", cfg.tol, "float mode tolerance")->check(CLI::PositiveNumber);
    app.add_flag("--reduce", cfg.reduce, "replace the curve by its reduced curve");
    app.add_option("--format", cfg.format, "text, dot or json")->check(CLI::IsMember({"text", "dot", "json"}));

    std::string poly_a, poly_b;
    unsigned p = 0, q = 0;
    auto* classify = app.add_subcommand("classify", "weights, normal form, type and canonical key")->fallthrough();
    classify->add_option("poly", poly_a)->required();
    auto* equiv = app.add_subcommand("equiv", "decide analytic equivalence and print a witness")->fallthrough();
    equiv->add_option("poly1", poly_a)->required();
    equiv->add_option("poly2", poly_b)->required();
    auto* resolve = app.add_subcommand("resolve", "dual graph of the minimal resolution")->fallthrough();
    resolve->add_option("poly", poly_a)->required();
    auto* euclid = app.add_subcommand("euclid", "Euclid chain and self-intersections for weights p q")->fallthrough();
    euclid->add_option("p", p)->required()->check(CLI::PositiveNumber);
    euclid->add_option("q", q)->required()->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (*classify) return detail::cmd_classify(poly_a, cfg, out, err);
        if (*equiv) return detail::cmd_equiv(poly_a, poly_b, cfg, out, err);
        if (*resolve) return detail::cmd_resolve(poly_a, cfg, out, err);
        return detail::cmd_euclid(p, q, cfg, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << "\n";
        return analysis_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
}

}  // namespace qhc
