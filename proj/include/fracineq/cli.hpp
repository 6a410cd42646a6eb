#pragma once

// Command-line front end: integrate, verify, certify, scan, search, report.
//
// Configuration may come from a JSON file (--config) and from flags; flags
// win. Config files are validated against a per-command key whitelist
// before anything is computed. Every run emits a report object
//   { "command": ..., "config": <fully resolved>, "report": <result> }
// and `report --in FILE` re-executes the embedded config (with --check it
// compares the stored and recomputed results byte for byte).
//
// Exit codes: 0 holds/converged/certified, 1 violated/witness found,
// 2 usage or computation error (including non-convergence), 3 inconclusive.

#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracineq/common.hpp"
#include "fracineq/explorer.hpp"
#include "fracineq/hh_verify.hpp"
#include "fracineq/report.hpp"

namespace fracineq::cli {

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline json load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& ex) {
        throw UsageError("config file is not valid JSON: " + std::string(ex.what()));
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    return j;
}

inline void validate_keys(const json& cfg, const std::set<std::string>& allowed) {
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!allowed.count(it.key()))
            throw UsageError("unknown config field \"" + it.key() + "\"");
}

// Flag-beats-config-beats-default resolution.
template <class T>
T pick(const std::optional<T>& flag, const json& cfg, const char* key,
       const std::optional<T>& fallback, const char* what) {
    if (flag) return *flag;
    if (cfg.contains(key)) {
        try {
            return cfg.at(key).get<T>();
        } catch (const json::exception&) {
            throw UsageError(std::string("config field \"") + key + "\" has the wrong type");
        }
    }
    if (fallback) return *fallback;
    throw UsageError(std::string("missing required ") + what);
}

template <class T>
std::optional<T> pick_opt(const std::optional<T>& flag, const json& cfg, const char* key) {
    if (flag) return *flag;
    if (cfg.contains(key)) {
        try {
            return cfg.at(key).get<T>();
        } catch (const json::exception&) {
            throw UsageError(std::string("config field \"") + key + "\" has the wrong type");
        }
    }
    return std::nullopt;
}

inline std::vector<double> parse_alpha_grid(const std::string& text) {
    std::vector<double> grid;
    auto bad = [&]() { throw UsageError("bad alpha grid \"" + text + "\""); };
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
            bad();
        for (double a = lo; a <= hi + 1e-12 * step; a += step) grid.push_back(a);
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) {
            try {
                grid.push_back(std::stod(item));
            } catch (...) {
                bad();
            }
        }
    }
    if (grid.empty()) bad();
    return grid;
}

inline FamilyDescriptor parse_family(const std::string& text) {
    if (text == "quadratic") return quadratic_family();
    if (!text.empty() && text.front() == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& ex) {
            throw UsageError("family descriptor is not valid JSON: " + std::string(ex.what()));
        }
        validate_keys(j, {"template", "params"});
        FamilyDescriptor fam;
        fam.template_text = j.at("template").get<std::string>();
        for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) {
            auto box = it.value().get<std::vector<double>>();
            if (box.size() != 2 || !(box[0] < box[1]))
                throw UsageError("parameter box for \"" + it.key() + "\" must be [lo, hi]");
            fam.params.emplace_back(it.key(), Interval{box[0], box[1], false});
        }
        if (fam.params.empty()) throw UsageError("family has no parameters");
        fam.sort_params();
        return fam;
    }
    throw UsageError("unknown family \"" + text + "\" (use \"quadratic\" or inline JSON)");
}

inline json family_to_json(const FamilyDescriptor& fam) {
    json params = json::object();
    for (const auto& [name, box] : fam.params) params[name] = json::array({box.lo, box.hi});
    return json{{"template", fam.template_text}, {"params", params}};
}

// Shared option bundle; each field is optional so config values shine
// through when the flag is absent.
struct Flags {
    std::optional<std::string> config_path, out, format, theorem, f, eta, side, property,
        alpha_grid, family, in;
    std::optional<double> a, b, x, alpha, p, q, tol, lo, hi, abs_tol, rel_tol;
    std::optional<int> nodes, max_panels, grid_points, random_samples, budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> quad_method;
    bool check = false;
};

struct OutputSpec {
    std::optional<std::string> path;
    std::string format = "json";  // json | csv
};

inline OutputSpec resolve_output(const Flags& fl, const json& cfg) {
    OutputSpec spec;
    spec.path = pick_opt<std::string>(fl.out, cfg, "out");
    auto fmt = pick_opt<std::string>(fl.format, cfg, "format");
    if (fmt) {
        if (*fmt != "json" && *fmt != "csv") throw UsageError("format must be json or csv");
        spec.format = *fmt;
    } else if (spec.path && spec.path->size() > 4 &&
               spec.path->compare(spec.path->size() - 4, 4, ".csv") == 0) {
        spec.format = "csv";
    }
    return spec;
}

inline QuadratureConfig resolve_quad(const Flags& fl, const json& cfg) {
    QuadratureConfig q;
    q.nodes_per_panel = pick<int>(fl.nodes, cfg, "nodes", q.nodes_per_panel, "nodes");
    q.max_panels = pick<int>(fl.max_panels, cfg, "max_panels", q.max_panels, "max_panels");
    q.abs_tol = pick<double>(fl.abs_tol, cfg, "abs_tol", q.abs_tol, "abs_tol");
    q.rel_tol = pick<double>(fl.rel_tol, cfg, "rel_tol", q.rel_tol, "rel_tol");
    std::string method = pick<std::string>(fl.quad_method, cfg, "quad_method",
                                           std::string("desingularized-gauss"), "quad_method");
    if (method == "desingularized-gauss")
        q.method = QuadMethod::DesingularizedGauss;
    else if (method == "adaptive-bisection")
        q.method = QuadMethod::AdaptiveBisection;
    else
        throw UsageError("quad_method must be desingularized-gauss or adaptive-bisection");
    if (q.nodes_per_panel < 2) throw UsageError("nodes must be at least 2");
    if (!(q.abs_tol > 0.0) || !(q.rel_tol >= 0.0)) throw UsageError("bad quadrature tolerances");
    return q;
}

inline void echo_quad(json& out, const QuadratureConfig& q) {
    out["nodes"] = q.nodes_per_panel;
    out["max_panels"] = q.max_panels;
    out["abs_tol"] = q.abs_tol;
    out["rel_tol"] = q.rel_tol;
    out["quad_method"] = q.method == QuadMethod::DesingularizedGauss ? "desingularized-gauss"
                                                                     : "adaptive-bisection";
}

inline SamplingPlan resolve_plan(const Flags& fl, const json& cfg, int threads) {
    SamplingPlan plan;
    plan.grid_points = pick<int>(fl.grid_points, cfg, "grid_points", plan.grid_points, "grid_points");
    plan.random_samples =
        pick<int>(fl.random_samples, cfg, "random_samples", plan.random_samples, "random_samples");
    plan.seed = pick<std::uint64_t>(fl.seed, cfg, "seed", kDefaultSeed, "seed");
    plan.threads = threads;
    if (plan.grid_points < 2) throw UsageError("grid_points must be at least 2");
    if (plan.random_samples < 0) throw UsageError("random_samples must be nonnegative");
    return plan;
}

inline void echo_plan(json& out, const SamplingPlan& plan) {
    out["grid_points"] = plan.grid_points;
    out["random_samples"] = plan.random_samples;
    out["seed"] = plan.seed;
}

struct Emitted {
    int exit_code = 0;
    json report;        // full report object {command, config, report}
    std::string human;  // stdout summary
    std::string csv;    // csv body when requested
};

inline void emit(const Emitted& e, const OutputSpec& spec, std::ostream& out) {
    out << e.human;
    if (spec.path) {
        if (spec.format == "csv")
            write_file_atomic(*spec.path, e.csv);
        else
            write_file_atomic(*spec.path, e.report.dump(2) + "\n");
    }
}

// ---------------------------------------------------------------------------
// integrate

inline Emitted run_integrate(const Flags& fl, const json& cfg) {
    validate_keys(cfg, {"command", "f", "a", "x", "alpha", "side", "tol", "nodes", "max_panels",
                        "abs_tol", "rel_tol", "quad_method", "out", "format"});
    std::string f_text = pick<std::string>(fl.f, cfg, "f", std::nullopt, "--f EXPR");
    double a = pick<double>(fl.a, cfg, "a", std::nullopt, "--a");
    double x = pick<double>(fl.x, cfg, "x", std::nullopt, "--x");
    double alpha = pick<double>(fl.alpha, cfg, "alpha", std::nullopt, "--alpha");
    std::string side = pick<std::string>(fl.side, cfg, "side", std::string("left"), "side");
    if (side != "left" && side != "right") throw UsageError("side must be left or right");
    QuadratureConfig quad = resolve_quad(fl, cfg);
    if (auto tol = pick_opt<double>(fl.tol, cfg, "tol")) {
        quad.abs_tol = *tol;
        quad.rel_tol = 0.0;
    }

    ExprPtr f = parse(f_text);
    FracOrder order(alpha);  // rejects alpha <= 0
    if (!(x > a)) throw UsageError("requires a < x");
    // left: J_{a+}^alpha f(x); right: the mirrored integral J_{x-}^alpha f(a)
    QuadResult q = side == "left" ? left_integral(*f, a, x, order, quad)
                                  : right_integral(*f, a, x, order, quad);

    json config{{"command", "integrate"}, {"f", f_text},      {"a", a},
                {"x", x},                 {"alpha", alpha},    {"side", side}};
    echo_quad(config, quad);
    json result{{"value", q.value},
                {"error_estimate", q.error_estimate},
                {"panels", q.panels_used},
                {"converged", q.converged}};

    Emitted e;
    e.report = json{{"command", "integrate"}, {"config", config}, {"report", result}};
    std::ostringstream os;
    os << (side == "left" ? "J[a+]" : "J[b-]") << "^" << fmt_shortest(alpha) << " = "
       << fmt_shortest(q.value) << "  (error estimate " << fmt_shortest(q.error_estimate)
       << ", panels " << q.panels_used << ", " << (q.converged ? "converged" : "NOT converged")
       << ")\n";
    e.human = os.str();
    e.csv = "value,error_estimate,panels,converged\n" + fmt17(q.value) + "," +
            fmt17(q.error_estimate) + "," + std::to_string(q.panels_used) + "," +
            (q.converged ? "true" : "false") + "\n";
    e.exit_code = q.converged ? 0 : 2;
    return e;
}

// ---------------------------------------------------------------------------
// verify

inline InequalityCase resolve_case(const Flags& fl, const json& cfg, int threads,
                                   bool need_alpha = true) {
    InequalityCase c;
    std::string theorem =
        pick<std::string>(fl.theorem, cfg, "theorem", std::nullopt, "--theorem ID");
    auto id = theorem_from_string(theorem);
    if (!id) throw UsageError("unknown theorem \"" + theorem + "\"");
    c.theorem = *id;
    c.f_text = pick<std::string>(fl.f, cfg, "f", std::nullopt, "--f EXPR");
    c.f = parse(c.f_text);
    c.a = pick<double>(fl.a, cfg, "a", std::nullopt, "--a");
    c.b = pick<double>(fl.b, cfg, "b", std::nullopt, "--b");
    auto eta_text = pick_opt<std::string>(fl.eta, cfg, "eta");
    bool needs_eta = c.theorem == TheoremId::T2_1 || c.theorem == TheoremId::T2_2 ||
                     c.theorem == TheoremId::T2_4 || c.theorem == TheoremId::T2_5 ||
                     c.theorem == TheoremId::REMARK_C_VARIANTS;
    if (eta_text)
        c.eta = builtin_eta(*eta_text);
    else if (needs_eta)
        c.eta = builtin_eta("linear");
    if (need_alpha && c.theorem != TheoremId::HH_CLASSICAL)
        c.alpha = pick<double>(fl.alpha, cfg, "alpha", std::nullopt, "--alpha");
    auto p = pick_opt<double>(fl.p, cfg, "p");
    auto q = pick_opt<double>(fl.q, cfg, "q");
    bool needs_pq = c.theorem == TheoremId::T1_4 || c.theorem == TheoremId::T2_4;
    if (needs_pq) {
        if (p && q)
            c.exponents = ExponentPair(*p, *q);
        else if (p)
            c.exponents = ExponentPair::conjugate(*p);
        else if (q)
            c.exponents = ExponentPair::conjugate(*q);
        else
            throw UsageError("this theorem needs conjugate exponents (--p and/or --q)");
    } else if (c.theorem == TheoremId::REMARK_C_VARIANTS && p) {
        c.exponents = q ? ExponentPair(*p, *q) : ExponentPair::conjugate(*p);
    } else if (q) {
        c.q_power = *q;
    }
    bool needs_q = c.theorem == TheoremId::T1_5 || c.theorem == TheoremId::T2_5;
    if (needs_q && !c.q_power) throw UsageError("this theorem needs --q >= 1");
    c.tol = pick<double>(fl.tol, cfg, "tol", 1e-9, "tol");
    c.quad_cfg = resolve_quad(fl, cfg);
    c.plan = resolve_plan(fl, cfg, threads);
    return c;
}

inline json case_config_json(const char* command, const InequalityCase& c) {
    json config{{"command", command}, {"theorem", to_string(c.theorem)}, {"f", c.f_text},
                {"a", c.a},           {"b", c.b},                        {"tol", c.tol}};
    if (c.theorem != TheoremId::HH_CLASSICAL) config["alpha"] = c.alpha;
    if (c.eta) config["eta"] = c.eta->label;
    if (c.exponents) {
        config["p"] = c.exponents->p();
        config["q"] = c.exponents->q();
    }
    if (c.q_power) config["q"] = *c.q_power;
    echo_quad(config, c.quad_cfg);
    echo_plan(config, c.plan);
    return config;
}

inline int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Holds: return 0;
        case Verdict::Violated: return 1;
        case Verdict::Inconclusive: return 3;
    }
    return 2;
}

inline Emitted run_verify(const Flags& fl, const json& cfg, int threads) {
    validate_keys(cfg, {"command", "theorem", "f", "a", "b", "eta", "alpha", "p", "q", "tol",
                        "nodes", "max_panels", "abs_tol", "rel_tol", "quad_method", "grid_points",
                        "random_samples", "seed", "out", "format"});
    InequalityCase c = resolve_case(fl, cfg, threads);
    VerificationResult res = verify_case(c);

    Emitted e;
    json config = case_config_json("verify", c);
    json result = to_json(res);
    result["inputs"] = config;
    result["inputs"].erase("command");
    e.report = json{{"command", "verify"}, {"config", config}, {"report", result}};
    std::ostringstream os;
    os << to_string(c.theorem) << ": " << to_string(res.verdict) << "  lhs="
       << fmt_shortest(res.lhs) << " rhs=" << fmt_shortest(res.rhs)
       << " margin=" << fmt_shortest(res.margin) << "\n";
    if (res.stages.size() > 1)
        for (const auto& s : res.stages)
            os << "  stage " << s.name << ": margin " << fmt_shortest(s.margin) << "\n";
    for (const auto& h : res.hypotheses) {
        os << "  hypothesis " << h.label << ": " << to_string(h.status)
           << " (max violation " << fmt_shortest(h.max_violation) << ")\n";
        if (h.witness)
            os << "    witness: x=" << fmt_shortest(h.witness->x) << " y="
               << fmt_shortest(h.witness->y) << " t=" << fmt_shortest(h.witness->t)
               << " lhs=" << fmt_shortest(h.witness->lhs) << " rhs="
               << fmt_shortest(h.witness->rhs) << "\n";
    }
    for (const auto& n : res.notes) os << "  " << n << "\n";
    e.human = os.str();
    e.csv = verify_csv(res, c.theorem == TheoremId::HH_CLASSICAL ? 1.0 : c.alpha);
    e.exit_code = verdict_exit(res.verdict);
    return e;
}

// ---------------------------------------------------------------------------
// certify

inline Emitted run_certify(const Flags& fl, const json& cfg, int threads) {
    validate_keys(cfg, {"command", "property", "f", "eta", "a", "b", "lo", "hi", "tol",
                        "grid_points", "random_samples", "seed", "out", "format"});
    std::string property =
        pick<std::string>(fl.property, cfg, "property", std::nullopt, "--property NAME");
    SamplingPlan plan = resolve_plan(fl, cfg, threads);
    plan.tolerance = pick_opt<double>(fl.tol, cfg, "tol");

    json config{{"command", "certify"}, {"property", property}};
    echo_plan(config, plan);
    if (plan.tolerance) config["tol"] = *plan.tolerance;

    CertReport rep;
    if (property == "condition-c" || property == "invex-set" || property == "interpolation") {
        std::string eta_text = pick<std::string>(fl.eta, cfg, "eta", std::nullopt, "--eta EXPR");
        EtaMap eta = builtin_eta(eta_text);
        double lo = pick<double>(fl.lo, cfg, "lo", eta.domain.lo, "lo");
        double hi = pick<double>(fl.hi, cfg, "hi", eta.domain.hi, "hi");
        if (!(hi > lo)) throw UsageError("requires lo < hi");
        Interval A{lo, hi, true};
        config["eta"] = eta_text;
        config["lo"] = lo;
        config["hi"] = hi;
        if (property == "condition-c")
            rep = check_condition_c(eta, A, plan);
        else if (property == "invex-set")
            rep = check_invex_set(A, eta, plan);
        else
            rep = check_interpolation_identity(eta, A, plan);
    } else if (property == "quasiconvex" || property == "preinvex" ||
               property == "prequasiinvex") {
        std::string f_text = pick<std::string>(fl.f, cfg, "f", std::nullopt, "--f EXPR");
        ExprPtr f = parse(f_text);
        config["f"] = f_text;
        if (property == "quasiconvex") {
            double a = pick<double>(fl.a, cfg, "a", std::nullopt, "--a");
            double b = pick<double>(fl.b, cfg, "b", std::nullopt, "--b");
            if (!(b > a)) throw UsageError("requires a < b");
            config["a"] = a;
            config["b"] = b;
            rep = certify_quasiconvex(f, a, b, plan);
        } else {
            std::string eta_text =
                pick<std::string>(fl.eta, cfg, "eta", std::string("linear"), "eta");
            EtaMap eta = builtin_eta(eta_text);
            double lo = pick<double>(fl.lo, cfg, "lo", eta.domain.lo, "lo");
            double hi = pick<double>(fl.hi, cfg, "hi", eta.domain.hi, "hi");
            if (!(hi > lo)) throw UsageError("requires lo < hi");
            Interval A{lo, hi, true};
            config["eta"] = eta_text;
            config["lo"] = lo;
            config["hi"] = hi;
            rep = property == "preinvex" ? certify_preinvex(f, eta, A, plan)
                                         : certify_prequasiinvex(f, eta, A, plan);
        }
    } else {
        throw UsageError("unknown property \"" + property + "\"");
    }

    Emitted e;
    e.report = json{{"command", "certify"}, {"config", config}, {"report", to_json(rep)}};
    std::ostringstream os;
    os << property << ": " << to_string(rep.status) << "  max violation "
       << fmt_shortest(rep.max_violation) << " over " << rep.samples_used << " samples\n";
    if (rep.witness)
        os << "  witness: x=" << fmt_shortest(rep.witness->x) << " y="
           << fmt_shortest(rep.witness->y) << " t=" << fmt_shortest(rep.witness->t)
           << (rep.witness->t2 ? " t2=" + fmt_shortest(*rep.witness->t2) : "")
           << " lhs=" << fmt_shortest(rep.witness->lhs)
           << " rhs=" << fmt_shortest(rep.witness->rhs) << "\n";
    for (const auto& n : rep.notes) os << "  " << n << "\n";
    e.human = os.str();
    e.csv = cert_csv(rep);
    e.exit_code = rep.status == CertStatus::CertifiedOnSamples ? 0
                : rep.status == CertStatus::Violated           ? 1
                                                               : 2;
    return e;
}

// ---------------------------------------------------------------------------
// scan

inline Emitted run_scan(const Flags& fl, const json& cfg, int threads) {
    validate_keys(cfg, {"command", "theorem", "f", "a", "b", "eta", "alpha_grid", "p", "q", "tol",
                        "nodes", "max_panels", "abs_tol", "rel_tol", "quad_method", "grid_points",
                        "random_samples", "seed", "out", "format"});
    ScanPlan plan;
    plan.base = resolve_case(fl, cfg, threads, /*need_alpha=*/false);
    if (cfg.contains("alpha_grid") && cfg.at("alpha_grid").is_array() && !fl.alpha_grid) {
        plan.alpha_grid = cfg.at("alpha_grid").get<std::vector<double>>();
    } else {
        std::string grid = pick<std::string>(fl.alpha_grid, cfg, "alpha_grid", std::nullopt,
                                             "--alpha-grid SPEC");
        plan.alpha_grid = detail::parse_alpha_grid(grid);
    }
    std::vector<ScanRow> rows = alpha_scan(plan, threads);

    json config = case_config_json("scan", plan.base);
    config.erase("alpha");
    config["alpha_grid"] = plan.alpha_grid;

    json jrows = json::array();
    for (const auto& r : rows) jrows.push_back(to_json(r));

    Emitted e;
    e.report = json{{"command", "scan"}, {"config", config}, {"report", json{{"rows", jrows}}}};
    std::ostringstream os;
    os << "alpha scan over " << rows.size() << " orders (" << to_string(plan.base.theorem)
       << ", f = " << plan.base.f_text << ")\n";
    for (const auto& r : rows) {
        os << "  alpha=" << fmt_shortest(r.alpha) << ": ";
        if (r.failed)
            os << "failed (" << r.error << ")\n";
        else
            os << to_string(r.verdict) << " lhs=" << fmt_shortest(r.lhs)
               << " rhs=" << fmt_shortest(r.rhs) << " margin=" << fmt_shortest(r.margin)
               << " ratio=" << (r.ratio ? fmt_shortest(*r.ratio) : "n/a") << "\n";
    }
    e.human = os.str();
    e.csv = scan_csv(rows);

    bool any_violated = false, any_failed = false, any_inconclusive = false;
    for (const auto& r : rows) {
        any_failed |= r.failed;
        if (!r.failed) {
            any_violated |= r.verdict == Verdict::Violated;
            any_inconclusive |= r.verdict == Verdict::Inconclusive;
        }
    }
    e.exit_code = any_violated ? 1 : any_failed ? 2 : any_inconclusive ? 3 : 0;
    return e;
}

// ---------------------------------------------------------------------------
// search

inline Emitted run_search(const Flags& fl, const json& cfg, int threads) {
    validate_keys(cfg, {"command", "theorem", "f", "a", "b", "eta", "alpha", "p", "q", "tol",
                        "family", "budget", "nodes", "max_panels", "abs_tol", "rel_tol",
                        "quad_method", "grid_points", "random_samples", "seed", "out", "format"});
    Flags fixed_flags = fl;
    if (!fixed_flags.f && !cfg.contains("f")) fixed_flags.f = std::string("x");  // template fills f
    InequalityCase fixed = resolve_case(fixed_flags, cfg, threads);

    FamilyDescriptor family;
    if (cfg.contains("family") && cfg.at("family").is_object() && !fl.family) {
        family = detail::parse_family(cfg.at("family").dump());
    } else {
        std::string fam =
            pick<std::string>(fl.family, cfg, "family", std::nullopt, "--family DESC");
        family = detail::parse_family(fam);
    }
    SearchBudget budget;
    budget.max_evals = pick<int>(fl.budget, cfg, "budget", 200, "budget");
    budget.seed = fixed.plan.seed;

    SearchOutcome outcome = counterexample_search(fixed, family, budget);

    json config = case_config_json("search", fixed);
    config.erase("f");
    config["family"] = detail::family_to_json(family);
    config["budget"] = budget.max_evals;

    Emitted e;
    e.report = json{{"command", "search"}, {"config", config}, {"report", to_json(outcome)}};
    std::ostringstream os;
    if (outcome.found) {
        os << "counterexample found after " << outcome.evals_used << " evaluations:\n  f = "
           << outcome.witness_case->f_text << "\n  margin = "
           << fmt_shortest(outcome.witness_result->margin) << "\n";
        for (const auto& [name, value] : outcome.params)
            os << "  " << name << " = " << fmt_shortest(value) << "\n";
    } else {
        os << "no counterexample within budget (" << outcome.evals_used << " evaluations)\n";
    }
    e.human = os.str();
    e.csv = search_csv(outcome);
    e.exit_code = outcome.found ? 1 : 0;
    return e;
}

// ---------------------------------------------------------------------------
// report (re-execute an emitted JSON report)

inline Emitted dispatch_config(const json& config, int threads);

inline Emitted run_report(const Flags& fl, std::ostream& out) {
    if (!fl.in) throw UsageError("missing required --in FILE");
    json stored = load_config_file(*fl.in);
    for (const char* key : {"command", "config", "report"})
        if (!stored.contains(key))
            throw UsageError(std::string("report file lacks field \"") + key + "\"");
    Emitted redo = dispatch_config(stored.at("config"), env_thread_budget());
    if (fl.check) {
        bool match = redo.report.at("report") == stored.at("report");
        Emitted e;
        e.human = match ? "report verified: re-execution reproduces stored results\n"
                        : "MISMATCH: re-execution differs from stored results\n";
        e.report = redo.report;
        e.exit_code = match ? 0 : 2;
        return e;
    }
    (void)out;
    return redo;
}

inline Emitted dispatch_config(const json& config, int threads) {
    if (!config.is_object() || !config.contains("command"))
        throw UsageError("config must name a command");
    std::string command = config.at("command").get<std::string>();
    Flags none;
    if (command == "integrate") return run_integrate(none, config);
    if (command == "verify") return run_verify(none, config, threads);
    if (command == "certify") return run_certify(none, config, threads);
    if (command == "scan") return run_scan(none, config, threads);
    if (command == "search") return run_search(none, config, threads);
    throw UsageError("unknown command \"" + command + "\" in config");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Entry point

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numeric verification of Hermite-Hadamard-type inequalities via "
                 "Riemann-Liouville fractional integrals"};
    app.require_subcommand(1);

    detail::Flags fl;
    auto add_common = [&](CLI::App* cmd, bool with_quad, bool with_plan) {
        cmd->add_option("--config", fl.config_path, "JSON config file (flags win)");
        cmd->add_option("--out", fl.out, "output report path");
        cmd->add_option("--format", fl.format, "json|csv");
        if (with_quad) {
            cmd->add_option("--nodes", fl.nodes, "Gauss nodes per panel");
            cmd->add_option("--max-panels", fl.max_panels, "adaptive panel limit");
            cmd->add_option("--abs-tol", fl.abs_tol, "quadrature absolute tolerance");
            cmd->add_option("--rel-tol", fl.rel_tol, "quadrature relative tolerance");
            cmd->add_option("--quad-method", fl.quad_method,
                            "desingularized-gauss|adaptive-bisection");
        }
        if (with_plan) {
            cmd->add_option("--grid-points", fl.grid_points, "certification grid per axis");
            cmd->add_option("--samples", fl.random_samples, "certification random samples");
            cmd->add_option("--seed", fl.seed, "random seed");
        }
    };

    CLI::App* integrate = app.add_subcommand("integrate", "compute a fractional integral");
    integrate->add_option("--f", fl.f, "integrand expression");
    integrate->add_option("--a", fl.a, "left end of the integration interval");
    integrate->add_option("--x", fl.x, "right end of the integration interval");
    integrate->add_option("--alpha", fl.alpha, "fractional order (> 0)");
    integrate->add_option("--side", fl.side, "left|right");
    integrate->add_option("--tol", fl.tol, "absolute tolerance (sets rel-tol to 0)");
    add_common(integrate, true, false);

    CLI::App* verify = app.add_subcommand("verify", "verify one inequality instance");
    verify->add_option("--theorem", fl.theorem, "theorem id");
    verify->add_option("--f", fl.f, "function expression");
    verify->add_option("--a", fl.a, "left endpoint");
    verify->add_option("--b", fl.b, "right endpoint");
    verify->add_option("--eta", fl.eta, "eta map (name or expression in y, x)");
    verify->add_option("--alpha", fl.alpha, "fractional order");
    verify->add_option("--p", fl.p, "Hoelder exponent p");
    verify->add_option("--q", fl.q, "exponent q");
    verify->add_option("--tol", fl.tol, "margin tolerance");
    add_common(verify, true, true);

    CLI::App* certify = app.add_subcommand("certify", "certify a hypothesis on samples");
    certify->add_option("--property", fl.property,
                        "quasiconvex|preinvex|prequasiinvex|condition-c|invex-set|interpolation");
    certify->add_option("--f", fl.f, "function expression");
    certify->add_option("--eta", fl.eta, "eta map");
    certify->add_option("--a", fl.a, "left endpoint (quasiconvex)");
    certify->add_option("--b", fl.b, "right endpoint (quasiconvex)");
    certify->add_option("--lo", fl.lo, "domain lower bound");
    certify->add_option("--hi", fl.hi, "domain upper bound");
    certify->add_option("--tol", fl.tol, "certification tolerance");
    add_common(certify, false, true);

    CLI::App* scan = app.add_subcommand("scan", "alpha scan of one inequality");
    scan->add_option("--theorem", fl.theorem, "theorem id");
    scan->add_option("--f", fl.f, "function expression");
    scan->add_option("--a", fl.a, "left endpoint");
    scan->add_option("--b", fl.b, "right endpoint");
    scan->add_option("--eta", fl.eta, "eta map");
    scan->add_option("--alpha-grid", fl.alpha_grid, "lo:hi:step or comma list");
    scan->add_option("--p", fl.p, "Hoelder exponent p");
    scan->add_option("--q", fl.q, "exponent q");
    scan->add_option("--tol", fl.tol, "margin tolerance");
    add_common(scan, true, true);

    CLI::App* search = app.add_subcommand("search", "random counterexample search");
    search->add_option("--theorem", fl.theorem, "theorem id");
    search->add_option("--family", fl.family, "family name or inline JSON descriptor");
    search->add_option("--budget", fl.budget, "max sampling evaluations");
    search->add_option("--a", fl.a, "left endpoint");
    search->add_option("--b", fl.b, "right endpoint");
    search->add_option("--eta", fl.eta, "eta map");
    search->add_option("--alpha", fl.alpha, "fractional order");
    search->add_option("--p", fl.p, "Hoelder exponent p");
    search->add_option("--q", fl.q, "exponent q");
    search->add_option("--tol", fl.tol, "margin tolerance");
    add_common(search, true, true);

    CLI::App* report = app.add_subcommand("report", "re-execute an emitted JSON report");
    report->add_option("--in", fl.in, "report file to re-execute");
    report->add_flag("--check", fl.check, "compare stored and recomputed results");
    report->add_option("--out", fl.out, "output report path");
    report->add_option("--format", fl.format, "json|csv");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    int threads = env_thread_budget();
    try {
        json cfg = json::object();
        if (fl.config_path) cfg = detail::load_config_file(*fl.config_path);
        detail::Emitted result;
        if (integrate->parsed())
            result = detail::run_integrate(fl, cfg);
        else if (verify->parsed())
            result = detail::run_verify(fl, cfg, threads);
        else if (certify->parsed())
            result = detail::run_certify(fl, cfg, threads);
        else if (scan->parsed())
            result = detail::run_scan(fl, cfg, threads);
        else if (search->parsed())
            result = detail::run_search(fl, cfg, threads);
        else
            result = detail::run_report(fl, out);
        detail::emit(result, detail::resolve_output(fl, cfg), out);
        return result.exit_code;
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

inline int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace fracineq::cli
