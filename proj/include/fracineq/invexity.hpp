#pragma once

// Eta maps, Condition C, and sample-based certification of quasi-convexity,
// preinvexity and prequasiinvexity. Certification is explicitly "on
// samples": a tensor grid plus seeded random triples, never a proof. A
// violated report carries a concrete witness, locally sharpened by
// coordinate-wise golden-section ascent of (lhs - rhs).

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracineq/common.hpp"
#include "fracineq/expr.hpp"

namespace fracineq {

// ---------------------------------------------------------------------------
// EtaMap

/// Bivariate invexity map eta(y, x) with a default domain and a label.
struct EtaMap {
    ExprPtr expr;
    Interval domain{-10.0, 10.0, true};
    std::string label;

    double operator()(double y, double x) const { return eval2(*expr, y, x); }
    std::string text() const { return to_string(*expr); }
};

inline EtaMap make_eta(std::string_view text, Interval domain, std::string label = "") {
    EtaMap m;
    m.expr = parse_eta(text);
    m.domain = domain;
    m.label = label.empty() ? std::string(text) : std::move(label);
    return m;
}

/// Built-in registry: "linear" (y-x), "zero", "scaled(k)" (k*(y-x)),
/// "shifted-linear" (y-x-1/4 on (0,1); deliberately fails Condition C).
/// Anything else is parsed as a user eta expression.
inline EtaMap builtin_eta(const std::string& name) {
    if (name == "linear") return make_eta("y - x", {-10.0, 10.0, true}, "linear");
    if (name == "zero") return make_eta("0", {-10.0, 10.0, true}, "zero");
    if (name == "shifted-linear")
        return make_eta("y - x - 0.25", {0.0, 1.0, true}, "shifted-linear");
    if (name.rfind("scaled(", 0) == 0 && name.back() == ')') {
        std::string k = name.substr(7, name.size() - 8);
        return make_eta(k + " * (y - x)", {-10.0, 10.0, true}, name);
    }
    return make_eta(name, {-10.0, 10.0, true});
}

// ---------------------------------------------------------------------------
// Certification reports

enum class CertStatus { CertifiedOnSamples, Violated, Failed };

inline const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::CertifiedOnSamples: return "certified-on-samples";
        case CertStatus::Violated: return "violated";
        case CertStatus::Failed: return "failed";
    }
    return "?";
}

struct Witness {
    double x = 0.0, y = 0.0, t = 0.0;
    std::optional<double> t2;  // second parameter for the interpolation check
    double lhs = 0.0, rhs = 0.0;
};

struct CertReport {
    std::string label;
    CertStatus status = CertStatus::Failed;
    std::optional<Witness> witness;
    long samples_used = 0;
    double max_violation = 0.0;  // max over samples of lhs - rhs
    double tolerance = 0.0;
    std::vector<std::string> notes;

    bool certified() const { return status == CertStatus::CertifiedOnSamples; }
};

/// Sampling plan shared by every certifier: tensor grid (points per axis)
/// plus seeded uniform random tuples. Deterministic for a fixed seed no
/// matter how many threads evaluate the samples.
struct SamplingPlan {
    int grid_points = 33;
    int random_samples = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> tolerance;  // per-check default when unset
    int refine_steps = 20;
    int threads = 1;
};

namespace detail {

// (lhs, rhs) of the certified inequality at a sample point.
using PairFn = std::function<std::pair<double, double>(const std::vector<double>&)>;

inline double golden_max(const std::function<double(double)>& g, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = g(c), fd = g(d);
    double best_x = fc >= fd ? c : d;
    double best_v = std::max(fc, fd);
    for (int i = 0; i < 24; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d);
        }
        double x = fc >= fd ? c : d;
        double v = std::max(fc, fd);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    return best_x;
}

struct Engine {
    std::string label;
    std::vector<Interval> axes;
    PairFn fn;
    double default_tol;

    CertReport run(const SamplingPlan& plan) const {
        const std::size_t k = axes.size();
        const std::size_t g = static_cast<std::size_t>(std::max(2, plan.grid_points));
        std::size_t n_grid = 1;
        for (std::size_t i = 0; i < k; ++i) n_grid *= g;
        const std::size_t n_rand = static_cast<std::size_t>(std::max(0, plan.random_samples));
        const std::size_t n = n_grid + n_rand;

        std::vector<std::vector<double>> axis_pts(k);
        for (std::size_t i = 0; i < k; ++i) axis_pts[i] = sample_axis(axes[i], static_cast<int>(g));

        auto point_at = [&](std::size_t idx) {
            std::vector<double> p(k);
            if (idx < n_grid) {
                std::size_t rem = idx;
                for (std::size_t i = 0; i < k; ++i) {
                    p[i] = axis_pts[i][rem % g];
                    rem /= g;
                }
            } else {
                SplitMix64 rng(plan.seed, idx - n_grid);
                for (std::size_t i = 0; i < k; ++i) {
                    double inset = axes[i].open ? 1e-9 * axes[i].width() : 0.0;
                    p[i] = rng.uniform(axes[i].lo + inset, axes[i].hi - inset);
                }
            }
            return p;
        };

        constexpr double kFailed = -std::numeric_limits<double>::infinity();
        std::vector<double> violation(n);
        std::vector<std::uint8_t> failed(n, 0);
        parallel_for(n, plan.threads, [&](std::size_t i) {
            try {
                auto [lhs, rhs] = fn(point_at(i));
                violation[i] = lhs - rhs;
            } catch (const std::exception&) {
                violation[i] = kFailed;
                failed[i] = 1;
            }
        });

        CertReport rep;
        rep.label = label;
        rep.samples_used = static_cast<long>(n);
        rep.tolerance = plan.tolerance.value_or(default_tol);

        for (std::size_t i = 0; i < n; ++i) {
            if (failed[i]) {
                // regenerate the message for the first failing sample
                rep.status = CertStatus::Failed;
                try {
                    (void)fn(point_at(i));
                } catch (const std::exception& ex) {
                    rep.notes.push_back(std::string("evaluation failed: ") + ex.what());
                }
                return rep;
            }
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (violation[i] > violation[best]) best = i;
        rep.max_violation = violation[best];

        if (rep.max_violation <= rep.tolerance) {
            rep.status = CertStatus::CertifiedOnSamples;
            return rep;
        }

        // sharpen the witness: coordinate-wise golden-section ascent in a
        // shrinking bracket around the best sample
        std::vector<double> pt = point_at(best);
        double best_v = rep.max_violation;
        auto viol_at = [&](const std::vector<double>& q) {
            try {
                auto [lhs, rhs] = fn(q);
                return lhs - rhs;
            } catch (const std::exception&) {
                return kFailed;
            }
        };
        for (int step = 0; step < plan.refine_steps; ++step) {
            std::size_t j = static_cast<std::size_t>(step) % k;
            double inset = axes[j].open ? 1e-9 * axes[j].width() : 0.0;
            double radius = axes[j].width() * std::pow(0.5, 1 + step / static_cast<int>(k));
            double lo = std::max(axes[j].lo + inset, pt[j] - radius);
            double hi = std::min(axes[j].hi - inset, pt[j] + radius);
            if (!(hi > lo)) continue;
            std::vector<double> q = pt;
            double cand = golden_max(
                [&](double c) {
                    q[j] = c;
                    return viol_at(q);
                },
                lo, hi);
            q[j] = cand;
            double v = viol_at(q);
            if (v > best_v) {
                best_v = v;
                pt = q;
            }
        }

        rep.status = CertStatus::Violated;
        rep.max_violation = best_v;
        Witness w;
        w.x = pt[0];
        if (k > 1) w.y = pt[1];
        if (k > 2) w.t = pt[2];
        if (k > 3) w.t2 = pt[3];
        auto [lhs, rhs] = fn(pt);
        w.lhs = lhs;
        w.rhs = rhs;
        rep.witness = w;
        return rep;
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Checks on eta

/// x + t*eta(y,x) stays inside A for all sampled (x, y, t).
inline CertReport check_invex_set(const Interval& A, const EtaMap& eta,
                                  const SamplingPlan& plan = {}) {
    detail::Engine eng;
    eng.label = "invex-set(" + eta.label + ")";
    eng.axes = {A, A, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-9;
    eng.fn = [&eta, A](const std::vector<double>& p) {
        double z = p[0] + p[2] * eta(p[1], p[0]);
        return std::pair<double, double>(A.violation(z), 0.0);
    };
    return eng.run(plan);
}

/// Mohan-Neogy Condition C residuals:
///   eta(y, y + t*eta(x,y)) + t*eta(x,y)        and
///   eta(x, y + t*eta(x,y)) - (1-t)*eta(x,y).
inline CertReport check_condition_c(const EtaMap& eta, const Interval& A,
                                    const SamplingPlan& plan = {}) {
    detail::Engine eng;
    eng.label = "condition-c(" + eta.label + ")";
    eng.axes = {A, A, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-10;
    eng.fn = [&eta](const std::vector<double>& p) {
        double x = p[0], y = p[1], t = p[2];
        double e = eta(x, y);
        double z = y + t * e;
        double r1 = eta(y, z) + t * e;
        double r2 = eta(x, z) - (1.0 - t) * e;
        return std::pair<double, double>(std::max(std::abs(r1), std::abs(r2)), 0.0);
    };
    CertReport rep = eng.run(plan);
    CertReport inv = check_invex_set(A, eta, plan);
    if (!inv.certified())
        rep.notes.push_back("warning: invex-set check did not certify on (A, eta)");
    return rep;
}

/// Interpolation identity implied by Condition C:
///   eta(y + t2*eta(x,y), y + t1*eta(x,y)) = (t2 - t1) * eta(x,y).
inline CertReport check_interpolation_identity(const EtaMap& eta, const Interval& A,
                                               const SamplingPlan& plan = {}) {
    detail::Engine eng;
    eng.label = "interpolation(" + eta.label + ")";
    eng.axes = {A, A, Interval{0.0, 1.0, false}, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-10;
    eng.fn = [&eta](const std::vector<double>& p) {
        double x = p[0], y = p[1], t1 = p[2], t2 = p[3];
        double e = eta(x, y);
        double r = eta(y + t2 * e, y + t1 * e) - (t2 - t1) * e;
        return std::pair<double, double>(std::abs(r), 0.0);
    };
    return eng.run(plan);
}

// ---------------------------------------------------------------------------
// Function-class certifiers. Each takes the function as a callable so that
// derived quantities (|f'|, |f'|^q via dual evaluation) certify through the
// same machinery; Expr overloads are provided for convenience.

using RealFn = std::function<double(double)>;

/// f(t x + (1-t) y) <= max{f(x), f(y)} on [a, b].
inline CertReport certify_quasiconvex(const RealFn& f, double a, double b,
                                      const SamplingPlan& plan = {}, std::string label = "quasiconvex") {
    detail::Engine eng;
    eng.label = std::move(label);
    Interval ab{a, b, false};
    eng.axes = {ab, ab, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-9;
    eng.fn = [&f](const std::vector<double>& p) {
        double x = p[0], y = p[1], t = p[2];
        double lhs = f(t * x + (1.0 - t) * y);
        double rhs = std::max(f(x), f(y));
        return std::pair<double, double>(lhs, rhs);
    };
    return eng.run(plan);
}

/// f(x + t*eta(y,x)) <= (1-t) f(x) + t f(y) on the invex set A.
inline CertReport certify_preinvex(const RealFn& f, const EtaMap& eta, const Interval& A,
                                   const SamplingPlan& plan = {}, std::string label = "preinvex") {
    detail::Engine eng;
    eng.label = std::move(label);
    eng.axes = {A, A, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-9;
    eng.fn = [&f, &eta](const std::vector<double>& p) {
        double x = p[0], y = p[1], t = p[2];
        double lhs = f(x + t * eta(y, x));
        double rhs = (1.0 - t) * f(x) + t * f(y);
        return std::pair<double, double>(lhs, rhs);
    };
    return eng.run(plan);
}

/// f(x + t*eta(y,x)) <= max{f(x), f(y)} on the invex set A.
inline CertReport certify_prequasiinvex(const RealFn& f, const EtaMap& eta, const Interval& A,
                                        const SamplingPlan& plan = {},
                                        std::string label = "prequasiinvex") {
    detail::Engine eng;
    eng.label = std::move(label);
    eng.axes = {A, A, Interval{0.0, 1.0, false}};
    eng.default_tol = 1e-9;
    eng.fn = [&f, &eta](const std::vector<double>& p) {
        double x = p[0], y = p[1], t = p[2];
        double lhs = f(x + t * eta(y, x));
        double rhs = std::max(f(x), f(y));
        return std::pair<double, double>(lhs, rhs);
    };
    return eng.run(plan);
}

// Expr overloads.

inline RealFn expr_fn(const ExprPtr& e) {
    return [e](double x) { return eval(*e, x); };
}

/// |f'| as a callable; a kink at the sample point is an evaluation failure.
inline RealFn abs_deriv_fn(const ExprPtr& e) {
    return [e](double x) {
        DualValue d = eval_dual(*e, x);
        if (d.kink) throw KinkError("derivative requested at kink x=" + fmt_shortest(x));
        return std::abs(d.deriv);
    };
}

/// |f'|^q as a callable.
inline RealFn abs_deriv_pow_fn(const ExprPtr& e, double q) {
    return [e, q](double x) {
        DualValue d = eval_dual(*e, x);
        if (d.kink) throw KinkError("derivative requested at kink x=" + fmt_shortest(x));
        return std::pow(std::abs(d.deriv), q);
    };
}

inline CertReport certify_quasiconvex(const ExprPtr& f, double a, double b,
                                      const SamplingPlan& plan = {}) {
    return certify_quasiconvex(expr_fn(f), a, b, plan);
}
inline CertReport certify_preinvex(const ExprPtr& f, const EtaMap& eta, const Interval& A,
                                   const SamplingPlan& plan = {}) {
    return certify_preinvex(expr_fn(f), eta, A, plan);
}
inline CertReport certify_prequasiinvex(const ExprPtr& f, const EtaMap& eta, const Interval& A,
                                        const SamplingPlan& plan = {}) {
    return certify_prequasiinvex(expr_fn(f), eta, A, plan);
}

} // namespace fracineq
