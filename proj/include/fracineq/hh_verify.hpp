#pragma once

// Verifiers for the Hermite-Hadamard-type inequalities and the trapezoid
// identity, classical and fractional, with and without an invexity map.
// Every verifier computes both sides numerically, certifies the theorem's
// hypotheses on samples, and reports margin = rhs - lhs. A verdict is never
// taken from unconverged quadrature: if any error estimate is not an order
// of magnitude below the decision tolerance the result is "inconclusive".

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fracineq/battery.hpp"
#include "fracineq/common.hpp"
#include "fracineq/expr.hpp"
#include "fracineq/fracint.hpp"
#include "fracineq/invexity.hpp"
#include "fracineq/quadrature.hpp"

namespace fracineq {

// ---------------------------------------------------------------------------
// Types

/// Hoelder conjugate exponents: p, q > 1 with 1/p + 1/q = 1.
class ExponentPair {
public:
    ExponentPair(double p, double q) : p_(p), q_(q) {
        if (!(p > 1.0) || !(q > 1.0))
            throw std::invalid_argument("exponents must both exceed 1");
        if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
            throw std::invalid_argument("exponents must satisfy 1/p + 1/q = 1");
    }
    static ExponentPair conjugate(double p) { return ExponentPair(p, p / (p - 1.0)); }

    double p() const { return p_; }
    double q() const { return q_; }

private:
    double p_, q_;
};

enum class TheoremId {
    HH_CLASSICAL,
    T1_2,
    T1_3,
    T1_4,
    T1_5,
    T2_1,
    T2_2,
    T2_4,
    T2_5,
    LEMMA_1_4,
    REMARK_C_VARIANTS,
};

inline const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::HH_CLASSICAL: return "HH_CLASSICAL";
        case TheoremId::T1_2: return "T1_2";
        case TheoremId::T1_3: return "T1_3";
        case TheoremId::T1_4: return "T1_4";
        case TheoremId::T1_5: return "T1_5";
        case TheoremId::T2_1: return "T2_1";
        case TheoremId::T2_2: return "T2_2";
        case TheoremId::T2_4: return "T2_4";
        case TheoremId::T2_5: return "T2_5";
        case TheoremId::LEMMA_1_4: return "LEMMA_1_4";
        case TheoremId::REMARK_C_VARIANTS: return "REMARK_C_VARIANTS";
    }
    return "?";
}

inline std::optional<TheoremId> theorem_from_string(const std::string& s) {
    static const std::pair<const char*, TheoremId> table[] = {
        {"HH_CLASSICAL", TheoremId::HH_CLASSICAL},
        {"T1_2", TheoremId::T1_2},
        {"T1_3", TheoremId::T1_3},
        {"T1_4", TheoremId::T1_4},
        {"T1_5", TheoremId::T1_5},
        {"T2_1", TheoremId::T2_1},
        {"T2_2", TheoremId::T2_2},
        {"T2_4", TheoremId::T2_4},
        {"T2_5", TheoremId::T2_5},
        {"LEMMA_1_4", TheoremId::LEMMA_1_4},
        {"REMARK_C_VARIANTS", TheoremId::REMARK_C_VARIANTS},
    };
    for (const auto& [name, id] : table)
        if (s == name) return id;
    return std::nullopt;
}

/// One theorem instance: function, interval or (eta, endpoints), order,
/// exponents and tolerances.
struct InequalityCase {
    TheoremId theorem = TheoremId::T1_2;
    ExprPtr f;
    std::string f_text;
    double a = 0.0;
    double b = 1.0;
    std::optional<EtaMap> eta;            // absent => classical (eta = b - a)
    double alpha = 1.0;                   // ignored by HH_CLASSICAL
    std::optional<ExponentPair> exponents;
    std::optional<double> q_power;        // q >= 1 theorems
    QuadratureConfig quad_cfg;
    double tol = 1e-9;
    SamplingPlan plan;
};

enum class Verdict { Holds, Violated, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct StageResult {
    std::string name;
    double lhs, rhs, margin;
};

struct QuadDiag {
    std::string name;
    double error_estimate;
    int panels;
    bool converged;
};

struct VerificationResult {
    TheoremId theorem = TheoremId::T1_2;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs (binding stage)
    Verdict verdict = Verdict::Inconclusive;
    double tol = 1e-9;
    std::vector<StageResult> stages;
    std::vector<CertReport> hypotheses;
    std::vector<QuadDiag> quadrature;
    std::vector<std::string> notes;

    bool holds() const { return verdict == Verdict::Holds; }
    bool all_hypotheses_certified() const {
        for (const auto& h : hypotheses)
            if (!h.certified()) return false;
        return !hypotheses.empty();
    }
};

// ---------------------------------------------------------------------------
// Closed-form kernel integrals

/// Int_0^1 |t^a - (1-t)^a| dt = (2/(a+1)) (1 - 2^-a).
inline double kernel_abs_integral(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return 2.0 / (alpha + 1.0) * (1.0 - std::pow(2.0, -alpha));
}

/// Int_0^1 |1 - 2t|^(a p) dt = 1/(a p + 1).
inline double kernel_pow_integral(double alpha, double p) {
    if (!(alpha * p > -1.0)) throw std::invalid_argument("alpha*p must exceed -1");
    return 1.0 / (alpha * p + 1.0);
}

// ---------------------------------------------------------------------------
// Identity pieces

/// Trapezoid value minus the symmetric fractional mean:
///   [f(a) + f(a+eta)]/2 - frac_trapezoid_mean(f, a, eta, alpha).
/// The returned QuadResult carries the mean's quadrature diagnostics.
inline QuadResult trapezoid_defect(const Expr& f, double a, double eta_val, const FracOrder& alpha,
                                   const QuadratureConfig& cfg = {}) {
    if (!(eta_val > 0.0)) throw std::invalid_argument("trapezoid_defect requires eta > 0");
    QuadResult mean = frac_trapezoid_mean(f, a, eta_val, alpha, cfg);
    QuadResult out = mean;
    out.value = 0.5 * (eval(f, a) + eval(f, a + eta_val)) - mean.value;
    return out;
}

namespace detail {

/// |f'| at a point; kinks are a hard error here (endpoint derivatives feed
/// theorem right-hand sides).
inline double abs_deriv_at(const Expr& f, double x) {
    DualValue d = eval_dual(f, x);
    if (d.kink) throw KinkError("f is not differentiable at x=" + fmt_shortest(x));
    return std::abs(d.deriv);
}

/// Int_0^1 (t^alpha - (1-t)^alpha) f'(a + t*eta) dt, split at the kernel
/// sign change t = 1/2; kinked f aborts.
inline QuadResult weighted_deriv_integral(const Expr& f, double a, double eta_val, double alpha,
                                          const QuadratureConfig& cfg) {
    auto kinks = kink_candidates(f, a, a + eta_val);
    if (!kinks.empty())
        throw KinkError("f has a kink inside the interval at x=" + fmt_shortest(kinks.front()));
    auto integrand = [&](double t) {
        DualValue d = eval_dual(f, a + t * eta_val);
        if (d.kink) throw KinkError("f' requested at kink t=" + fmt_shortest(t));
        return (std::pow(t, alpha) - std::pow(1.0 - t, alpha)) * d.deriv;
    };
    const double half[] = {0.5};
    return integrate(integrand, 0.0, 1.0, cfg, half);
}

} // namespace detail

/// Residual of the trapezoid identity:
///   | defect - (eta/2) Int_0^1 (t^a - (1-t)^a) f'(a + t*eta) dt |.
inline double identity_residual(const Expr& f, double a, double eta_val, const FracOrder& alpha,
                                const QuadratureConfig& cfg = {}) {
    QuadResult defect = trapezoid_defect(f, a, eta_val, alpha, cfg);
    QuadResult integral = detail::weighted_deriv_integral(f, a, eta_val, alpha.value(), cfg);
    if (!defect.converged || !integral.converged)
        throw DomainError("identity residual: quadrature did not converge");
    return std::abs(defect.value - 0.5 * eta_val * integral.value);
}

// ---------------------------------------------------------------------------
// Verdict assembly

namespace detail {

/// The verdict rule needs quadrature noise an order of magnitude below the
/// decision tolerance, so verifiers request at least that much accuracy
/// from their own integrals (a looser user config is tightened, a tighter
/// one kept).
inline QuadratureConfig decision_quad(QuadratureConfig cfg, double tol) {
    cfg.abs_tol = std::min(cfg.abs_tol, tol / 20.0);
    cfg.rel_tol = std::min(cfg.rel_tol, tol / 1000.0);
    return cfg;
}

inline void push_quad(VerificationResult& r, std::string name, const QuadResult& q) {
    r.quadrature.push_back({std::move(name), q.error_estimate, q.panels_used, q.converged});
}

/// Margin-based verdict; quadrature noise must sit an order of magnitude
/// below the decision tolerance or the verdict is inconclusive.
inline void decide(VerificationResult& r) {
    double m = r.stages.empty() ? r.margin : r.stages.front().margin;
    for (const auto& s : r.stages) m = std::min(m, s.margin);
    r.margin = m;
    for (const auto& q : r.quadrature) {
        if (!q.converged || !(q.error_estimate < r.tol / 10.0)) {
            r.verdict = Verdict::Inconclusive;
            r.notes.push_back("quadrature '" + q.name + "' error estimate " +
                              fmt_shortest(q.error_estimate) + " too large for tol " +
                              fmt_shortest(r.tol));
            return;
        }
    }
    r.verdict = m >= -r.tol ? Verdict::Holds : Verdict::Violated;
}

/// Run a certification, converting exceptions into a Failed report so a
/// hypothesis failure never masks the numeric comparison.
template <class Fn>
inline CertReport guarded_cert(const std::string& label, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& ex) {
        CertReport rep;
        rep.label = label;
        rep.status = CertStatus::Failed;
        rep.notes.push_back(ex.what());
        return rep;
    }
}

/// max{|f'(a)|^q, |f'(at)|^q}^(1/q)
inline double endpoint_deriv_bound(const Expr& f, double at1, double at2, double q) {
    double m = std::max(std::pow(abs_deriv_at(f, at1), q), std::pow(abs_deriv_at(f, at2), q));
    return std::pow(m, 1.0 / q);
}

inline Interval hull(double a, double b, double c) {
    double lo = std::min(a, std::min(b, c));
    double hi = std::max(a, std::max(b, c));
    return Interval{lo, hi, true};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Classical verifiers (interval [a, b])

/// f((a+b)/2) <= mean of f <= (f(a)+f(b))/2 for convex f.
inline VerificationResult verify_hh_classical(const ExprPtr& f, double a, double b,
                                              const QuadratureConfig& cfg = {},
                                              double tol = 1e-9, const SamplingPlan& plan = {}) {
    if (!(b > a)) throw std::invalid_argument("requires a < b");
    VerificationResult r;
    r.theorem = TheoremId::HH_CLASSICAL;
    r.tol = tol;

    QuadResult mean = frac_trapezoid_mean(*f, a, b - a, FracOrder(1.0), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "classical mean", mean);
    double mid = eval(*f, 0.5 * (a + b));
    double trap = 0.5 * (eval(*f, a) + eval(*f, b));
    r.stages.push_back({"midpoint <= mean", mid, mean.value, mean.value - mid});
    r.stages.push_back({"mean <= trapezoid", mean.value, trap, trap - mean.value});
    r.lhs = mid;
    r.rhs = trap;

    EtaMap linear = builtin_eta("linear");
    r.hypotheses.push_back(detail::guarded_cert("convexity", [&] {
        return certify_preinvex(f, linear, Interval{a, b, false}, plan);
    }));
    r.hypotheses.back().label = "convexity";
    detail::decide(r);
    return r;
}

/// Fractional mean bounded by max{f(a), f(b)} for quasi-convex f.
inline VerificationResult verify_thm_1_2(const ExprPtr& f, double a, double b, double alpha,
                                         const QuadratureConfig& cfg = {}, double tol = 1e-9,
                                         const SamplingPlan& plan = {}) {
    if (!(b > a)) throw std::invalid_argument("requires a < b");
    VerificationResult r;
    r.theorem = TheoremId::T1_2;
    r.tol = tol;

    QuadResult mean = frac_trapezoid_mean(*f, a, b - a, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "fractional mean", mean);
    r.lhs = mean.value;
    r.rhs = std::max(eval(*f, a), eval(*f, b));
    r.stages.push_back({"mean <= max endpoint", r.lhs, r.rhs, r.rhs - r.lhs});

    r.hypotheses.push_back(detail::guarded_cert(
        "quasiconvex(f)", [&] { return certify_quasiconvex(f, a, b, plan); }));
    r.hypotheses.back().label = "quasiconvex(f)";
    if (a < 0.0) r.notes.push_back("note: stated for 0 <= a < b; a is negative here");
    if (std::min(eval(*f, a), eval(*f, b)) <= 0.0)
        r.notes.push_back("note: stated for positive f; endpoint values are not all positive");
    detail::decide(r);
    return r;
}

/// |trapezoid defect| <= ((b-a)/(alpha+1)) (1 - 2^-alpha) max{|f'(a)|, |f'(b)|}.
inline VerificationResult verify_thm_1_3(const ExprPtr& f, double a, double b, double alpha,
                                         const QuadratureConfig& cfg = {}, double tol = 1e-9,
                                         const SamplingPlan& plan = {}) {
    if (!(b > a)) throw std::invalid_argument("requires a < b");
    VerificationResult r;
    r.theorem = TheoremId::T1_3;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, b - a, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * (b - a) * kernel_abs_integral(alpha) *
            std::max(detail::abs_deriv_at(*f, a), detail::abs_deriv_at(*f, b));
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    r.hypotheses.push_back(detail::guarded_cert("quasiconvex(|f'|)", [&] {
        return certify_quasiconvex(abs_deriv_fn(f), a, b, plan, "quasiconvex(|f'|)");
    }));
    detail::decide(r);
    return r;
}

/// Hoelder form: |defect| <= (b-a)/(2 (alpha p + 1)^(1/p)) * max{|f'|^q}^(1/q),
/// 0 < alpha <= 1.
inline VerificationResult verify_thm_1_4(const ExprPtr& f, double a, double b, double alpha,
                                         const ExponentPair& pq, const QuadratureConfig& cfg = {},
                                         double tol = 1e-9, const SamplingPlan& plan = {}) {
    if (!(b > a)) throw std::invalid_argument("requires a < b");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0,1] for this theorem");
    VerificationResult r;
    r.theorem = TheoremId::T1_4;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, b - a, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * (b - a) * std::pow(kernel_pow_integral(alpha, pq.p()), 1.0 / pq.p()) *
            detail::endpoint_deriv_bound(*f, a, b, pq.q());
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    r.hypotheses.push_back(detail::guarded_cert("quasiconvex(|f'|^q)", [&] {
        return certify_quasiconvex(abs_deriv_pow_fn(f, pq.q()), a, b, plan, "quasiconvex(|f'|^q)");
    }));
    r.notes.push_back("note: alpha restricted to (0,1] by the stated hypothesis");
    detail::decide(r);
    return r;
}

/// Power-mean form: |defect| <= ((b-a)/(alpha+1)) (1 - 2^-alpha) max{|f'|^q}^(1/q), q >= 1.
inline VerificationResult verify_thm_1_5(const ExprPtr& f, double a, double b, double alpha,
                                         double q, const QuadratureConfig& cfg = {},
                                         double tol = 1e-9, const SamplingPlan& plan = {}) {
    if (!(b > a)) throw std::invalid_argument("requires a < b");
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
    VerificationResult r;
    r.theorem = TheoremId::T1_5;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, b - a, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * (b - a) * kernel_abs_integral(alpha) * detail::endpoint_deriv_bound(*f, a, b, q);
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    r.hypotheses.push_back(detail::guarded_cert("quasiconvex(|f'|^q)", [&] {
        return certify_quasiconvex(abs_deriv_pow_fn(f, q), a, b, plan, "quasiconvex(|f'|^q)");
    }));
    detail::decide(r);
    return r;
}

// ---------------------------------------------------------------------------
// Invexity-map verifiers ([a, a + eta(b,a)])

namespace detail {

inline double eta_value_checked(const EtaMap& eta, double a, double b) {
    double v = eta(b, a);
    if (!(v > 0.0)) throw std::invalid_argument("requires eta(b, a) > 0");
    return v;
}

} // namespace detail

/// Two-stage bound: fractional mean <= max{f(a), f(a+eta(b,a))} <= max{f(a), f(b)}.
inline VerificationResult verify_thm_2_1(const ExprPtr& f, const EtaMap& eta, double a, double b,
                                         double alpha, const QuadratureConfig& cfg = {},
                                         double tol = 1e-9, const SamplingPlan& plan = {}) {
    double ev = detail::eta_value_checked(eta, a, b);
    VerificationResult r;
    r.theorem = TheoremId::T2_1;
    r.tol = tol;

    QuadResult mean = frac_trapezoid_mean(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "fractional mean", mean);
    double f_a = eval(*f, a);
    double f_ae = eval(*f, a + ev);
    double f_b = eval(*f, b);
    double mid_max = std::max(f_a, f_ae);
    double end_max = std::max(f_a, f_b);
    r.stages.push_back({"mean <= max{f(a), f(a+eta)}", mean.value, mid_max, mid_max - mean.value});
    r.stages.push_back({"max{f(a), f(a+eta)} <= max{f(a), f(b)}", mid_max, end_max,
                        end_max - mid_max});
    r.lhs = mean.value;
    r.rhs = end_max;

    Interval A = detail::hull(a, b, a + ev);
    r.hypotheses.push_back(detail::guarded_cert(
        "invex-set", [&] { return check_invex_set(A, eta, plan); }));
    r.hypotheses.push_back(detail::guarded_cert(
        "condition-c", [&] { return check_condition_c(eta, A, plan); }));
    r.hypotheses.push_back(detail::guarded_cert("prequasiinvex(f)", [&] {
        return certify_prequasiinvex(f, eta, A, plan);
    }));
    r.hypotheses.back().label = "prequasiinvex(f)";
    if (std::min({f_a, f_ae, f_b}) <= 0.0)
        r.notes.push_back("note: stated for f with values in (0, inf); sampled values are not all positive");
    detail::decide(r);
    return r;
}

/// |defect over [a, a+eta]| <= (eta/(alpha+1)) (1 - 2^-alpha) max{|f'(a)|, |f'(b)|}.
inline VerificationResult verify_thm_2_2(const ExprPtr& f, const EtaMap& eta, double a, double b,
                                         double alpha, const QuadratureConfig& cfg = {},
                                         double tol = 1e-9, const SamplingPlan& plan = {}) {
    double ev = detail::eta_value_checked(eta, a, b);
    VerificationResult r;
    r.theorem = TheoremId::T2_2;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * ev * kernel_abs_integral(alpha) *
            std::max(detail::abs_deriv_at(*f, a), detail::abs_deriv_at(*f, b));
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    Interval A = detail::hull(a, b, a + ev);
    r.hypotheses.push_back(detail::guarded_cert("prequasiinvex(|f'|)", [&] {
        return certify_prequasiinvex(abs_deriv_fn(f), eta, A, plan, "prequasiinvex(|f'|)");
    }));
    detail::decide(r);
    return r;
}

/// Power-mean form with eta: rhs = (eta/(alpha+1)) (1 - 2^-alpha) max{|f'|^q}^(1/q).
inline VerificationResult verify_thm_2_5(const ExprPtr& f, const EtaMap& eta, double a, double b,
                                         double alpha, double q, const QuadratureConfig& cfg = {},
                                         double tol = 1e-9, const SamplingPlan& plan = {}) {
    double ev = detail::eta_value_checked(eta, a, b);
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
    VerificationResult r;
    r.theorem = TheoremId::T2_5;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * ev * kernel_abs_integral(alpha) * detail::endpoint_deriv_bound(*f, a, b, q);
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    Interval A = detail::hull(a, b, a + ev);
    r.hypotheses.push_back(detail::guarded_cert("prequasiinvex(|f'|^q)", [&] {
        return certify_prequasiinvex(abs_deriv_pow_fn(f, q), eta, A, plan, "prequasiinvex(|f'|^q)");
    }));
    if (q == 1.0)
        r.notes.push_back("note: stated for fixed q > 1; q = 1 accepted outside the literal statement");
    detail::decide(r);
    return r;
}

/// Hoelder form with eta; the bound uses f' at a and at a + eta(b,a):
/// rhs = (eta/(2 (alpha p + 1)^(1/p))) max{|f'(a)|^q, |f'(a+eta)|^q}^(1/q), 0 < alpha <= 1.
inline VerificationResult verify_thm_2_4(const ExprPtr& f, const EtaMap& eta, double a, double b,
                                         double alpha, const ExponentPair& pq,
                                         const QuadratureConfig& cfg = {}, double tol = 1e-9,
                                         const SamplingPlan& plan = {}) {
    double ev = detail::eta_value_checked(eta, a, b);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0,1] for this theorem");
    VerificationResult r;
    r.theorem = TheoremId::T2_4;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);
    r.rhs = 0.5 * ev * std::pow(kernel_pow_integral(alpha, pq.p()), 1.0 / pq.p()) *
            detail::endpoint_deriv_bound(*f, a, a + ev, pq.q());
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    Interval A = detail::hull(a, b, a + ev);
    r.hypotheses.push_back(detail::guarded_cert("prequasiinvex(|f'|^q)", [&] {
        return certify_prequasiinvex(abs_deriv_pow_fn(f, pq.q()), eta, A, plan,
                                     "prequasiinvex(|f'|^q)");
    }));
    r.notes.push_back("note: alpha restricted to (0,1] by the stated hypothesis");
    detail::decide(r);
    return r;
}

/// Condition-C variants: same left side as the base bound, right side built
/// from f' at a and at a + eta(b,a). The base is chosen by the arguments:
/// conjugate exponents select the Hoelder form, a bare q the power-mean
/// form, neither the plain form.
inline VerificationResult verify_remark_variants(const ExprPtr& f, const EtaMap& eta, double a,
                                                 double b, double alpha,
                                                 const std::optional<ExponentPair>& exponents,
                                                 const std::optional<double>& q_power,
                                                 const QuadratureConfig& cfg = {},
                                                 double tol = 1e-9,
                                                 const SamplingPlan& plan = {}) {
    double ev = detail::eta_value_checked(eta, a, b);
    VerificationResult r;
    r.theorem = TheoremId::REMARK_C_VARIANTS;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    r.lhs = std::abs(defect.value);

    std::string base;
    if (exponents) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("alpha must lie in (0,1] for this theorem");
        base = "hoelder";
        r.rhs = 0.5 * ev * std::pow(kernel_pow_integral(alpha, exponents->p()), 1.0 / exponents->p()) *
                detail::endpoint_deriv_bound(*f, a, a + ev, exponents->q());
    } else if (q_power) {
        if (!(*q_power >= 1.0)) throw std::invalid_argument("q must be at least 1");
        base = "power-mean";
        r.rhs = 0.5 * ev * kernel_abs_integral(alpha) *
                detail::endpoint_deriv_bound(*f, a, a + ev, *q_power);
    } else {
        base = "plain";
        r.rhs = 0.5 * ev * kernel_abs_integral(alpha) *
                std::max(detail::abs_deriv_at(*f, a), detail::abs_deriv_at(*f, a + ev));
    }
    r.notes.push_back("variant base: " + base + "; bound uses f' at a and a + eta(b,a)");
    r.stages.push_back({"|defect| <= bound", r.lhs, r.rhs, r.rhs - r.lhs});

    Interval A = detail::hull(a, b, a + ev);
    r.hypotheses.push_back(detail::guarded_cert(
        "condition-c", [&] { return check_condition_c(eta, A, plan); }));
    double q_for_cert = exponents ? exponents->q() : q_power.value_or(1.0);
    r.hypotheses.push_back(detail::guarded_cert("prequasiinvex(|f'|^q)", [&] {
        return certify_prequasiinvex(q_for_cert == 1.0 ? abs_deriv_fn(f)
                                                       : abs_deriv_pow_fn(f, q_for_cert),
                                     eta, A, plan, "prequasiinvex(|f'|^q)");
    }));
    detail::decide(r);
    return r;
}

/// Trapezoid identity as a verification: holds when the residual is within
/// tolerance (equality, not a one-sided bound).
inline VerificationResult verify_lemma_identity(const ExprPtr& f, const EtaMap* eta, double a,
                                                double b, double alpha,
                                                const QuadratureConfig& cfg = {},
                                                double tol = 1e-8,
                                                const SamplingPlan& plan = {}) {
    double ev = eta ? detail::eta_value_checked(*eta, a, b) : b - a;
    if (!(ev > 0.0)) throw std::invalid_argument("requires eta(b, a) > 0");
    VerificationResult r;
    r.theorem = TheoremId::LEMMA_1_4;
    r.tol = tol;

    QuadResult defect = trapezoid_defect(*f, a, ev, FracOrder(alpha), detail::decision_quad(cfg, tol));
    QuadResult integral = detail::weighted_deriv_integral(*f, a, ev, alpha, detail::decision_quad(cfg, tol));
    detail::push_quad(r, "trapezoid defect", defect);
    detail::push_quad(r, "weighted derivative integral", integral);
    r.lhs = defect.value;
    r.rhs = 0.5 * ev * integral.value;
    double residual = std::abs(r.lhs - r.rhs);
    r.stages.push_back({"|defect - integral| = 0", residual, 0.0, -residual});
    r.notes.push_back("equality check: holds iff |lhs - rhs| <= tol");

    Interval A{a, a + ev, false};
    EtaMap linear = builtin_eta("linear");
    r.hypotheses.push_back(detail::guarded_cert("preinvex(f')", [&] {
        RealFn fprime = [f](double x) {
            DualValue d = eval_dual(*f, x);
            if (d.kink) throw KinkError("f' requested at kink x=" + fmt_shortest(x));
            return d.deriv;
        };
        return certify_preinvex(fprime, eta ? *eta : linear, A, plan, "preinvex(f')");
    }));

    // equality: pass iff residual small, regardless of sign
    for (const auto& q : r.quadrature) {
        if (!q.converged || !(q.error_estimate < r.tol / 10.0)) {
            r.verdict = Verdict::Inconclusive;
            r.margin = -residual;
            return r;
        }
    }
    r.margin = -residual;
    r.verdict = residual <= tol ? Verdict::Holds : Verdict::Violated;
    return r;
}

// ---------------------------------------------------------------------------
// Case dispatcher

inline VerificationResult verify_case(const InequalityCase& c) {
    const ExprPtr& f = c.f;
    switch (c.theorem) {
        case TheoremId::HH_CLASSICAL:
            return verify_hh_classical(f, c.a, c.b, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T1_2:
            return verify_thm_1_2(f, c.a, c.b, c.alpha, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T1_3:
            return verify_thm_1_3(f, c.a, c.b, c.alpha, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T1_4:
            if (!c.exponents) throw std::invalid_argument("this theorem needs exponents p, q");
            return verify_thm_1_4(f, c.a, c.b, c.alpha, *c.exponents, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T1_5:
            if (!c.q_power) throw std::invalid_argument("this theorem needs q >= 1");
            return verify_thm_1_5(f, c.a, c.b, c.alpha, *c.q_power, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T2_1:
            if (!c.eta) throw std::invalid_argument("this theorem needs an eta map");
            return verify_thm_2_1(f, *c.eta, c.a, c.b, c.alpha, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T2_2:
            if (!c.eta) throw std::invalid_argument("this theorem needs an eta map");
            return verify_thm_2_2(f, *c.eta, c.a, c.b, c.alpha, c.quad_cfg, c.tol, c.plan);
        case TheoremId::T2_4:
            if (!c.eta) throw std::invalid_argument("this theorem needs an eta map");
            if (!c.exponents) throw std::invalid_argument("this theorem needs exponents p, q");
            return verify_thm_2_4(f, *c.eta, c.a, c.b, c.alpha, *c.exponents, c.quad_cfg, c.tol,
                                  c.plan);
        case TheoremId::T2_5:
            if (!c.eta) throw std::invalid_argument("this theorem needs an eta map");
            if (!c.q_power) throw std::invalid_argument("this theorem needs q >= 1");
            return verify_thm_2_5(f, *c.eta, c.a, c.b, c.alpha, *c.q_power, c.quad_cfg, c.tol,
                                  c.plan);
        case TheoremId::LEMMA_1_4:
            return verify_lemma_identity(f, c.eta ? &*c.eta : nullptr, c.a, c.b, c.alpha,
                                         c.quad_cfg, c.tol, c.plan);
        case TheoremId::REMARK_C_VARIANTS:
            if (!c.eta) throw std::invalid_argument("this theorem needs an eta map");
            return verify_remark_variants(f, *c.eta, c.a, c.b, c.alpha, c.exponents, c.q_power,
                                          c.quad_cfg, c.tol, c.plan);
    }
    throw std::invalid_argument("unknown theorem id");
}

} // namespace fracineq
