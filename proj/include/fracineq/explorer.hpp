#pragma once

// Batch studies over the verifiers: alpha scans, reduction-consistency
// sweeps, and seeded random counterexample search over parametric function
// families. Everything here is deterministic for a fixed seed and
// independent of the worker thread count (rows and samples are keyed by
// index).

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracineq/battery.hpp"
#include "fracineq/common.hpp"
#include "fracineq/expr.hpp"
#include "fracineq/hh_verify.hpp"

namespace fracineq {

// ---------------------------------------------------------------------------
// Alpha scan

struct ScanPlan {
    InequalityCase base;
    std::vector<double> alpha_grid;  // strictly increasing
};

struct ScanRow {
    double alpha = 0.0;
    double lhs = 0.0, rhs = 0.0, margin = 0.0;
    std::optional<double> ratio;  // lhs/rhs, absent when rhs <= 1e-14
    Verdict verdict = Verdict::Inconclusive;
    bool failed = false;
    std::string error;
    std::optional<VerificationResult> result;  // full per-row result for JSON reports
};

inline void validate_scan_plan(const ScanPlan& plan) {
    for (std::size_t i = 1; i < plan.alpha_grid.size(); ++i)
        if (!(plan.alpha_grid[i] > plan.alpha_grid[i - 1]))
            throw std::invalid_argument("alpha grid must be strictly increasing");
    bool capped = plan.base.theorem == TheoremId::T1_4 || plan.base.theorem == TheoremId::T2_4 ||
                  (plan.base.theorem == TheoremId::REMARK_C_VARIANTS && plan.base.exponents);
    for (double a : plan.alpha_grid) {
        if (!(a > 0.0)) throw std::invalid_argument("alpha must be positive");
        if (capped && a > 1.0)
            throw std::invalid_argument("alpha must lie in (0,1] for this theorem");
    }
}

/// One row per alpha; a row that throws is marked failed and the scan
/// continues. Rows are written to their slot, so output order never depends
/// on scheduling.
inline std::vector<ScanRow> alpha_scan(const ScanPlan& plan, int threads = 1) {
    validate_scan_plan(plan);
    std::vector<ScanRow> rows(plan.alpha_grid.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        ScanRow& row = rows[i];
        row.alpha = plan.alpha_grid[i];
        try {
            InequalityCase c = plan.base;
            c.alpha = row.alpha;
            if (threads > 1) c.plan.threads = 1;  // row-level parallelism already in play
            VerificationResult res = verify_case(c);
            row.lhs = res.lhs;
            row.rhs = res.rhs;
            row.margin = res.margin;
            if (res.rhs > 1e-14) row.ratio = res.lhs / res.rhs;
            row.verdict = res.verdict;
            row.result = std::move(res);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.error = ex.what();
        }
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Reduction sweep

// The eta = y - x reductions (fractional -> classical) and the alpha = 1
// reductions to the classical bounds are formula identities; the sweep
// recomputes both routes and reports the worst deviation observed.

struct ReductionRow {
    std::string function;
    double alpha;
    std::string pair;     // e.g. "mean-bound vs classical mean-bound"
    double deviation;     // max over compared quantities
};

struct ReductionReport {
    std::vector<ReductionRow> rows;
    double max_deviation = 0.0;
};

namespace detail {

inline double dev2(double a, double b) { return std::abs(a - b); }

} // namespace detail

inline ReductionReport reduction_sweep(const std::vector<BatteryFunction>& fns,
                                       const std::vector<double>& alpha_grid,
                                       const QuadratureConfig& cfg = {}) {
    ReductionReport rep;
    EtaMap linear = builtin_eta("linear");
    SamplingPlan tiny;  // hypotheses are irrelevant to the identity; keep certs cheap
    tiny.grid_points = 3;
    tiny.random_samples = 8;

    auto add = [&](const std::string& fn, double alpha, const std::string& pair, double d) {
        rep.rows.push_back({fn, alpha, pair, d});
        rep.max_deviation = std::max(rep.max_deviation, d);
    };

    for (const auto& bf : fns) {
        ExprPtr f = parse(bf.expr_text);
        double a = bf.a, b = bf.b;
        for (double alpha : alpha_grid) {
            // fractional mean bound vs classical counterpart
            {
                auto t2 = verify_thm_2_1(f, linear, a, b, alpha, cfg, 1e-9, tiny);
                auto t1 = verify_thm_1_2(f, a, b, alpha, cfg, 1e-9, tiny);
                add(bf.name, alpha, "mean-bound",
                    std::max(detail::dev2(t2.lhs, t1.lhs), detail::dev2(t2.rhs, t1.rhs)));
            }
            if (!bf.smooth) continue;  // derivative-based bounds need f' everywhere
            {
                auto t2 = verify_thm_2_2(f, linear, a, b, alpha, cfg, 1e-9, tiny);
                auto t1 = verify_thm_1_3(f, a, b, alpha, cfg, 1e-9, tiny);
                add(bf.name, alpha, "defect-bound",
                    std::max(detail::dev2(t2.lhs, t1.lhs), detail::dev2(t2.rhs, t1.rhs)));
                if (alpha == 1.0) {
                    // classical bound: (eta/4) max{|f'(a)|, |f'(b)|}
                    double classical = 0.25 * (b - a) *
                                       std::max(detail::abs_deriv_at(*f, a),
                                                detail::abs_deriv_at(*f, b));
                    add(bf.name, alpha, "defect-bound@1", detail::dev2(t2.rhs, classical));
                }
            }
            {
                const double q = 2.0;
                auto t2 = verify_thm_2_5(f, linear, a, b, alpha, q, cfg, 1e-9, tiny);
                auto t1 = verify_thm_1_5(f, a, b, alpha, q, cfg, 1e-9, tiny);
                add(bf.name, alpha, "power-mean-bound",
                    std::max(detail::dev2(t2.lhs, t1.lhs), detail::dev2(t2.rhs, t1.rhs)));
            }
            if (alpha <= 1.0) {
                ExponentPair pq(2.0, 2.0);
                auto t2 = verify_thm_2_4(f, linear, a, b, alpha, pq, cfg, 1e-9, tiny);
                auto t1 = verify_thm_1_4(f, a, b, alpha, pq, cfg, 1e-9, tiny);
                add(bf.name, alpha, "hoelder-bound",
                    std::max(detail::dev2(t2.lhs, t1.lhs), detail::dev2(t2.rhs, t1.rhs)));
                if (alpha == 1.0) {
                    // classical Hoelder bound: (eta/(2 (p+1)^(1/p))) max{|f'|^q}^(1/q)
                    double classical = 0.5 * (b - a) / std::pow(pq.p() + 1.0, 1.0 / pq.p()) *
                                       detail::endpoint_deriv_bound(*f, a, b, pq.q());
                    add(bf.name, alpha, "hoelder-bound@1", detail::dev2(t2.rhs, classical));
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Counterexample search

/// Parametric family: an expression template in x plus named parameter
/// boxes. Parameters are kept sorted by name so draw order is stable.
struct FamilyDescriptor {
    std::string template_text;
    std::vector<std::pair<std::string, Interval>> params;  // sorted by name

    void sort_params() {
        std::sort(params.begin(), params.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
};

/// The documented quadratic family: c1*x + c2*x*(1-x), c1 in [-1,1],
/// c2 in [0.5, 2].
inline FamilyDescriptor quadratic_family() {
    FamilyDescriptor fam;
    fam.template_text = "c1*x + c2*x*(1-x)";
    fam.params = {{"c1", Interval{-1.0, 1.0, false}}, {"c2", Interval{0.5, 2.0, false}}};
    return fam;
}

struct SearchBudget {
    int max_evals = 200;
    std::uint64_t seed = kDefaultSeed;
};

struct SearchOutcome {
    bool found = false;
    int evals_used = 0;
    std::vector<std::pair<std::string, double>> params;
    std::optional<InequalityCase> witness_case;
    std::optional<VerificationResult> witness_result;
};

namespace detail {

inline InequalityCase instantiate(const InequalityCase& fixed, const FamilyDescriptor& fam,
                                  const ExprPtr& templ, const std::vector<double>& values) {
    std::map<std::string, double> binding;
    for (std::size_t j = 0; j < fam.params.size(); ++j)
        binding[fam.params[j].first] = values[j];
    InequalityCase c = fixed;
    c.f = bind_params(templ, binding);
    c.f_text = to_string(*c.f);
    // hypothesis sampling is irrelevant to the margin; keep it cheap here
    c.plan.grid_points = 3;
    c.plan.random_samples = 8;
    return c;
}

} // namespace detail

/// Seeded uniform sampling over the parameter box, then a fixed number of
/// coordinate-descent refinement steps from the best candidate. Returns the
/// first candidate whose margin drops below -tol; candidate i is drawn from
/// stream i of the seed, so the trajectory is reproducible.
inline SearchOutcome counterexample_search(const InequalityCase& fixed, FamilyDescriptor family,
                                           const SearchBudget& budget, int refine_steps = 50) {
    family.sort_params();
    std::vector<std::string> names;
    for (const auto& [n, _] : family.params) names.push_back(n);
    ExprPtr templ = parse_with_params(family.template_text, names);

    SearchOutcome out;
    if (budget.max_evals <= 0) return out;

    const std::size_t k = family.params.size();
    auto margin_of = [&](const std::vector<double>& values) -> std::optional<VerificationResult> {
        ++out.evals_used;
        try {
            return verify_case(detail::instantiate(fixed, family, templ, values));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    auto finish = [&](const std::vector<double>& values, VerificationResult res) {
        out.found = true;
        out.params.clear();
        for (std::size_t j = 0; j < k; ++j) out.params.emplace_back(names[j], values[j]);
        out.witness_case = detail::instantiate(fixed, family, templ, values);
        out.witness_result = std::move(res);
    };

    std::vector<double> best;
    double best_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < budget.max_evals; ++i) {
        SplitMix64 rng(budget.seed, static_cast<std::uint64_t>(i));
        std::vector<double> values(k);
        for (std::size_t j = 0; j < k; ++j)
            values[j] = rng.uniform(family.params[j].second.lo, family.params[j].second.hi);
        auto res = margin_of(values);
        if (!res) continue;
        if (res->verdict == Verdict::Violated && res->margin < -fixed.tol) {
            finish(values, std::move(*res));
            return out;
        }
        if (res->margin < best_margin) {
            best_margin = res->margin;
            best = values;
        }
    }

    if (best.empty()) return out;

    // coordinate descent around the best candidate
    std::vector<double> radius(k);
    for (std::size_t j = 0; j < k; ++j) radius[j] = 0.25 * family.params[j].second.width();
    std::vector<double> cur = best;
    for (int step = 0; step < refine_steps; ++step) {
        std::size_t j = static_cast<std::size_t>(step) % k;
        const Interval& box = family.params[j].second;
        double center = cur[j];
        double improved = false;
        for (double dir : {-1.0, 1.0}) {
            std::vector<double> cand = cur;
            cand[j] = std::clamp(center + dir * radius[j], box.lo, box.hi);
            if (cand[j] == center) continue;
            auto res = margin_of(cand);
            if (!res) continue;
            if (res->verdict == Verdict::Violated && res->margin < -fixed.tol) {
                finish(cand, std::move(*res));
                return out;
            }
            if (res->margin < best_margin) {
                best_margin = res->margin;
                cur = cand;
                improved = true;
                break;
            }
        }
        if (!improved) radius[j] *= 0.5;
    }
    return out;
}

} // namespace fracineq
