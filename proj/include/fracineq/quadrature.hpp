#pragma once

// Panel-based adaptive quadrature: fixed-order Gauss-Legendre rule per
// panel, error estimated as |two-half refinement - one-panel value|, and
// bisection of the worst panel until the total estimate meets tolerance.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "fracineq/common.hpp"

namespace fracineq {

enum class QuadMethod { DesingularizedGauss, AdaptiveBisection };

struct QuadratureConfig {
    int nodes_per_panel = 32;   // >= 2
    int max_panels = 4096;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    QuadMethod method = QuadMethod::DesingularizedGauss;
    bool compensated = false;   // Kahan accumulation of panel sums
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
    bool converged = false;
};

namespace detail {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n; cached per n.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

inline double gauss_panel(const std::function<double(double)>& f, double lo, double hi,
                          const GaussRule& rule) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

struct Panel {
    double lo, hi;
    double value;      // two-half refinement
    double estimate;   // |refined - coarse|
};

inline Panel make_panel(const std::function<double(double)>& f, double lo, double hi,
                        const GaussRule& rule) {
    double coarse = gauss_panel(f, lo, hi, rule);
    double mid = 0.5 * (lo + hi);
    double refined = gauss_panel(f, lo, mid, rule) + gauss_panel(f, mid, hi, rule);
    return {lo, hi, refined, std::abs(refined - coarse)};
}

inline double sum_values(const std::vector<Panel>& panels, bool compensated) {
    if (!compensated) {
        double s = 0.0;
        for (const auto& p : panels) s += p.value;
        return s;
    }
    double s = 0.0, c = 0.0;
    for (const auto& p : panels) {
        double y = p.value - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

} // namespace detail

/// Integrate f over [lo, hi]. `breakpoints` seeds panel boundaries (kinks,
/// sign changes of a kernel); only points strictly inside (lo, hi) are used.
inline QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureConfig& cfg, std::span<const double> breakpoints = {}) {
    QuadResult res;
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol >= 0.0))
        throw std::invalid_argument("integrate: abs_tol must be positive, rel_tol nonnegative");
    if (!(hi > lo)) {
        if (hi == lo) {
            res.converged = true;
            return res;
        }
        throw std::invalid_argument("integrate: upper limit must exceed lower limit");
    }

    const auto& rule = detail::gauss_legendre(std::max(2, cfg.nodes_per_panel));

    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<detail::Panel> panels;
    panels.reserve(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        panels.push_back(detail::make_panel(f, cuts[i], cuts[i + 1], rule));

    auto total_error = [&]() {
        double e = 0.0;
        for (const auto& p : panels) e += p.estimate;
        return e;
    };
    auto tolerance = [&](double value) {
        return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    };

    double value = detail::sum_values(panels, cfg.compensated);
    double err = total_error();
    while (err > tolerance(value) && static_cast<int>(panels.size()) < cfg.max_panels) {
        // split the worst panel; ties broken by position for determinism
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].estimate > panels[worst].estimate) worst = i;
        detail::Panel p = panels[worst];
        double mid = 0.5 * (p.lo + p.hi);
        if (mid <= p.lo || mid >= p.hi) break;  // panel width at rounding floor
        panels[worst] = detail::make_panel(f, p.lo, mid, rule);
        panels.insert(panels.begin() + worst + 1, detail::make_panel(f, mid, p.hi, rule));
        value = detail::sum_values(panels, cfg.compensated);
        err = total_error();
    }

    res.value = value;
    res.error_estimate = err;
    res.panels_used = static_cast<int>(panels.size());
    res.converged = err <= tolerance(value);
    return res;
}

} // namespace fracineq
