#pragma once

// Shipped test battery: small functions with canonical intervals covering
// the hypothesis spectrum (convex, quasi-convex only, kinked, and two
// deliberate negative cases).

#include <string>
#include <vector>

#include "fracineq/expr.hpp"

namespace fracineq {

struct BatteryFunction {
    std::string name;
    std::string expr_text;
    double a, b;       // canonical interval
    bool smooth;       // differentiable everywhere (usable in identity tests)
};

inline const std::vector<BatteryFunction>& battery() {
    static const std::vector<BatteryFunction> fns = {
        {"linear", "x", 0.0, 1.0, true},
        {"square", "x^2", 0.0, 1.0, true},
        {"cube", "x^3", 0.0, 1.5, true},           // quasi-convex for x >= 0
        {"exp", "exp(x)", 0.0, 1.0, true},
        {"exp-neg", "exp(-x)", 0.0, 1.0, true},
        {"abs", "abs(x)", -1.0, 2.0, false},       // quasi-convex, kinked at 0
        {"two-well", "x^4 - x^2", -1.0, 1.0, true},// not quasi-convex on [-1,1]
        {"bump", "x*(1-x)", 0.0, 1.0, true},       // concave; negative control
        {"const-1", "1", 0.0, 1.0, true},
        {"const-2.5", "2.5", 0.0, 1.0, true},
    };
    return fns;
}

/// Battery members that are differentiable everywhere on their interval.
inline std::vector<BatteryFunction> smooth_battery() {
    std::vector<BatteryFunction> out;
    for (const auto& f : battery())
        if (f.smooth) out.push_back(f);
    return out;
}

} // namespace fracineq
