#pragma once

// First-order dual numbers for forward-mode differentiation of parsed
// expressions. The kink flag is sticky: it marks results whose derivative
// component came from a subgradient choice (abs at 0, min/max tie,
// piecewise breakpoint, sqrt at 0) rather than a true derivative.

#include <cmath>

#include "fracineq/common.hpp"

namespace fracineq {

struct Dual {
    double v = 0.0;   // value
    double d = 0.0;   // derivative coefficient
    bool kink = false;

    Dual() = default;
    Dual(double value, double deriv, bool k = false) : v(value), d(deriv), kink(k) {}

    /// Constant lift: derivative zero.
    static Dual constant(double c) { return Dual(c, 0.0); }
    /// Seed for the differentiation variable.
    static Dual seed(double x) { return Dual(x, 1.0); }
};

inline Dual operator-(const Dual& a) { return {-a.v, -a.d, a.kink}; }

inline Dual operator+(const Dual& a, const Dual& b) {
    return {a.v + b.v, a.d + b.d, a.kink || b.kink};
}
inline Dual operator-(const Dual& a, const Dual& b) {
    return {a.v - b.v, a.d - b.d, a.kink || b.kink};
}
inline Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.kink || b.kink};
}

inline Dual operator/(const Dual& a, const Dual& b) {
    if (b.v == 0.0) throw DomainError("division by zero");
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v), a.kink || b.kink};
}

inline Dual dexp(const Dual& a) {
    double e = std::exp(a.v);
    return {e, e * a.d, a.kink};
}

inline Dual dlog(const Dual& a) {
    if (!(a.v > 0.0)) throw DomainError("log of non-positive value");
    return {std::log(a.v), a.d / a.v, a.kink};
}

inline Dual dsqrt(const Dual& a) {
    if (a.v < 0.0) throw DomainError("sqrt of negative value");
    double s = std::sqrt(a.v);
    if (a.v == 0.0) return {0.0, 0.0, true};  // infinite one-sided slope
    return {s, a.d / (2.0 * s), a.kink};
}

// abs at 0: derivative 0, kink flagged (symmetric subgradient).
inline Dual dabs(const Dual& a) {
    if (a.v > 0.0) return {a.v, a.d, a.kink};
    if (a.v < 0.0) return {-a.v, -a.d, a.kink};
    return {0.0, 0.0, true};
}

// Ties pick the left operand's derivative and flag the kink.
inline Dual dmin(const Dual& a, const Dual& b) {
    if (a.v < b.v) return a;
    if (b.v < a.v) return b;
    return {a.v, a.d, true};
}
inline Dual dmax(const Dual& a, const Dual& b) {
    if (a.v > b.v) return a;
    if (b.v > a.v) return b;
    return {a.v, a.d, true};
}

namespace detail {

inline bool is_integer_exponent(double e, long long& n) {
    if (!(std::abs(e) <= 9.0e15)) return false;
    double fl = std::floor(e);
    if (fl != e) return false;
    n = static_cast<long long>(fl);
    return true;
}

/// Integer power by repeated squaring; well-defined for negative bases.
inline double powi(double base, long long n) {
    if (n < 0) {
        if (base == 0.0) throw DomainError("zero base with negative exponent");
        return 1.0 / powi(base, -n);
    }
    double acc = 1.0, b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

} // namespace detail

/// Real power with the integer-exponent convention: integer exponents use
/// repeated squaring (negative bases fine), fractional exponents require a
/// positive base.
inline double rpow(double base, double expo) {
    long long n;
    if (detail::is_integer_exponent(expo, n)) return detail::powi(base, n);
    if (!(base > 0.0)) throw DomainError("fractional power of non-positive base");
    return std::pow(base, expo);
}

inline Dual dpow(const Dual& a, const Dual& b) {
    bool k = a.kink || b.kink;
    long long n;
    if (b.d == 0.0 && detail::is_integer_exponent(b.v, n)) {
        double val = detail::powi(a.v, n);
        double der = (n == 0) ? 0.0 : static_cast<double>(n) * detail::powi(a.v, n - 1) * a.d;
        return {val, der, k};
    }
    if (!(a.v > 0.0)) throw DomainError("fractional power of non-positive base");
    double val = std::pow(a.v, b.v);
    double der = val * (b.d * std::log(a.v) + b.v * a.d / a.v);
    return {val, der, k};
}

} // namespace fracineq
