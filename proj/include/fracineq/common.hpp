#pragma once

// Shared basics: error types, intervals, deterministic RNG streams,
// number formatting, and a small order-stable parallel loop.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fracineq {

// ---------------------------------------------------------------------------
// Errors

/// Syntax error from the expression parser. `offset` is a 1-based byte
/// position into the input; `expected` lists the tokens that would have
/// been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t offset, std::vector<std::string> expected)
        : std::runtime_error(std::move(msg)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation hit a point outside an operation's domain (log of a
/// non-positive value, division by zero, piecewise gap, non-finite result).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A derivative was required at a point where the expression is not
/// differentiable (abs at zero, piecewise breakpoint, min/max tie).
class KinkError : public std::runtime_error {
public:
    explicit KinkError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Interval

/// A real interval. `open` intervals are inset slightly when sampled so
/// that boundary points are never probed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool open = true;

    double width() const { return hi - lo; }

    bool contains(double x) const {
        return open ? (x > lo && x < hi) : (x >= lo && x <= hi);
    }

    /// Signed distance outside the interval; 0 when inside.
    double violation(double x) const {
        double v = 0.0;
        if (x < lo) v = lo - x;
        if (x > hi) v = x - hi;
        return v;
    }
};

/// Evenly spaced sample points; open intervals are inset by 1e-9 * width.
inline std::vector<double> sample_axis(const Interval& iv, int n) {
    std::vector<double> pts;
    if (n <= 0) return pts;
    double inset = iv.open ? 1e-9 * iv.width() : 0.0;
    double lo = iv.lo + inset, hi = iv.hi - inset;
    if (n == 1) {
        pts.push_back(0.5 * (lo + hi));
        return pts;
    }
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        pts.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return pts;
}

// ---------------------------------------------------------------------------
// Deterministic random streams

/// Default seed for every random-driven component ("HH" + 2012).
inline constexpr std::uint64_t kDefaultSeed = 0x48482012ull;

/// SplitMix64. Used as a per-index stream: `SplitMix64(seed, index)` yields
/// a generator whose outputs depend only on (seed, index), never on which
/// thread or in what order samples are drawn.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(seed + stream * 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Parallel loop

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is assigned
/// by index so results written to slot i are identical for any thread
/// count; used for scan rows and certification sample blocks.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (threads < 1) threads = 1;
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Thread budget from the FRACINEQ_THREADS environment variable; 1 if unset
/// or unparsable.
inline int env_thread_budget() {
    const char* v = std::getenv("FRACINEQ_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

// ---------------------------------------------------------------------------
// Number formatting

/// Shortest decimal representation that round-trips to the same double.
inline std::string fmt_shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// 17 significant digits; used for values written to CSV files.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

} // namespace fracineq
