#include <doctest.h>

#include <cmath>

#include "fracineq/gamma.hpp"

using namespace fracineq;

TEST_CASE("gamma at integers matches factorials") {
    double fact = 1.0;
    for (int n = 1; n <= 20; ++n) {
        CHECK(std::abs(gamma_fn(n) - fact) <= 1e-13 * fact);
        fact *= n;
    }
}

TEST_CASE("gamma at half-integers matches the product formula") {
    // gamma(3.5) = (5/2)(3/2)(1/2) sqrt(pi)
    const double sqrt_pi = std::sqrt(M_PI);
    double expected = 2.5 * 1.5 * 0.5 * sqrt_pi;
    CHECK(expected == doctest::Approx(3.3233509704478426).epsilon(1e-15));
    CHECK(std::abs(gamma_fn(3.5) - expected) <= 1e-12 * expected);
    CHECK(std::abs(gamma_fn(0.5) - sqrt_pi) <= 1e-13 * sqrt_pi);
    CHECK(std::abs(gamma_fn(1.5) - 0.5 * sqrt_pi) <= 1e-13);
}

TEST_CASE("gamma relative accuracy across (0, 50]") {
    // std::tgamma is an independent implementation; glibc keeps it well
    // under the 1e-13 budget
    for (double x = 0.05; x <= 50.0; x += 0.0625) {
        double ref = std::tgamma(x);
        CHECK(std::abs(gamma_fn(x) - ref) <= 1e-13 * std::abs(ref));
    }
}

TEST_CASE("gamma recurrence") {
    for (double x : {0.3, 0.9, 1.7, 2.2, 5.5, 10.25}) {
        double lhs = gamma_fn(x + 1.0);
        double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    }
}

TEST_CASE("gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::invalid_argument);
}
