#include <doctest.h>

#include <cmath>

#include "fracineq/hh_verify.hpp"

using namespace fracineq;

namespace {

SamplingPlan fast_plan() {
    SamplingPlan p;
    p.grid_points = 9;
    p.random_samples = 500;
    return p;
}

// brute-force quadrature of the kernel integrands; oracle for the closed forms
double quad_abs_kernel(double alpha) {
    QuadratureConfig cfg;
    const double half[] = {0.5};
    return integrate(
               [alpha](double t) {
                   return std::abs(std::pow(t, alpha) - std::pow(1.0 - t, alpha));
               },
               0.0, 1.0, cfg, half)
        .value;
}

double quad_pow_kernel(double alpha, double p) {
    QuadratureConfig cfg;
    const double half[] = {0.5};
    return integrate(
               [alpha, p](double t) { return std::pow(std::abs(1.0 - 2.0 * t), alpha * p); },
               0.0, 1.0, cfg, half)
        .value;
}

} // namespace

TEST_CASE("exponent pairs") {
    ExponentPair pq(2.0, 2.0);
    CHECK(pq.p() == 2.0);
    CHECK(ExponentPair::conjugate(4.0).q() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(ExponentPair(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(ExponentPair(2.0, 3.0), std::invalid_argument);
}

TEST_CASE("trapezoid defect") {
    // linear f: the trapezoid rule is exact for every order
    for (double alpha : {0.5, 1.0, 2.0}) {
        QuadResult d = trapezoid_defect(*parse("x"), 0.0, 1.0, FracOrder(alpha));
        REQUIRE(d.converged);
        CHECK(std::abs(d.value) <= 1e-10);
    }
    // f = x^2 on [0,1] at order 1: 1/2 - 1/3
    QuadResult d = trapezoid_defect(*parse("x^2"), 0.0, 1.0, FracOrder(1.0));
    CHECK(std::abs(d.value - 1.0 / 6.0) <= 1e-10);
    // constants have zero defect at every order
    for (double alpha : {0.25, 1.0, 2.5}) {
        d = trapezoid_defect(*parse("2.5"), 0.0, 1.0, FracOrder(alpha));
        CHECK(std::abs(d.value) <= 1e-12);
    }
}

TEST_CASE("trapezoid identity residual") {
    CHECK(identity_residual(*parse("x^2"), 0.0, 1.0, FracOrder(1.0)) <= 1e-10);
    for (double alpha : {0.25, 0.5, 1.0, 2.0})
        CHECK(identity_residual(*parse("x"), 0.0, 1.0, FracOrder(alpha)) <= 1e-10);
    CHECK(identity_residual(*parse("exp(x)"), 0.0, 1.0, FracOrder(0.5)) <= 1e-8);

    // subset of the full identity sweep
    for (const char* text : {"x^2", "x^3 - x", "exp(-x)", "x*(1-x)"})
        for (double a : {0.0, -1.0})
            for (double eta : {0.5, 2.0})
                for (double alpha : {0.25, 1.0, 2.0})
                    CHECK(identity_residual(*parse(text), a, eta, FracOrder(alpha)) <= 1e-8);

    CHECK_THROWS_AS(identity_residual(*parse("abs(x)"), -1.0, 2.0, FracOrder(0.5)), KinkError);
}

TEST_CASE("closed-form kernel integrals match brute-force quadrature") {
    CHECK(kernel_abs_integral(1.0) == 0.5);  // (2/2)(1 - 1/2)
    CHECK(kernel_abs_integral(2.0) == doctest::Approx(0.5).epsilon(1e-15));  // (2/3)(3/4)
    CHECK(kernel_pow_integral(1.0, 1.0) == 0.5);
    CHECK(kernel_pow_integral(0.5, 2.0) == 0.5);
    CHECK(kernel_pow_integral(0.5, 0.0) == 1.0);  // exponent 0: integrand is 1

    for (double alpha : {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0})
        CHECK(std::abs(kernel_abs_integral(alpha) - quad_abs_kernel(alpha)) <= 1e-10);
    for (double alpha : {0.25, 0.5, 1.0})
        for (double p : {1.25, 2.0, 4.0})
            if (alpha * p <= 3.0)
                CHECK(std::abs(kernel_pow_integral(alpha, p) - quad_pow_kernel(alpha, p)) <=
                      1e-10);
}

TEST_CASE("classical Hermite-Hadamard") {
    SamplingPlan plan = fast_plan();
    VerificationResult r = verify_hh_classical(parse("x^2"), 0.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    REQUIRE(r.stages.size() == 2);
    CHECK(r.stages[0].lhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.stages[0].rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(r.stages[1].rhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.all_hypotheses_certified());

    // linear: equality on both sides
    r = verify_hh_classical(parse("x"), 0.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(std::abs(r.stages[0].margin) <= 1e-10);
    CHECK(std::abs(r.stages[1].margin) <= 1e-10);

    // concave bump: the midpoint inequality fails, 1/4 > 1/6
    r = verify_hh_classical(parse("x*(1-x)"), 0.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Violated);
    CHECK(r.stages[0].margin == doctest::Approx(1.0 / 6.0 - 0.25).epsilon(1e-8));
    CHECK_FALSE(r.all_hypotheses_certified());
}

TEST_CASE("fractional mean bound (quasi-convex form)") {
    SamplingPlan plan = fast_plan();
    VerificationResult r = verify_thm_1_2(parse("x"), 0.0, 1.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.rhs == 1.0);

    r = verify_thm_1_2(parse("2.5"), 0.0, 1.0, 0.5, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(std::abs(r.margin) <= 1e-10);

    // hypothesis necessity: the concave bump violates with lhs 1/6, rhs 0
    r = verify_thm_1_2(parse("x*(1-x)"), 0.0, 1.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Violated);
    CHECK(std::abs(r.lhs - 1.0 / 6.0) <= 1e-10);
    CHECK(r.rhs == 0.0);
    CHECK_FALSE(r.all_hypotheses_certified());
}

TEST_CASE("defect bound via |f'| (quasi-convex form)") {
    SamplingPlan plan = fast_plan();
    VerificationResult r = verify_thm_1_3(parse("x^2"), 0.0, 1.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-12));  // (1/2)(1/2) * 2
    CHECK(r.all_hypotheses_certified());

    for (double alpha : {0.25, 1.0, 2.0}) {
        r = verify_thm_1_3(parse("x"), 0.0, 1.0, alpha, {}, 1e-9, plan);
        CHECK(r.verdict == Verdict::Holds);
        CHECK(r.lhs <= 1e-10);
    }

    r = verify_thm_1_3(parse("exp(x)"), 0.0, 1.0, 0.5, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.0);

    CHECK_THROWS_AS(verify_thm_1_3(parse("abs(x)"), 0.0, 1.0, 1.0, {}, 1e-9, plan), KinkError);
}

TEST_CASE("defect bound, Hoelder form") {
    SamplingPlan plan = fast_plan();
    ExponentPair pq(2.0, 2.0);
    VerificationResult r = verify_thm_1_4(parse("x^2"), 0.0, 1.0, 1.0, pq, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));  // 0.57735...

    r = verify_thm_1_4(parse("x"), 0.0, 1.0, 0.5, pq, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs <= 1e-10);

    // order bound is enforced
    CHECK_THROWS_WITH_AS(verify_thm_1_4(parse("x^2"), 0.0, 1.0, 1.5, pq, {}, 1e-9, plan),
                         "alpha must lie in (0,1] for this theorem", std::invalid_argument);

    // at order 1 the bound coincides with the classical conjugate-exponent bound
    r = verify_thm_1_4(parse("x^2"), 0.0, 1.0, 1.0, pq, {}, 1e-9, plan);
    double classical = 0.5 * 1.0 / std::pow(pq.p() + 1.0, 1.0 / pq.p()) * 2.0;
    CHECK(std::abs(r.rhs - classical) <= 1e-12);
}

TEST_CASE("defect bound, power-mean form") {
    SamplingPlan plan = fast_plan();
    // q = 1 reproduces the plain bound exactly
    VerificationResult r5 = verify_thm_1_5(parse("x^2"), 0.0, 1.0, 0.75, 1.0, {}, 1e-9, plan);
    VerificationResult r3 = verify_thm_1_3(parse("x^2"), 0.0, 1.0, 0.75, {}, 1e-9, plan);
    CHECK(r5.rhs == r3.rhs);

    VerificationResult r = verify_thm_1_5(parse("x^2"), 0.0, 1.0, 1.0, 2.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-12));  // (1/2)(1/2) * (4)^(1/2)
    CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    r = verify_thm_1_5(parse("2.5"), 0.0, 1.0, 1.0, 2.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs <= 1e-12);
    CHECK(r.rhs == 0.0);
}

TEST_CASE("eta-form mean bound and its two stages") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");

    // under the trivial map both stages collapse to the classical statement
    VerificationResult t2 = verify_thm_2_1(parse("x^2 + 1"), lin, 0.0, 1.0, 0.5, {}, 1e-9, plan);
    VerificationResult t1 = verify_thm_1_2(parse("x^2 + 1"), 0.0, 1.0, 0.5, {}, 1e-9, plan);
    CHECK(t2.verdict == Verdict::Holds);
    CHECK(t2.lhs == t1.lhs);
    CHECK(t2.rhs == t1.rhs);
    CHECK(t2.rhs == 2.0);
    REQUIRE(t2.stages.size() == 2);
    CHECK(t2.stages[1].margin == 0.0);  // a + eta(b,a) = b exactly

    // positive constant: equality throughout
    VerificationResult rc = verify_thm_2_1(parse("2.5"), lin, 0.0, 1.0, 1.0, {}, 1e-9, plan);
    CHECK(rc.verdict == Verdict::Holds);
    CHECK(std::abs(rc.stages[0].margin) <= 1e-10);
    CHECK(rc.stages[1].margin == 0.0);

    CHECK_THROWS_AS(
        verify_thm_2_1(parse("x"), builtin_eta("zero"), 0.0, 1.0, 1.0, {}, 1e-9, plan),
        std::invalid_argument);  // eta(b, a) must be positive
}

TEST_CASE("eta-form defect bounds reduce to the classical ones exactly") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");
    ExponentPair pq(2.0, 2.0);

    for (const char* text : {"x", "x^2", "exp(x)", "x*(1-x)"}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            VerificationResult t2 = verify_thm_2_2(parse(text), lin, 0.0, 1.0, alpha, {}, 1e-9, plan);
            VerificationResult t1 = verify_thm_1_3(parse(text), 0.0, 1.0, alpha, {}, 1e-9, plan);
            CHECK(t2.lhs == t1.lhs);
            CHECK(t2.rhs == t1.rhs);

            VerificationResult t5 =
                verify_thm_2_5(parse(text), lin, 0.0, 1.0, alpha, 2.0, {}, 1e-9, plan);
            VerificationResult t15 = verify_thm_1_5(parse(text), 0.0, 1.0, alpha, 2.0, {}, 1e-9, plan);
            CHECK(t5.lhs == t15.lhs);
            CHECK(t5.rhs == t15.rhs);

            if (alpha <= 1.0) {
                VerificationResult t4 =
                    verify_thm_2_4(parse(text), lin, 0.0, 1.0, alpha, pq, {}, 1e-9, plan);
                VerificationResult t14 =
                    verify_thm_1_4(parse(text), 0.0, 1.0, alpha, pq, {}, 1e-9, plan);
                CHECK(t4.lhs == t14.lhs);
                CHECK(t4.rhs == t14.rhs);
            }
        }
    }
}

TEST_CASE("eta-form bound at order 1 matches the classical quarter rule") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");
    VerificationResult r = verify_thm_2_2(parse("x^2"), lin, 0.0, 1.0, 1.0, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    // (eta/(alpha+1))(1 - 2^-alpha) at alpha=1 is eta/4
    CHECK(r.rhs == doctest::Approx(0.25 * 2.0).epsilon(1e-15));
}

TEST_CASE("power-mean and plain eta bounds agree at q = 1") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");
    VerificationResult a = verify_thm_2_5(parse("exp(x)"), lin, 0.0, 1.0, 0.5, 1.0, {}, 1e-9, plan);
    VerificationResult b = verify_thm_2_2(parse("exp(x)"), lin, 0.0, 1.0, 0.5, {}, 1e-9, plan);
    CHECK(a.rhs == b.rhs);
    bool flagged = false;
    for (const auto& n : a.notes) flagged |= n.find("q = 1") != std::string::npos;
    CHECK(flagged);  // outside the stated q > 1
}

TEST_CASE("eta-form Hoelder bound") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");
    ExponentPair pq(2.0, 2.0);
    VerificationResult r = verify_thm_2_4(parse("x^2"), lin, 0.0, 1.0, 1.0, pq, {}, 1e-9, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(verify_thm_2_4(parse("x^2"), lin, 0.0, 1.0, 1.5, pq, {}, 1e-9, plan),
                    std::invalid_argument);
}

TEST_CASE("condition-C variants") {
    SamplingPlan plan = fast_plan();
    EtaMap lin = builtin_eta("linear");

    // under the trivial map the variant equals the base bound exactly
    VerificationResult v =
        verify_remark_variants(parse("x^3"), lin, 0.0, 1.0, 0.5, std::nullopt, std::nullopt, {},
                               1e-9, plan);
    VerificationResult base = verify_thm_2_2(parse("x^3"), lin, 0.0, 1.0, 0.5, {}, 1e-9, plan);
    CHECK(v.lhs == base.lhs);
    CHECK(v.rhs == base.rhs);

    // constant: both sides vanish
    v = verify_remark_variants(parse("2.5"), lin, 0.0, 1.0, 1.0, std::nullopt, std::nullopt, {},
                               1e-9, plan);
    CHECK(v.verdict == Verdict::Holds);
    CHECK(v.lhs <= 1e-12);
    CHECK(v.rhs == 0.0);

    // power-mean and Hoelder variants select by arguments
    v = verify_remark_variants(parse("exp(x)"), lin, 0.0, 1.0, 0.5, std::nullopt, 3.0, {}, 1e-9,
                               plan);
    VerificationResult b5 = verify_thm_2_5(parse("exp(x)"), lin, 0.0, 1.0, 0.5, 3.0, {}, 1e-9, plan);
    CHECK(v.rhs == b5.rhs);

    ExponentPair pq(2.0, 2.0);
    v = verify_remark_variants(parse("exp(x)"), lin, 0.0, 1.0, 0.5, pq, std::nullopt, {}, 1e-9,
                               plan);
    VerificationResult b4 = verify_thm_2_4(parse("exp(x)"), lin, 0.0, 1.0, 0.5, pq, {}, 1e-9, plan);
    CHECK(v.rhs == b4.rhs);
}

TEST_CASE("identity verifier") {
    SamplingPlan plan = fast_plan();
    VerificationResult r =
        verify_lemma_identity(parse("x^2"), nullptr, 0.0, 1.0, 1.0, {}, 1e-8, plan);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(std::abs(r.lhs - 1.0 / 6.0) <= 1e-9);
    CHECK(std::abs(r.rhs - 1.0 / 6.0) <= 1e-9);
    CHECK_THROWS_AS(
        verify_lemma_identity(parse("abs(x)"), nullptr, -1.0, 2.0, 0.5, {}, 1e-8, plan),
        KinkError);
}

TEST_CASE("inconclusive verdicts when quadrature noise could decide") {
    SamplingPlan plan = fast_plan();
    QuadratureConfig sloppy;
    sloppy.nodes_per_panel = 2;
    sloppy.max_panels = 1;
    sloppy.abs_tol = 1e-15;
    sloppy.rel_tol = 0.0;
    VerificationResult r = verify_thm_1_2(parse("exp(x)*x^3 - x"), 0.0, 3.0, 0.3, sloppy, 1e-9, plan);
    CHECK(r.verdict == Verdict::Inconclusive);
}

TEST_CASE("case dispatcher validates required fields") {
    InequalityCase c;
    c.theorem = TheoremId::T1_4;
    c.f = parse("x^2");
    c.f_text = "x^2";
    c.alpha = 0.5;
    c.plan = fast_plan();
    CHECK_THROWS_AS(verify_case(c), std::invalid_argument);  // missing exponents
    c.exponents = ExponentPair(2.0, 2.0);
    CHECK(verify_case(c).verdict == Verdict::Holds);

    c.theorem = TheoremId::T2_5;
    c.q_power = 2.0;
    CHECK_THROWS_AS(verify_case(c), std::invalid_argument);  // missing eta
    c.eta = builtin_eta("linear");
    CHECK(verify_case(c).verdict == Verdict::Holds);
}
