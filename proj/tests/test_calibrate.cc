#include <gtest/gtest.h>

#include <cmath>

#include "shapectl/calibrate.hpp"
#include "shapectl/error.hpp"
#include "shapectl/greeks.hpp"

using namespace shapectl;

namespace {

CalibrationTarget base_target(double shift = 0.15, int n0 = 1, int eps = +1) {
    const MarketParams params{0.06, 0.3, 100.0, 60.0 / 365.0};
    return {ShiftMode::Absolute, shift, {100.0, params.maturity / 2.0}, params, n0, eps};
}

}  // namespace

TEST(AchievedShift, Examples) {
    const CalibrationTarget t = base_target();
    EXPECT_LE(std::abs(achieved_shift(1e6, t)), 1e-10);

    CalibrationTarget minus = t;
    minus.epsilon = -1;
    EXPECT_EQ(achieved_shift(3.0, minus), -achieved_shift(3.0, t));

    // Exact derivative at the quoted lambda (mpmath): 0.09091196605.
    EXPECT_NEAR(achieved_shift(2.37163, t), 0.0909119660516, 1e-12);
}

TEST(SolveLambda, RoundTrip) {
    for (double d : {0.05, 0.10, 0.20}) {
        const CalibrationResult r = solve_lambda(base_target(d), d, 1e-10);
        EXPECT_LE(std::abs(r.residual), 1e-10);
        EXPECT_NEAR(achieved_shift(r.lambda_star, base_target(d)), d, 1e-10);
        EXPECT_GE(r.lambda_star, r.bracket_lo);
        EXPECT_LE(r.lambda_star, r.bracket_hi);
        EXPECT_FALSE(r.multiple_roots);
        EXPECT_GT(r.lambda_star, 1.0);
    }
}

TEST(SolveLambda, NegativeEpsilon) {
    const CalibrationTarget t = base_target(-0.1, 2, -1);
    const CalibrationResult r = solve_lambda(t, -0.1, 1e-10);
    EXPECT_NEAR(delta_perturbed(t.reference, t.params, {r.lambda_star, 2, -1}) -
                    delta_classical(t.reference, t.params),
                -0.1, 1e-10);
}

TEST(SolveLambda, LargerShiftNeedsSmallerLambda) {
    double prev = INFINITY;
    for (double d : {0.05, 0.15, 0.25, 0.35}) {
        const double l = solve_lambda(base_target(d), d, 1e-10).lambda_star;
        EXPECT_LT(l, prev);
        prev = l;
    }
}

TEST(SolveLambda, Deterministic) {
    const CalibrationResult a = solve_lambda(base_target(0.12), 0.12, 1e-10);
    const CalibrationResult b = solve_lambda(base_target(0.12), 0.12, 1e-10);
    EXPECT_EQ(a.lambda_star, b.lambda_star);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.residual, b.residual);
}

TEST(SolveLambda, RelativeMode) {
    CalibrationTarget t = base_target();
    t.mode = ShiftMode::Relative;
    t.value = 0.2;
    const double dc = delta_classical(t.reference, t.params);
    EXPECT_NEAR(desired_shift(t), 0.2 * dc, 1e-15);
    const CalibrationResult r = solve_lambda(t);
    EXPECT_NEAR(delta_perturbed(t.reference, t.params, {r.lambda_star, 1, 1}), 1.2 * dc, 1e-10);

    t.value = 1.5;
    EXPECT_THROW(t.validate(), Error);
}

TEST(SolveLambda, InfeasibleShiftReportsMaximum) {
    try {
        solve_lambda(base_target(0.99), 0.99, 1e-10);
        FAIL();
    } catch (const NoBracketError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoBracket);
        EXPECT_GT(e.max_achievable(), 0.3);
        EXPECT_LT(e.max_achievable(), 0.99);
    }
}

TEST(SolveLambda, RejectsWrongSignAndExpiry) {
    EXPECT_THROW(solve_lambda(base_target(-0.1), -0.1, 1e-10), Error);
    CalibrationTarget t = base_target();
    t.reference.time = t.params.maturity;
    EXPECT_THROW(solve_lambda(t, 0.1, 1e-10), Error);
}
