#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "shapectl/error.hpp"
#include "shapectl/solution.hpp"

using namespace shapectl;

namespace {

constexpr double kBaseK = 4.0 / 3.0;
const MarketParams kBase{0.06, 0.3, 100.0, 60.0 / 365.0};

}  // namespace

TEST(ClassicalHeat, InitialConditionLimit) {
    EXPECT_EQ(classical_heat(0.3, 0.0, kBaseK), heat_payoff(0.3, kBaseK));
    EXPECT_NEAR(classical_heat(0.3, 1e-14, kBaseK), heat_payoff(0.3, kBaseK), 1e-6);
}

TEST(ClassicalHeat, ThirtyDaysAtTheMoney) {
    const double tau = 0.045 * 30.0 / 365.0;
    EXPECT_NEAR(tau, 0.00369863, 1e-8);
    const double price = heat_value_to_price({0.0, tau}, classical_heat(0.0, tau, kBaseK), kBase);
    EXPECT_NEAR(price, oracle::black_scholes_call(100, 100, 0.06, 0.3, 30.0 / 365.0).price, 1e-10);
    EXPECT_NEAR(price, 3.68, 0.01);
}

TEST(ClassicalHeat, DeepInTheMoney) {
    const double remaining = 30.0 / 365.0;
    const double s = 100.0 * std::exp(3.0);
    const double price = call_price({s, kBase.maturity - remaining}, kBase);
    EXPECT_NEAR(price, s - 100.0 * std::exp(-0.06 * remaining), 1e-6);
}

TEST(ClassicalHeat, JetMatchesFiniteDifferences) {
    for (double x : {-0.5, 0.0, 0.2, 1.0})
        for (double tau : {0.001, 0.01, 0.2}) {
            const HeatJet j = classical_heat_jet(x, tau, kBaseK);
            const double h = 1e-4;
            const double up = classical_heat(x + h, tau, kBaseK);
            const double dn = classical_heat(x - h, tau, kBaseK);
            EXPECT_NEAR(j.dx, (up - dn) / (2 * h), 1e-7 * (1 + std::abs(j.dx)));
            EXPECT_NEAR(j.dxx, (up - 2 * j.value + dn) / (h * h), 1e-4 * (1 + std::abs(j.dxx)));
        }
}

TEST(PerturbedHeat, VanishingPerturbation) {
    for (double x : {-0.2, 0.0, 0.3})
        for (double tau : {0.001, 0.0074}) {
            const double c = classical_heat(x, tau, kBaseK);
            EXPECT_NEAR(perturbed_heat(x, tau, {1e6, 1, +1}, kBaseK), c, 1e-6 * std::max(1.0, c));
        }
}

TEST(PerturbedHeat, ReducesToScaledInitialData) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> xs(-3.0, 3.0), ls(1.1, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const ScaleSpec spec{ls(rng), 1 + i % 5, i % 2 ? 1 : -1};
        const double x = xs(rng);
        ASSERT_EQ(perturbed_heat(x, 0.0, spec, kBaseK), scaled_initial_data(x, spec, kBaseK));
    }
}

TEST(PerturbedHeat, CalibrationPointValue) {
    // mpmath: 0.043207757076959012561750.
    const double tau = kBase.tau_max() / 2.0;
    EXPECT_NEAR(perturbed_heat(0.0, tau, {2.37163, 1, +1}, kBaseK), 0.04320775707695901, 1e-15);
}

TEST(PerturbedHeat, EpsilonOddPerturbation) {
    for (double x : {-0.4, 0.1, 1.2}) {
        const double c = classical_heat(x, 0.01, kBaseK);
        const double up = perturbed_heat(x, 0.01, {3.0, 3, +1}, kBaseK) - c;
        const double dn = perturbed_heat(x, 0.01, {3.0, 3, -1}, kBaseK) - c;
        EXPECT_NEAR(up, -dn, 1e-15 * std::max(1.0, c));
    }
}

TEST(PerturbedHeat, SatisfiesHeatEquationToSecondOrder) {
    const ScaleSpec spec{2.0, 2, +1};
    const double x = 0.1, tau = 0.02;
    auto residual = [&](double h) {
        const double k = h * h;  // keep the tau step at the same order
        const double ut = (perturbed_heat(x, tau + k, spec, kBaseK) -
                           perturbed_heat(x, tau - k, spec, kBaseK)) / (2 * k);
        const double uxx = (perturbed_heat(x + h, tau, spec, kBaseK) -
                            2 * perturbed_heat(x, tau, spec, kBaseK) +
                            perturbed_heat(x - h, tau, spec, kBaseK)) / (h * h);
        return std::abs(ut - uxx);
    };
    const double r1 = residual(0.02), r2 = residual(0.01), r3 = residual(0.005);
    EXPECT_GE(std::log2(r1 / r2), 1.8);
    EXPECT_GE(std::log2(r2 / r3), 1.8);
}

TEST(PerturbedHeatErfc, UnitScaleIsClassical) {
    for (double x : {-1.0, 0.0, 0.5, 2.0})
        for (double tau : {1e-4, 0.01, 0.5})
            EXPECT_NEAR(erfc_profile(x, tau, 1.0, kBaseK), classical_heat(x, tau, kBaseK),
                        1e-12 * (1 + classical_heat(x, tau, kBaseK)));
}

TEST(PerturbedHeatErfc, PinnedValue) {
    // mpmath value of the scaling form: 0.10713396968513754690.
    const ScaleSpec spec{5.0, 2, -1};
    EXPECT_NEAR(perturbed_heat_erfc(0.1, 0.002, spec, kBaseK), 0.10713396968513755, 1e-14);
    EXPECT_NEAR(perturbed_heat_erfc(0.1, 0.002, spec, kBaseK),
                perturbed_heat(0.1, 0.002, spec, kBaseK), 1e-15);
}

TEST(PerturbedHeatErfc, EquivalentToScalingForm) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> xs(-3.0, 3.0), ts(1e-5, 0.5), ls(1.5, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const ScaleSpec spec{ls(rng), 1 + i % 5, i % 2 ? 1 : -1};
        const double x = xs(rng), tau = ts(rng);
        const double a = perturbed_heat(x, tau, spec, kBaseK);
        const double b = perturbed_heat_erfc(x, tau, spec, kBaseK);
        ASSERT_NEAR(a, b, 1e-10 * (1 + std::abs(a))) << x << ' ' << tau;
    }
}

TEST(PerturbedHeatErfc, DegenerateTime) {
    try {
        perturbed_heat_erfc(0.1, 0.0, {2.0, 1, 1}, kBaseK);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateTime);
    }
}

TEST(CallPrice, BoundaryAndTerminalConditions) {
    EXPECT_LT(call_price({1e-6, 0.0}, kBase), 1e-12);
    EXPECT_LT(call_price({1e-6, 0.0}, kBase, ScaleSpec{2.0, 2, 1}), 1e-12);
    for (double s : {50.0, 99.0, 100.0, 101.5, 180.0})
        EXPECT_NEAR(call_price({s, kBase.maturity}, kBase), std::max(s - 100.0, 0.0), 1e-12 * s);
    EXPECT_NEAR(call_price({100.0, kBase.maturity - 30.0 / 365.0}, kBase), 3.67329, 1e-5);
}

TEST(CallPrice, MatchesTextbookFormula) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> s(60, 160), r(0.0, 0.1), v(0.1, 0.6), tt(0.05, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const MarketParams p{r(rng), v(rng), 100.0, 2.0};
        const double remaining = tt(rng);
        const double spot = s(rng);
        const double ref = oracle::black_scholes_call(spot, 100.0, p.rate, p.sigma, remaining).price;
        ASSERT_NEAR(call_price({spot, 2.0 - remaining}, p), ref, 1e-9 * ref);
    }
}

TEST(PriceSurface, DegenerateGridAndOrdering) {
    const std::vector<double> one_s{100.0}, one_t{0.05};
    const auto single = price_surface(one_s, one_t, kBase);
    ASSERT_EQ(single.values.size(), 1u);
    EXPECT_EQ(single.values[0], call_price({100.0, 0.05}, kBase));

    std::vector<double> spots, times;
    for (int i = 0; i < 20; ++i) spots.push_back(60 + 4 * i);
    for (int i = 0; i < 10; ++i) times.push_back(kBase.maturity * i / 10.0);
    const auto plain = price_surface(spots, times, kBase);
    const auto bumped = price_surface(spots, times, kBase, ScaleSpec{2.37163, 1, +1});
    ASSERT_EQ(plain.values.size(), 200u);
    for (std::size_t i = 0; i < plain.values.size(); ++i) {
        EXPECT_GE(plain.values[i], 0.0);
        EXPECT_LE(plain.values[i], bumped.values[i]);
    }
    EXPECT_EQ(plain.at(3, 7), call_price({spots[7], times[3]}, kBase));
}

TEST(PriceSurface, GridValidation) {
    const std::vector<double> bad_s{100.0, 90.0}, ok_t{0.0}, ok_s{100.0}, bad_t{0.0, 10.0};
    EXPECT_THROW(price_surface(bad_s, ok_t, kBase), Error);
    EXPECT_THROW(price_surface(ok_s, bad_t, kBase), Error);
    EXPECT_THROW(price_surface(std::vector<double>{}, ok_t, kBase), Error);
}
