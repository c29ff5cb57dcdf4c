#include <gtest/gtest.h>

#include <cmath>

#include "shapectl/error.hpp"
#include "shapectl/fd_oracle.hpp"
#include "shapectl/solution.hpp"

using namespace shapectl;

namespace {

constexpr double kBaseK = 4.0 / 3.0;
constexpr double kTauEnd = 0.045 * 60.0 / 365.0;

// Heat kernel started at tau0: exact solution sqrt(tau0/(tau0+tau)) e^{-x^2/(4(tau0+tau))}.
constexpr double kTau0 = 0.05;
double gaussian(double x, double tau) {
    return std::sqrt(kTau0 / (kTau0 + tau)) * std::exp(-x * x / (4.0 * (kTau0 + tau)));
}

double gaussian_error(int nx, int n_tau) {
    const FdGrid grid{-3.0, 3.0, nx, n_tau, 0.1};
    const FdSolution sol = solve_heat_cn([](double x) { return gaussian(x, 0.0); }, grid,
                                         exact_boundary(gaussian, "exact gaussian"));
    return compare_surfaces(sol, gaussian, 0).max_abs;
}

}  // namespace

TEST(SolveHeatCn, ZeroData) {
    const FdGrid grid{-6.0, 6.0, 101, 50, kTauEnd};
    const FdSolution sol = solve_heat_cn([](double) { return 0.0; }, grid,
                                         exact_boundary([](double, double) { return 0.0; }, "zero"));
    for (double v : sol.values) EXPECT_EQ(v, 0.0);
}

TEST(SolveHeatCn, FirstRowIsInitialData) {
    const FdGrid grid{-6.0, 6.0, 201, 10, kTauEnd};
    const FdSolution sol =
        solve_heat_cn([](double x) { return heat_payoff(x, kBaseK); }, grid, call_boundary(kBaseK));
    for (int i = 0; i < grid.nx; ++i) EXPECT_EQ(sol.at(0, i), heat_payoff(grid.x(i), kBaseK));
    EXPECT_EQ(sol.boundary_mode, call_boundary(kBaseK).description);
}

TEST(SolveHeatCn, GaussianSecondOrder) {
    const double e1 = gaussian_error(101, 20);
    const double e2 = gaussian_error(201, 40);
    const double e3 = gaussian_error(401, 80);
    EXPECT_LT(e3, 1e-4);
    EXPECT_GE(observed_order(e1, e2), 1.8);
    EXPECT_LE(observed_order(e1, e2), 2.2);
    EXPECT_GE(observed_order(e2, e3), 1.8);
    EXPECT_LE(observed_order(e2, e3), 2.2);
}

TEST(SolveHeatCn, PayoffMatchesClassical) {
    const FdGrid grid{-6.0, 6.0, 2001, 2000, kTauEnd};
    const FdSolution sol =
        solve_heat_cn([](double x) { return heat_payoff(x, kBaseK); }, grid, call_boundary(kBaseK));
    const ErrorReport r = compare_surfaces(
        sol, [](double x, double tau) { return classical_heat(x, tau, kBaseK); }, 5);
    EXPECT_LE(r.max_abs, 5e-3);
    EXPECT_LE(r.rms, r.max_abs);
}

TEST(SolveHeatCn, PerturbedDataMatchesPerturbedHeat) {
    const ScaleSpec spec{2.0, 2, +1};
    auto exact = [spec](double x, double tau) { return perturbed_heat(x, tau, spec, kBaseK); };
    const FdGrid grid{-6.0, 6.0, 2001, 2000, kTauEnd};
    const FdSolution sol = solve_heat_cn(
        [spec](double x) { return scaled_initial_data(x, spec, kBaseK); }, grid,
        exact_boundary(exact, "perturbed closed form"));
    EXPECT_LE(compare_surfaces(sol, exact, 5).max_abs, 5e-3);
}

TEST(SolveHeatCn, Linearity) {
    const FdGrid grid{-4.0, 4.0, 161, 40, 0.05};
    auto f = [](double x) { return std::exp(-x * x); };
    auto g = [](double x) { return x * x * std::exp(-std::abs(x)); };
    auto zero = exact_boundary([](double, double) { return 0.0; }, "zero");
    const FdSolution sf = solve_heat_cn(f, grid, zero);
    const FdSolution sg = solve_heat_cn(g, grid, zero);
    const FdSolution sc = solve_heat_cn([&](double x) { return 2.5 * f(x) - 0.75 * g(x); }, grid, zero);
    for (std::size_t i = 0; i < sc.values.size(); ++i) {
        const double combo = 2.5 * sf.values[i] - 0.75 * sg.values[i];
        ASSERT_NEAR(sc.values[i], combo, 1e-12 * std::max(1.0, std::abs(combo)));
    }
}

TEST(SolveHeatCn, MaximumPrinciple) {
    const FdGrid grid{-6.0, 6.0, 401, 100, kTauEnd};
    const FdSolution sol =
        solve_heat_cn([](double x) { return heat_payoff(x, kBaseK); }, grid, call_boundary(kBaseK));
    for (double v : sol.values) ASSERT_GE(v, -1e-12);
}

TEST(SolveHeatCn, InstabilityDetected) {
    const FdGrid grid{-1.0, 1.0, 11, 5, 0.01};
    try {
        solve_heat_cn([](double) { return 1.0; }, grid,
                      exact_boundary([](double, double) { return 1e13; }, "bogus"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Instability);
    }
}

TEST(FdGrid, Validation) {
    EXPECT_THROW((FdGrid{0.0, 1.0, 11, 5, 0.01}.validate()), Error);
    EXPECT_THROW((FdGrid{-1.0, 1.0, 2, 5, 0.01}.validate()), Error);
    EXPECT_THROW((FdGrid{-1.0, 1.0, 11, 0, 0.01}.validate()), Error);
    EXPECT_THROW((FdGrid{-1.0, 1.0, 11, 5, 0.0}.validate()), Error);
    EXPECT_THROW((FdGrid{-1.0, 1.0, 11, 5, 0.02}.validate(0.01)), Error);
}

TEST(CompareSurfaces, SelfComparisonIsZero) {
    const FdGrid grid{-3.0, 3.0, 61, 10, 0.05};
    const FdSolution sol = solve_heat_cn([](double x) { return gaussian(x, 0.0); }, grid,
                                         exact_boundary(gaussian, "exact"));
    auto self = [&](double x, double tau) {
        const int i = static_cast<int>(std::lround((x - grid.x_min) / grid.dx()));
        const int n = static_cast<int>(std::lround(tau / grid.dtau()));
        return sol.at(n, i);
    };
    const ErrorReport r = compare_surfaces(sol, self, 0);
    EXPECT_EQ(r.max_abs, 0.0);
    EXPECT_EQ(r.rms, 0.0);
}

TEST(CompareSurfaces, HalvingBothStepsQuartersError) {
    const double e1 = gaussian_error(121, 30);
    const double e2 = gaussian_error(241, 60);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(CompareLevel, PayoffFinalLevelIsSecondOrder) {
    auto exact = [](double x, double tau) { return classical_heat(x, tau, kBaseK); };
    double errors[2];
    for (int r = 0; r < 2; ++r) {
        const int n = 500 << r;
        const FdGrid grid{-6.0, 6.0, n + 1, n, kTauEnd};
        const FdSolution sol =
            solve_heat_cn([](double x) { return heat_payoff(x, kBaseK); }, grid, call_boundary(kBaseK));
        errors[r] = compare_level(sol, exact, grid.n_tau, 5).max_abs;
        EXPECT_GE(compare_surfaces(sol, exact, 5).max_abs, errors[r]);
    }
    EXPECT_GE(observed_order(errors[0], errors[1]), 1.8);
    EXPECT_LE(observed_order(errors[0], errors[1]), 2.2);
}

TEST(CompareLevel, RejectsMissingLevel) {
    const FdGrid grid{-1.0, 1.0, 11, 5, 0.01};
    const FdSolution sol = solve_heat_cn([](double) { return 0.0; }, grid,
                                         exact_boundary([](double, double) { return 0.0; }, "zero"));
    EXPECT_THROW(compare_level(sol, [](double, double) { return 0.0; }, 6, 0), Error);
}
