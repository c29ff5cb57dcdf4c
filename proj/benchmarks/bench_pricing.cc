#include <benchmark/benchmark.h>

#include <cmath>

#include "shapectl/calibrate.hpp"
#include "shapectl/fd_oracle.hpp"
#include "shapectl/greeks.hpp"
#include "shapectl/profiles.hpp"
#include "shapectl/solution.hpp"

using namespace shapectl;

namespace {

const MarketParams kMarket{0.06, 0.3, 100.0, 60.0 / 365.0};

}  // namespace

static void BM_ClassicalPrice(benchmark::State& state) {
    double spot = 80.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(call_price({spot, 0.05}, kMarket));
        spot = spot < 120.0 ? spot + 0.01 : 80.0;
    }
}
BENCHMARK(BM_ClassicalPrice);

static void BM_PerturbedPrice(benchmark::State& state) {
    const ScaleSpec spec{2.37163, static_cast<int>(state.range(0)), +1};
    double spot = 80.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(call_price({spot, 0.05}, kMarket, spec));
        spot = spot < 120.0 ? spot + 0.01 : 80.0;
    }
}
BENCHMARK(BM_PerturbedPrice)->Arg(1)->Arg(5)->Arg(20);

static void BM_PerturbedHeatErfcForm(benchmark::State& state) {
    const ScaleSpec spec{2.37163, static_cast<int>(state.range(0)), +1};
    const double k = 2.0 * kMarket.rate / (kMarket.sigma * kMarket.sigma);
    double x = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(perturbed_heat_erfc(x, 0.004, spec, k));
        x = x < 0.5 ? x + 1e-4 : -0.5;
    }
}
BENCHMARK(BM_PerturbedHeatErfcForm)->Arg(1)->Arg(5)->Arg(20);

static void BM_PerturbedGreeks(benchmark::State& state) {
    const ScaleSpec spec{2.37163, 1, +1};
    for (auto _ : state) benchmark::DoNotOptimize(perturbed_greeks({100.0, 0.05}, kMarket, spec));
}
BENCHMARK(BM_PerturbedGreeks);

static void BM_SolveLambda(benchmark::State& state) {
    const CalibrationTarget target{ShiftMode::Absolute, 0.15, {100.0, kMarket.maturity / 2.0}, kMarket, 1, +1};
    for (auto _ : state) benchmark::DoNotOptimize(solve_lambda(target));
}
BENCHMARK(BM_SolveLambda)->Unit(benchmark::kMicrosecond);

static void BM_L2Consistency(benchmark::State& state) {
    const ScaleSpec spec{static_cast<double>(state.range(0)), 3, +1};
    for (auto _ : state)
        benchmark::DoNotOptimize(l2_consistency(spec, 4.0 / 3.0, {0.0, std::log(2.0)}, 1e-12));
}
BENCHMARK(BM_L2Consistency)->Arg(2)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_CrankNicolson(benchmark::State& state) {
    const double k = 4.0 / 3.0;
    const int n = static_cast<int>(state.range(0));
    const FdGrid grid{-6.0, 6.0, n + 1, n, kMarket.tau_max()};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_heat_cn([k](double x) { return heat_payoff(x, k); }, grid, call_boundary(k)));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * n);
}
BENCHMARK(BM_CrankNicolson)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK_MAIN();
