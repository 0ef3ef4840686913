#include <benchmark/benchmark.h>

#include <cmath>

#include "fracode/fraccalc.hpp"
#include "fracode/solver.hpp"
#include "fracode/special.hpp"

namespace {

static void BM_MittagLefflerSeries(benchmark::State& state) {
    double z = -0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fracode::mittag_leffler({0.5, 1.0, z}).value);
        z = z < -9.0 ? -0.37 : z - 0.01;
    }
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerAsymptotic(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fracode::mittag_leffler({0.5, 1.25, -40.0}).value);
}
BENCHMARK(BM_MittagLefflerAsymptotic);

static void BM_FracIntegral(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const double h = 1.0 / static_cast<double>(n);
    const auto f = fracode::GridFunction::sampled(0.0, h, n + 1,
                                                  [](double t) { return std::sin(3.0 * t); });
    for (auto _ : state) benchmark::DoNotOptimize(fracode::frac_integral(0.5, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracIntegral)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_CaputoL1(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const double h = 1.0 / static_cast<double>(n);
    const auto f = fracode::GridFunction::sampled(0.0, h, n + 1,
                                                  [](double t) { return t * t + std::cos(t); });
    for (auto _ : state) benchmark::DoNotOptimize(fracode::caputo_derivative(0.5, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_StepSolve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto p = fracode::FodeProblem::scalar(0.5, [](double, double v) { return -v; }, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(fracode::step_solve(p, 1.0 / static_cast<double>(n), 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StepSolve)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

}  // namespace

BENCHMARK_MAIN();
