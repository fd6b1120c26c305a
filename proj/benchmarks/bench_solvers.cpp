#include <benchmark/benchmark.h>

#include "riskclaim/oracle.hpp"
#include "riskclaim/risk_measures.hpp"
#include "riskclaim/solvers.hpp"

using namespace riskclaim;

namespace {
const PriceDensity kU02 = PriceDensity::uniform(0.0, 2.0);
}

static void BM_SolveAvar(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_avar(kU02, 0.75, 0.9).risk);
}
BENCHMARK(BM_SolveAvar);

static void BM_SolveQuantileBased(benchmark::State& state) {
    const auto k = WeightFunction::two_level(0.6, 0.5);
    numerics::Min2DOptions opt;
    opt.coarse_n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_quantile_based(kU02, k, 0.7, opt).risk);
}
BENCHMARK(BM_SolveQuantileBased)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SolveRobust(benchmark::State& state) {
    const auto ex = LossFunction::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_robust_utility(kU02, ex, 0.75, 0.8).risk);
}
BENCHMARK(BM_SolveRobust)->Unit(benchmark::kMillisecond);

static void BM_SolveShifted(benchmark::State& state) {
    const auto ex = LossFunction::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_shifted(kU02, ex, 0.5, 0.3, 1.0).risk);
}
BENCHMARK(BM_SolveShifted)->Unit(benchmark::kMillisecond);

static void BM_OracleQuantile(benchmark::State& state) {
    const auto inst = DiscreteInstance::make(discretize(kU02, static_cast<std::size_t>(state.range(0))), 0.9);
    const auto k = WeightFunction::avar(0.75);
    for (auto _ : state) benchmark::DoNotOptimize(oracle_quantile_based(inst, k).risk);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleQuantile)->RangeMultiplier(2)->Range(250, 2000)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_OracleRobust(benchmark::State& state) {
    const auto inst = DiscreteInstance::make(discretize(kU02, static_cast<std::size_t>(state.range(0))), 0.6);
    const auto ex = LossFunction::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(oracle_robust(inst, ex, 0.75).risk);
}
BENCHMARK(BM_OracleRobust)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_RiskCurve(benchmark::State& state) {
    ProblemSpec spec{MeasureSpec::avar(0.75), kU02, 0.0, 1.0, {}};
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(risk_curve(spec, grid).points.size());
}
BENCHMARK(BM_RiskCurve)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
