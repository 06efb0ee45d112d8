// Serial reference kernels against their OpenMP versions, plus the exact
// engine and optimizer for scale.

#include <benchmark/benchmark.h>

#include <vector>

#include "maxstop/gm.hpp"
#include "maxstop/optimize.hpp"
#include "maxstop/oracle.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/simulation.hpp"
#include "maxstop/strategy.hpp"

using namespace maxstop;

namespace {

std::vector<CutoffVector> four_strategies(int n) {
    return {gm::naive_cutoffs(n), gm::gm_cutoffs(n), approx_cutoffs(n), single_k_cutoffs(n, optimal_single_k(n).k)};
}

void BM_SimulateSerial(benchmark::State& state) {
    const auto ks = four_strategies(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_many_serial(ks, 100000, 1));
    state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_SimulateParallel(benchmark::State& state) {
    const auto ks = four_strategies(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_many(ks, 100000, 1, threads));
    state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_OracleSerial(benchmark::State& state) {
    const auto k = gm::gm_cutoffs(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::sample_cells_serial(k, 1000000, 2));
    state.SetItemsProcessed(state.iterations() * 1000000);
}

void BM_OracleParallel(benchmark::State& state) {
    const auto k = gm::gm_cutoffs(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::sample_cells(k, 1000000, 2, threads));
    state.SetItemsProcessed(state.iterations() * 1000000);
}

void BM_OutcomeTable(benchmark::State& state) {
    const auto k = approx_cutoffs(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(outcome_table(k));
}

void BM_Optimize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(optimize_cutoffs(n));
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->ArgsProduct({{10, 100}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->ArgsProduct({{3, 6}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OutcomeTable)->Arg(100)->Arg(1000)->Arg(2000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Optimize)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
