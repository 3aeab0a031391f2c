// Serial reference vs OpenMP estimator on the dense relaying configuration.

#include <benchmark/benchmark.h>

#include "mmconn/montecarlo.hpp"

namespace {

using namespace mmconn;

const BlockageModelParams kParams{5e-4, GrainDistribution::deterministic(10.0), GrainDistribution::deterministic(10.0)};
const LinkGeometry kLink{200.0, 20.0};

void BM_EstimateSerial(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::estimate_connectivity(kParams, kLink, Condition::unconditional, n, 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateParallel(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const ExecOptions exec{static_cast<int>(state.range(1))};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_connectivity(kParams, kLink, Condition::unconditional, n, 7, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PairedSerial(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            serial::paired_kappa_trials(kParams, kLink, {0.0, 20.0, 100.0}, Condition::unconditional, n, 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PairedParallel(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const ExecOptions exec{static_cast<int>(state.range(1))};
    for (auto _ : state)
        benchmark::DoNotOptimize(paired_kappa_trials(kParams, kLink, {0.0, 20.0, 100.0}, Condition::unconditional, n,
                                                     7, Coupling::common, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridOracle(benchmark::State& state)
{
    const double resolution = 1.0 / static_cast<double>(state.range(0));
    const ObstacleField field = sample_field(kParams, kLink, 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_flood_fill_connected(kLink.strip(), field.obstacles, kLink.source(),
                                                           kLink.destination(), resolution));
}

}  // namespace

BENCHMARK(BM_EstimateSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateParallel)->Args({10000, 1})->Args({10000, 2})->Args({10000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairedSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairedParallel)->Args({10000, 1})->Args({10000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridOracle)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
