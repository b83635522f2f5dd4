// Parallel sweep vs the serial reference path, and the analytical model vs
// the cycle-by-cycle simulator on one small layer.
#include <benchmark/benchmark.h>

#include "pscale/memory.hpp"
#include "pscale/refsim.hpp"
#include "pscale/sweep.hpp"

namespace {

pscale::SweepConfig bench_config() {
    pscale::SweepConfig c;
    c.workloads = {"preset:googlenet", "preset:alphagozero"};
    return c;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto c = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(pscale::run_sweep_serial(c));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto c = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(pscale::run_sweep(c));
}

const pscale::LayerShape kSmall{"small", 6, 6, 3, 3, 3, 6, 1, 1};

void BM_AnalyticalLayer(benchmark::State& state) {
    for (auto _ : state) {
        const auto plan = pscale::plan_folds(kSmall, 8, 8);
        benchmark::DoNotOptimize(pscale::ws_cycles(plan));
        benchmark::DoNotOptimize(pscale::demand_traffic(plan));
    }
}

void BM_ReferenceLayer(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pscale::simulate_ws_reference(kSmall, 8, 8));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyticalLayer);
BENCHMARK(BM_ReferenceLayer);

BENCHMARK_MAIN();
