#include <benchmark/benchmark.h>

#include "ffs/config.hpp"
#include "ffs/geometry.hpp"
#include "ffs/radio.hpp"

namespace {

ffsim::NetworkModel default_model() {
    return ffsim::parse_config(ffsim::default_config_json()).scenario.model;
}

void BM_TotalCoverage(benchmark::State& state) {
    ffsim::CoverageQuery q;
    q.model = default_model();
    q.gamma_linear = 10.0;
    q.sinr_threshold_linear = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(ffsim::total_coverage(q));
}
BENCHMARK(BM_TotalCoverage);

void BM_ErgodicRate(benchmark::State& state) {
    auto model = default_model();
    for (auto _ : state) benchmark::DoNotOptimize(ffsim::ergodic_rate(10.0, model));
}
BENCHMARK(BM_ErgodicRate);

void BM_SampleTopology(benchmark::State& state) {
    auto model = default_model();
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(ffsim::sample_topology(model, seed++));
}
BENCHMARK(BM_SampleTopology);

}  // namespace

BENCHMARK_MAIN();
