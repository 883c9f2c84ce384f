/*
   Copyright 2026 The erwlil Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Serial reference kernels against their OpenMP counterparts. Each pair runs
// the same work on the same streams, so the outputs are identical and only
// the wall time differs. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "erwlil/duo.hpp"
#include "erwlil/erw.hpp"
#include "erwlil/kernel.hpp"
#include "erwlil/lil.hpp"
#include "erwlil/replicas.hpp"
#include "erwlil/sampling.hpp"

namespace {

using namespace erwlil;

const std::vector<std::int64_t> kHorizons = doubling_horizons(16, 100000);

void BM_walk_positions_serial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(walk_positions_serial({0.6, 0.5}, kHorizons, 1, 0, 256));
    }
    state.SetItemsProcessed(state.iterations() * 256 * kHorizons.back());
}

void BM_walk_positions_parallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(walk_positions({0.6, 0.5}, kHorizons, 1, 0, 256));
    }
    state.SetItemsProcessed(state.iterations() * 256 * kHorizons.back());
}

PairRunSpec pair_spec() {
    return {{{0.5, 0.5}, {0.6, 0.5}}, {10000, 100000}, doubling_horizons(16, 100000)};
}

void BM_pair_replicas_serial(benchmark::State& state) {
    const auto spec = pair_spec();
    for (auto _ : state) benchmark::DoNotOptimize(run_pair_replicas_serial(spec, 2, 0, 128));
    state.SetItemsProcessed(state.iterations() * 128 * spec.horizon());
}

void BM_pair_replicas_parallel(benchmark::State& state) {
    const auto spec = pair_spec();
    for (auto _ : state) benchmark::DoNotOptimize(run_pair_replicas(spec, 2, 0, 128));
    state.SetItemsProcessed(state.iterations() * 128 * spec.horizon());
}

const int kRatioNs[] = {100, 500, 2000};

void BM_er_ratio_serial(benchmark::State& state) {
    const auto spec = KernelSpec::erw_diff(0.5, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(er_ratio_series_serial(spec, 16.0, kRatioNs));
}

void BM_er_ratio_parallel(benchmark::State& state) {
    const auto spec = KernelSpec::erw_diff(0.5, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(er_ratio_series(spec, 16.0, kRatioNs));
}

std::vector<double> sampler_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 512; ++i) g.push_back(i / 512.0);
    return g;
}

void BM_sampler_serial(benchmark::State& state) {
    const auto grid = sampler_grid();
    const PathSampler sampler(KernelSpec::fbm(0.7), grid);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample_serial(3, 0, 2000));
    state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_sampler_parallel(benchmark::State& state) {
    const auto grid = sampler_grid();
    const PathSampler sampler(KernelSpec::fbm(0.7), grid);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(3, 0, 2000));
    state.SetItemsProcessed(state.iterations() * 2000);
}

}  // namespace

BENCHMARK(BM_walk_positions_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_walk_positions_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_pair_replicas_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pair_replicas_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_er_ratio_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_er_ratio_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sampler_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sampler_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
