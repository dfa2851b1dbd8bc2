// Copyright 2026 The dwall Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dwall/analytic.hpp"
#include "dwall/chimera.hpp"
#include "dwall/metrology.hpp"
#include "dwall/rng.hpp"
#include "dwall/sampler.hpp"

using namespace dwall;

namespace {

void BM_DisorderAverage(benchmark::State& state) {
    const ChainSpec spec{static_cast<int>(state.range(0)), 1.0, 2.0};
    NoiseConfig noise;
    noise.field_sigma = 0.2363;
    AverageOptions opts;
    opts.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            disorder_averaged_distribution(spec, noise, 1.0, 10000, 1, opts));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_DisorderAverage)->Arg(10)->Arg(50);

void BM_SectorEnergies(benchmark::State& state) {
    const ChainSpec spec{static_cast<int>(state.range(0)), 1.0, 2.0};
    NoiseConfig noise;
    noise.field_sigma = 0.3;
    const auto dis = draw_disorder(spec, noise, 1, 0);
    std::vector<double> out(static_cast<std::size_t>(spec.num_sites()));
    for (auto _ : state) {
        sector_energies_into(spec, dis, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SectorEnergies)->Arg(10)->Arg(50);

void BM_FullBoltzmann(benchmark::State& state) {
    const ChainSpec spec{static_cast<int>(state.range(0)), 1.0, 2.0};
    NoiseConfig noise;
    noise.field_sigma = 0.3;
    const auto dis = draw_disorder(spec, noise, 2, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_boltzmann_exact(spec, dis, 1.0));
    }
}
BENCHMARK(BM_FullBoltzmann)->Arg(10)->Arg(14);

void BM_QuantumBoltzmann(benchmark::State& state) {
    const ChainSpec spec{static_cast<int>(state.range(0)), 1.0, 2.0};
    NoiseConfig noise;
    noise.field_sigma = 0.3;
    const auto dis = draw_disorder(spec, noise, 3, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum_boltzmann(spec, dis, 1.0, 0.01, 1.0));
    }
}
BENCHMARK(BM_QuantumBoltzmann)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MeanField(benchmark::State& state) {
    const ChainSpec spec{10, 1.0, 2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mean_field_finite_t(spec, 0.2, 1.0));
    }
}
BENCHMARK(BM_MeanField);

void BM_MasterChain(benchmark::State& state) {
    const auto grid = build_chimera(8, 8, 4);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_master_chain(grid, seed++));
    }
    state.SetLabel("8x8x4");
}
BENCHMARK(BM_MasterChain)->Unit(benchmark::kMillisecond);

void BM_SpectralDensity(benchmark::State& state) {
    StreamRng rng(1, 1);
    std::vector<double> series(static_cast<std::size_t>(state.range(0)));
    for (auto& v : series) v = rng.gaussian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_density(series, 1.0, 1.0));
    }
}
BENCHMARK(BM_SpectralDensity)->Arg(1 << 14);

}  // namespace

BENCHMARK_MAIN();
