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

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dwall/chain.hpp"
#include "dwall/distribution.hpp"
#include "dwall/sampler.hpp"

namespace dwall {

/// Chimera topology: a rows x cols grid of K_{k,k} unit cells. Within cell
/// (r, c), side 0 holds the "vertical" qubits (coupled to the like-indexed
/// qubits of cells above/below) and side 1 the "horizontal" ones (coupled
/// left/right). Qubit id = ((r * cols + c) * 2 + side) * k + index. Broken
/// qubits keep their ids but lose all edges.
struct HardwareGraph {
    int rows = 0, cols = 0, cell_size = 4;
    std::vector<std::vector<int>> adjacency;  // sorted neighbor lists
    std::vector<char> is_broken;

    int num_qubits() const { return static_cast<int>(adjacency.size()); }
    int num_available() const;
    int num_edges() const;
    std::vector<int> available_qubits() const;
    bool adjacent(int a, int b) const;
    int cell_of(int qubit) const { return qubit / (2 * cell_size); }
};

HardwareGraph build_chimera(int rows, int cols, int cell_size,
                            const std::vector<int>& broken = {});

enum class EmbeddingStyle { high_density, low_density };

/// Chain embedding: consecutive path qubits are adjacent in the graph.
struct Embedding {
    std::vector<int> qubit_path;
    EmbeddingStyle style = EmbeddingStyle::high_density;
};

/// Closed qubit cycle spanning the QPU, found by seeded rotation-extension
/// search. coverage = |cycle| / available qubits.
struct MasterChain {
    std::vector<int> cycle;
    double coverage = 0.0;
};

/// Builds the master cycle; throws EmbeddingError (with the achieved
/// coverage) if less than 95% of the available qubits can be covered.
/// Unbroken grids with rows, cols >= 2 are covered fully.
MasterChain generate_master_chain(const HardwareGraph& graph, std::uint64_t seed);

/// Cuts floor(|cycle| / length) disjoint chains of exactly `length` qubits,
/// starting at `offset` along the cycle.
std::vector<Embedding> cut_chains(const MasterChain& master, int length, int offset);

/// Staircase-routed chains in which no unit cell contributes more than two
/// qubits to any single chain.
struct LowDensityResult {
    std::vector<Embedding> chains;
    int max_cell_sharing = 0;
    double mean_cell_sharing = 0.0;
};
LowDensityResult low_density_embedding(const HardwareGraph& graph, int length,
                                       std::uint64_t seed);

/// Most qubits any one unit cell contributes to the given chain.
int max_cell_sharing(const HardwareGraph& graph, const Embedding& chain);

/// Per-qubit Z2 gauge signs.
struct GaugeAssignment {
    std::vector<std::int8_t> signs;  // entries in {-1, +1}
};

GaugeAssignment identity_gauge(int num_qubits);
GaugeAssignment random_gauge(int num_qubits, std::uint64_t seed, std::uint64_t stream);

/// h'_i = g_i h_i, J'_{i,i+1} = g_i g_{i+1} J_{i,i+1}. Involution.
std::pair<std::vector<double>, std::vector<double>> apply_gauge(
    std::span<const double> fields, std::span<const double> couplers,
    const GaugeAssignment& gauge);

/// Readback side of gauge averaging: s_i -> g_i s_i. Round-trips with
/// apply_gauge.
SpinConfiguration ungauge_sample(const SpinConfiguration& sample, const GaugeAssignment& gauge);
std::vector<SpinConfiguration> ungauge_samples(const std::vector<SpinConfiguration>& samples,
                                               const GaugeAssignment& gauge);

/// Disorder-averaged distribution for chains embedded on hardware, with the
/// correlated-noise knobs of NoiseConfig active: per-unit-cell common-mode
/// fields and the per-gauge noise multiplier. Realizations cycle over the
/// provided chains; each realization optionally draws a fresh random gauge.
/// Deterministic for fixed seed.
struct EmbeddedSamplingOptions {
    bool gauge_average = true;
    int threads = 0;
};
DomainWallDistribution embedded_disorder_average(const ChainSpec& spec, const NoiseConfig& noise,
                                                 const HardwareGraph& graph,
                                                 const std::vector<Embedding>& chains,
                                                 double beta, std::uint64_t realizations,
                                                 std::uint64_t seed,
                                                 const EmbeddedSamplingOptions& opts = {});

}  // namespace dwall
