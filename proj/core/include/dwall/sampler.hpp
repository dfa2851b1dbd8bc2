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
#include <vector>

#include "dwall/chain.hpp"
#include "dwall/distribution.hpp"

namespace dwall {

enum class NoiseKind { gaussian, binary };

/// Control-error model. `binary` means p(z) = (1/2)[delta(z - sigma) +
/// delta(z + sigma)]. Sigmas are energies in units of J.
struct NoiseConfig {
    double field_sigma = 0.0;
    double coupler_sigma = 0.0;
    NoiseKind kind = NoiseKind::gaussian;

    // Hardware-bias knobs used only by embedded sampling (chimera.hpp): a
    // common-mode field shared by the qubits of a unit cell within each
    // realization (correlated noise that gauge averaging decorrelates), and a
    // per-gauge noise multiplier 1 + ferro_noise_scale * (ferro bond fraction).
    double cell_common_sigma = 0.0;
    double ferro_noise_scale = 0.0;

    void validate() const;
};

/// Deterministic function of (seed, index): realization `index` draws its
/// Q field errors first, then its Q-1 coupler errors, from stream
/// (seed, index). Raw unit-variance draws are scaled by the sigmas, so two
/// candidates that differ only in sigma share the same underlying stream
/// (common random numbers).
DisorderRealization draw_disorder(const ChainSpec& spec, const NoiseConfig& noise,
                                  std::uint64_t seed, std::uint64_t index);
void draw_disorder_into(const ChainSpec& spec, const NoiseConfig& noise, std::uint64_t seed,
                        std::uint64_t index, DisorderRealization& dis);

/// P_n = exp(-beta E_n) / sum_m exp(-beta E_m), computed in log space with
/// max subtraction. Throws std::domain_error on empty input or beta < 0.
DomainWallDistribution sector_boltzmann(std::span<const double> energies, double beta);

struct AverageOptions {
    int threads = 0;  // 0 -> hardware concurrency
    /// Optional per-site energy shift added to every realization's sector
    /// energies (e.g. susceptibility-induced terminal shifts). Empty = none.
    std::vector<double> site_energy_offsets;
};

/// Mean of sector_boltzmann over M independent realizations; stderrs are
/// standard deviations of the mean. Realizations are processed in fixed-size
/// blocks reduced in index order, so the result is bit-identical for any
/// thread count.
DomainWallDistribution disorder_averaged_distribution(const ChainSpec& spec,
                                                      const NoiseConfig& noise, double beta,
                                                      std::uint64_t realizations,
                                                      std::uint64_t seed,
                                                      const AverageOptions& opts = {});

/// Exact Boltzmann state over all 2^Q configurations (Q <= 20).
struct FullBoltzmann {
    std::vector<double> state_probs;     // indexed by configuration_from_index order
    DomainWallDistribution conditional;  // restriction to the single-wall sector
    double sector_weight = 0.0;          // total probability of the sector
};
FullBoltzmann full_boltzmann_exact(const ChainSpec& spec, const DisorderRealization& dis,
                                   double beta);

/// Thermal state of H = -A sum_i sigma^x_i + B (H_prob + H_errors) via dense
/// symmetric eigendecomposition (Q <= 12), measured in the z basis.
/// `sector_weight` shows when the single-wall restriction is unjustified.
struct QuantumBoltzmann {
    DomainWallDistribution conditional;
    double sector_weight = 0.0;
};
QuantumBoltzmann quantum_boltzmann(const ChainSpec& spec, const DisorderRealization& dis,
                                   double beta, double transverse_a, double problem_b);

}  // namespace dwall
