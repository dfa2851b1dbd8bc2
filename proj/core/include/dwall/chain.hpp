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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dwall/errors.hpp"

namespace dwall {

/// Ferromagnetic chain of Q qubits with opposing fields on its ends:
///
///   H = -sum_i (J + zJ_i) s_i s_{i+1}  - h s_1 + h s_Q
///       + sum_i z_i s_i
///
/// where z_i are per-qubit field control errors and zJ_i perturb the coupling
/// constants. The boundary fields pin s_1 = +1 and s_Q = -1 (the opposite
/// convention is a global spin flip with identical statistics). For h > J the
/// ground manifold consists of the D = Q-1 single-domain-wall states; wall
/// site n means the wall sits on coupler (n, n+1), n = 1..D.
///
/// J is the unit of energy: h, field errors, and temperature are all
/// expressed in units of J.
struct ChainSpec {
    int num_qubits = 10;
    double coupling = 1.0;        // J > 0
    double boundary_field = 2.0;  // h > J

    int num_sites() const { return num_qubits - 1; }

    /// Throws std::invalid_argument unless Q >= 3, J > 0, h > J, all finite.
    void validate() const;
};

struct SpinConfiguration {
    std::vector<std::int8_t> spins;  // every entry exactly +1 or -1

    SpinConfiguration() = default;
    explicit SpinConfiguration(std::vector<std::int8_t> s) : spins(std::move(s)) {}

    int size() const { return static_cast<int>(spins.size()); }
    bool is_valid() const;
    bool operator==(const SpinConfiguration&) const = default;
};

/// One draw of the control errors for a specific chain.
struct DisorderRealization {
    std::vector<double> field_errors;    // zeta_i, length Q
    std::vector<double> coupler_errors;  // zeta^J_i, length Q-1

    static DisorderRealization zeros(const ChainSpec& spec);
};

/// The unique single-domain-wall configuration at `site` in 1..D: spins
/// 1..site = +1 and site+1..Q = -1.
SpinConfiguration domain_wall_configuration(const ChainSpec& spec, int site);

/// Per-qubit field vector and per-bond coupler vector of the disordered
/// problem, in the convention H = -sum K_i s_i s_{i+1} + sum f_i s_i.
std::pair<std::vector<double>, std::vector<double>> problem_vectors(
    const ChainSpec& spec, const DisorderRealization& dis);

/// H = -sum_i couplers[i] s_i s_{i+1} + sum_i fields[i] s_i.
/// Generic evaluator shared by the disordered, gauged, and susceptibility
/// variants of the problem; throws DimensionError on length mismatch.
double chain_energy(std::span<const double> fields, std::span<const double> couplers,
                    const SpinConfiguration& config);

/// Exact classical energy of `config` under the disordered Hamiltonian.
double classical_energy(const ChainSpec& spec, const SpinConfiguration& config,
                        const DisorderRealization& dis);

/// Field-error energy of the wall at `site`:
///   E_n = sum_i sign(n - i + 0.5) z_i
/// and hence E_n - E_m = 2 sum_{i=m+1}^{n} z_i for n > m.
double domain_wall_field_energy(int site, std::span<const double> field_errors);

/// Relative energies of the D single-domain-wall states (common constants
/// dropped; only differences enter Boltzmann weights). A coupler error zJ_n
/// shifts E_n by +2 zJ_n relative to the other sites and nothing else.
void sector_energies_into(const ChainSpec& spec, const DisorderRealization& dis,
                          std::span<double> out);
std::vector<double> sector_energies(const ChainSpec& spec, const DisorderRealization& dis);

/// Wall site if `config` is exactly a single-domain-wall state respecting the
/// boundary pinning, otherwise nullopt.
std::optional<int> classify_single_domain_wall(const ChainSpec& spec,
                                               const SpinConfiguration& config);

/// Number of configurations 2^Q; throws CapacityError for Q > 24.
std::uint64_t enumeration_count(const ChainSpec& spec);

/// Configuration for enumeration index 0 <= idx < 2^Q: qubit i is +1 when bit
/// i of idx is clear, -1 when set.
SpinConfiguration configuration_from_index(const ChainSpec& spec, std::uint64_t index);
void configuration_from_index_into(std::uint64_t index, SpinConfiguration& config);

/// Visits all 2^Q configurations exactly once (Q <= 24).
template <typename F>
void for_each_configuration(const ChainSpec& spec, F&& fn) {
    const std::uint64_t count = enumeration_count(spec);
    SpinConfiguration config;
    config.spins.resize(static_cast<std::size_t>(spec.num_qubits));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        configuration_from_index_into(idx, config);
        fn(idx, config);
    }
}

/// Ensemble covariance of wall-energy differences under i.i.d. fields with
/// standard deviation sigma:
///   <(E_n - E_m)(E_n - E_k)> = 4 sigma^2 min(|n-k|, |n-m|) Theta[(n-k)(n-m)]
double expected_difference_covariance(int n, int m, int k, double sigma);

}  // namespace dwall
