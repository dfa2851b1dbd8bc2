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

#include "dwall/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwall {

void ChainSpec::validate() const {
    if (num_qubits < 3) {
        throw std::invalid_argument("ChainSpec: num_qubits must be >= 3");
    }
    if (!std::isfinite(coupling) || coupling <= 0.0) {
        throw std::invalid_argument("ChainSpec: coupling J must be positive and finite");
    }
    if (!std::isfinite(boundary_field) || boundary_field <= coupling) {
        throw std::invalid_argument(
            "ChainSpec: boundary_field h must exceed coupling J so the "
            "single-domain-wall manifold is the ground manifold");
    }
}

bool SpinConfiguration::is_valid() const {
    return std::all_of(spins.begin(), spins.end(),
                       [](std::int8_t s) { return s == 1 || s == -1; });
}

DisorderRealization DisorderRealization::zeros(const ChainSpec& spec) {
    DisorderRealization dis;
    dis.field_errors.assign(static_cast<std::size_t>(spec.num_qubits), 0.0);
    dis.coupler_errors.assign(static_cast<std::size_t>(spec.num_qubits - 1), 0.0);
    return dis;
}

SpinConfiguration domain_wall_configuration(const ChainSpec& spec, int site) {
    if (site < 1 || site > spec.num_sites()) {
        throw std::domain_error("domain_wall_configuration: site out of range 1..D");
    }
    SpinConfiguration config;
    config.spins.resize(static_cast<std::size_t>(spec.num_qubits));
    for (int i = 0; i < spec.num_qubits; ++i) {
        config.spins[static_cast<std::size_t>(i)] = (i < site) ? 1 : -1;
    }
    return config;
}

std::pair<std::vector<double>, std::vector<double>> problem_vectors(
    const ChainSpec& spec, const DisorderRealization& dis) {
    const auto q = static_cast<std::size_t>(spec.num_qubits);
    if (dis.field_errors.size() != q || dis.coupler_errors.size() != q - 1) {
        throw DimensionError("problem_vectors: disorder lengths do not match chain");
    }
    std::vector<double> fields(dis.field_errors);
    fields.front() -= spec.boundary_field;
    fields.back() += spec.boundary_field;
    std::vector<double> couplers(q - 1, spec.coupling);
    for (std::size_t i = 0; i + 1 < q; ++i) couplers[i] += dis.coupler_errors[i];
    return {std::move(fields), std::move(couplers)};
}

double chain_energy(std::span<const double> fields, std::span<const double> couplers,
                    const SpinConfiguration& config) {
    const std::size_t q = fields.size();
    if (config.spins.size() != q || couplers.size() + 1 != q) {
        throw DimensionError("chain_energy: vector lengths inconsistent");
    }
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < q; ++i) {
        e -= couplers[i] * static_cast<double>(config.spins[i]) *
             static_cast<double>(config.spins[i + 1]);
    }
    for (std::size_t i = 0; i < q; ++i) {
        e += fields[i] * static_cast<double>(config.spins[i]);
    }
    return e;
}

double classical_energy(const ChainSpec& spec, const SpinConfiguration& config,
                        const DisorderRealization& dis) {
    if (config.size() != spec.num_qubits) {
        throw DimensionError("classical_energy: configuration length does not match chain");
    }
    auto [fields, couplers] = problem_vectors(spec, dis);
    return chain_energy(fields, couplers, config);
}

double domain_wall_field_energy(int site, std::span<const double> field_errors) {
    const int q = static_cast<int>(field_errors.size());
    if (site < 1 || site >= q) {
        throw std::domain_error("domain_wall_field_energy: site out of range 1..Q-1");
    }
    double e = 0.0;
    for (int i = 0; i < q; ++i) {
        e += (i < site) ? field_errors[static_cast<std::size_t>(i)]
                        : -field_errors[static_cast<std::size_t>(i)];
    }
    return e;
}

void sector_energies_into(const ChainSpec& spec, const DisorderRealization& dis,
                          std::span<double> out) {
    const auto q = static_cast<std::size_t>(spec.num_qubits);
    const std::size_t d = q - 1;
    if (dis.field_errors.size() != q || dis.coupler_errors.size() != d || out.size() != d) {
        throw DimensionError("sector_energies: lengths do not match chain");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < q; ++i) total += dis.field_errors[i];
    // E_n = 2 * prefix_n - total + 2 * zJ_n, constants shared by all sites dropped
    double prefix = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        prefix += dis.field_errors[n];
        out[n] = 2.0 * prefix - total + 2.0 * dis.coupler_errors[n];
    }
}

std::vector<double> sector_energies(const ChainSpec& spec, const DisorderRealization& dis) {
    std::vector<double> out(static_cast<std::size_t>(spec.num_sites()));
    sector_energies_into(spec, dis, out);
    return out;
}

std::optional<int> classify_single_domain_wall(const ChainSpec& spec,
                                               const SpinConfiguration& config) {
    if (config.size() != spec.num_qubits) return std::nullopt;
    const auto& s = config.spins;
    if (s.front() != 1 || s.back() != -1) return std::nullopt;
    int wall = 0;
    int walls = 0;
    for (int i = 0; i + 1 < spec.num_qubits; ++i) {
        if (s[static_cast<std::size_t>(i)] != s[static_cast<std::size_t>(i + 1)]) {
            wall = i + 1;  // wall on coupler (i+1, i+2) in 1-based site numbering
            ++walls;
        }
    }
    if (walls != 1) return std::nullopt;
    return wall;
}

std::uint64_t enumeration_count(const ChainSpec& spec) {
    if (spec.num_qubits > 24) {
        throw CapacityError("enumeration capped at Q = 24 (2^Q configurations)");
    }
    return std::uint64_t{1} << spec.num_qubits;
}

void configuration_from_index_into(std::uint64_t index, SpinConfiguration& config) {
    for (std::size_t i = 0; i < config.spins.size(); ++i) {
        config.spins[i] = ((index >> i) & 1u) ? -1 : 1;
    }
}

SpinConfiguration configuration_from_index(const ChainSpec& spec, std::uint64_t index) {
    SpinConfiguration config;
    config.spins.resize(static_cast<std::size_t>(spec.num_qubits));
    configuration_from_index_into(index, config);
    return config;
}

double expected_difference_covariance(int n, int m, int k, double sigma) {
    if (n == m || n == k) {
        throw std::domain_error("expected_difference_covariance: m, k must differ from n");
    }
    if ((n - k) * (n - m) < 0) return 0.0;
    const int lag = std::min(std::abs(n - k), std::abs(n - m));
    return 4.0 * sigma * sigma * static_cast<double>(lag);
}

}  // namespace dwall
