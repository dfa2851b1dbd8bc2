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

#include "dwall/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwall/rng.hpp"
#include "parallel.hpp"

namespace dwall {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

void softmax_into(std::span<const double> energies, double beta, std::span<double> out) {
    double lo = energies[0];
    for (double e : energies) lo = std::min(lo, e);
    double z = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        out[i] = std::exp(-beta * (energies[i] - lo));
        z += out[i];
    }
    for (std::size_t i = 0; i < energies.size(); ++i) out[i] /= z;
}

}  // namespace

void NoiseConfig::validate() const {
    auto ok = [](double s) { return std::isfinite(s) && s >= 0.0; };
    if (!ok(field_sigma) || !ok(coupler_sigma) || !ok(cell_common_sigma)) {
        throw std::invalid_argument("NoiseConfig: sigmas must be finite and non-negative");
    }
    if (!std::isfinite(ferro_noise_scale)) {
        throw std::invalid_argument("NoiseConfig: ferro_noise_scale must be finite");
    }
}

void draw_disorder_into(const ChainSpec& spec, const NoiseConfig& noise, std::uint64_t seed,
                        std::uint64_t index, DisorderRealization& dis) {
    const auto q = static_cast<std::size_t>(spec.num_qubits);
    dis.field_errors.resize(q);
    dis.coupler_errors.resize(q - 1);
    StreamRng rng(seed, index);
    const bool gauss = noise.kind == NoiseKind::gaussian;
    for (std::size_t i = 0; i < q; ++i) {
        dis.field_errors[i] = noise.field_sigma * (gauss ? rng.gaussian() : rng.sign());
    }
    for (std::size_t i = 0; i + 1 < q; ++i) {
        dis.coupler_errors[i] = noise.coupler_sigma * (gauss ? rng.gaussian() : rng.sign());
    }
}

DisorderRealization draw_disorder(const ChainSpec& spec, const NoiseConfig& noise,
                                  std::uint64_t seed, std::uint64_t index) {
    spec.validate();
    noise.validate();
    DisorderRealization dis;
    draw_disorder_into(spec, noise, seed, index, dis);
    return dis;
}

DomainWallDistribution sector_boltzmann(std::span<const double> energies, double beta) {
    if (energies.empty()) throw std::domain_error("sector_boltzmann: empty energy vector");
    if (!(beta >= 0.0)) throw std::domain_error("sector_boltzmann: beta must be >= 0");
    for (double e : energies) {
        if (!std::isfinite(e)) throw std::domain_error("sector_boltzmann: non-finite energy");
    }
    DomainWallDistribution d;
    d.probs.resize(energies.size());
    d.stderrs.assign(energies.size(), 0.0);
    d.beta = beta;
    d.provenance = "sector";
    softmax_into(energies, beta, d.probs);
    return d;
}

DomainWallDistribution disorder_averaged_distribution(const ChainSpec& spec,
                                                      const NoiseConfig& noise, double beta,
                                                      std::uint64_t realizations,
                                                      std::uint64_t seed,
                                                      const AverageOptions& opts) {
    spec.validate();
    noise.validate();
    if (realizations < 1) {
        throw std::invalid_argument("disorder_averaged_distribution: need M >= 1");
    }
    const auto d = static_cast<std::size_t>(spec.num_sites());
    if (!opts.site_energy_offsets.empty() && opts.site_energy_offsets.size() != d) {
        throw DimensionError("disorder_averaged_distribution: offset length != sites");
    }

    // With both sigmas zero every realization is identical; evaluate once so
    // the result is exact (uniform with zero stderr in the offset-free case).
    if (noise.field_sigma == 0.0 && noise.coupler_sigma == 0.0) {
        std::vector<double> energies(d, 0.0);
        if (!opts.site_energy_offsets.empty()) {
            for (std::size_t n = 0; n < d; ++n) energies[n] = opts.site_energy_offsets[n];
        }
        DomainWallDistribution out = sector_boltzmann(energies, beta);
        out.realizations = realizations;
        out.provenance = "disorder_average";
        return out;
    }

    const std::uint64_t num_blocks = (realizations + kBlockSize - 1) / kBlockSize;
    std::vector<std::vector<double>> sums(num_blocks), sqsums(num_blocks);

    detail::for_each_block(
        realizations, kBlockSize, opts.threads,
        [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
            std::vector<double>& s = sums[block];
            std::vector<double>& s2 = sqsums[block];
            s.assign(d, 0.0);
            s2.assign(d, 0.0);
            DisorderRealization dis;
            std::vector<double> energies(d), probs(d);
            for (std::uint64_t r = begin; r < end; ++r) {
                draw_disorder_into(spec, noise, seed, r, dis);
                sector_energies_into(spec, dis, energies);
                if (!opts.site_energy_offsets.empty()) {
                    for (std::size_t n = 0; n < d; ++n) {
                        energies[n] += opts.site_energy_offsets[n];
                    }
                }
                softmax_into(energies, beta, probs);
                for (std::size_t n = 0; n < d; ++n) {
                    s[n] += probs[n];
                    s2[n] += probs[n] * probs[n];
                }
            }
        });

    DomainWallDistribution out;
    out.probs.assign(d, 0.0);
    out.stderrs.assign(d, 0.0);
    out.realizations = realizations;
    out.beta = beta;
    out.provenance = "disorder_average";
    for (std::uint64_t b = 0; b < num_blocks; ++b) {
        for (std::size_t n = 0; n < d; ++n) {
            out.probs[n] += sums[b][n];
            out.stderrs[n] += sqsums[b][n];
        }
    }
    const double m = static_cast<double>(realizations);
    for (std::size_t n = 0; n < d; ++n) {
        const double mean = out.probs[n] / m;
        out.probs[n] = mean;
        if (realizations > 1) {
            const double var = std::max(0.0, (out.stderrs[n] - m * mean * mean) / (m - 1.0));
            out.stderrs[n] = std::sqrt(var / m);
        } else {
            out.stderrs[n] = 0.0;
        }
    }
    return out;
}

FullBoltzmann full_boltzmann_exact(const ChainSpec& spec, const DisorderRealization& dis,
                                   double beta) {
    spec.validate();
    if (spec.num_qubits > 20) {
        throw CapacityError("full_boltzmann_exact capped at Q = 20");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("full_boltzmann_exact: beta must be finite and >= 0");
    }
    auto [fields, couplers] = problem_vectors(spec, dis);
    const std::uint64_t count = std::uint64_t{1} << spec.num_qubits;

    std::vector<double> energy(count);
    SpinConfiguration config;
    config.spins.resize(static_cast<std::size_t>(spec.num_qubits));
    double lo = 0.0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        configuration_from_index_into(idx, config);
        energy[idx] = chain_energy(fields, couplers, config);
        lo = idx == 0 ? energy[idx] : std::min(lo, energy[idx]);
    }

    FullBoltzmann fb;
    fb.state_probs.resize(count);
    double z = 0.0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        fb.state_probs[idx] = std::exp(-beta * (energy[idx] - lo));
        z += fb.state_probs[idx];
    }
    for (std::uint64_t idx = 0; idx < count; ++idx) fb.state_probs[idx] /= z;

    // Wall at site n: qubits 1..n up (bits clear), n+1..Q down (bits set).
    const std::size_t d = static_cast<std::size_t>(spec.num_sites());
    fb.conditional.probs.resize(d);
    fb.conditional.stderrs.assign(d, 0.0);
    fb.conditional.beta = beta;
    fb.conditional.provenance = "full";
    double sector = 0.0;
    for (std::size_t n = 1; n <= d; ++n) {
        const std::uint64_t idx = ((count - 1) >> n) << n;
        fb.conditional.probs[n - 1] = fb.state_probs[idx];
        sector += fb.state_probs[idx];
    }
    for (std::size_t n = 0; n < d; ++n) fb.conditional.probs[n] /= sector;
    fb.sector_weight = sector;
    fb.conditional.diagnostics["sector_weight"] = sector;
    return fb;
}

QuantumBoltzmann quantum_boltzmann(const ChainSpec& spec, const DisorderRealization& dis,
                                   double beta, double transverse_a, double problem_b) {
    spec.validate();
    if (spec.num_qubits > 12) {
        throw CapacityError("quantum_boltzmann capped at Q = 12 (dense 2^Q eigenproblem)");
    }
    if (!std::isfinite(beta) || !(beta >= 0.0) || !std::isfinite(transverse_a) ||
        !std::isfinite(problem_b)) {
        throw std::domain_error("quantum_boltzmann: non-finite or negative-beta input");
    }
    for (double z : dis.field_errors) {
        if (!std::isfinite(z)) throw std::domain_error("quantum_boltzmann: non-finite disorder");
    }
    for (double z : dis.coupler_errors) {
        if (!std::isfinite(z)) throw std::domain_error("quantum_boltzmann: non-finite disorder");
    }
    auto [fields, couplers] = problem_vectors(spec, dis);
    const int q = spec.num_qubits;
    const std::int64_t dim = std::int64_t{1} << q;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    SpinConfiguration config;
    config.spins.resize(static_cast<std::size_t>(q));
    for (std::int64_t b = 0; b < dim; ++b) {
        configuration_from_index_into(static_cast<std::uint64_t>(b), config);
        h(b, b) = problem_b * chain_energy(fields, couplers, config);
        for (int i = 0; i < q; ++i) {
            h(b, b ^ (std::int64_t{1} << i)) = -transverse_a;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("quantum_boltzmann: eigendecomposition failed");
    }
    const Eigen::VectorXd& vals = es.eigenvalues();
    Eigen::VectorXd w(dim);
    const double lo = vals.minCoeff();
    for (std::int64_t k = 0; k < dim; ++k) w(k) = std::exp(-beta * (vals(k) - lo));
    const double z = w.sum();

    // p_z = sum_k w_k |<z|k>|^2 / Z
    Eigen::VectorXd pz = (es.eigenvectors().array().square().matrix() * w) / z;

    const std::size_t d = static_cast<std::size_t>(spec.num_sites());
    QuantumBoltzmann out;
    out.conditional.probs.resize(d);
    out.conditional.stderrs.assign(d, 0.0);
    out.conditional.beta = beta;
    out.conditional.provenance = "quantum";
    double sector = 0.0;
    for (std::size_t n = 1; n <= d; ++n) {
        const std::int64_t idx = ((dim - 1) >> n) << n;
        out.conditional.probs[n - 1] = pz(idx);
        sector += pz(idx);
    }
    for (std::size_t n = 0; n < d; ++n) out.conditional.probs[n] /= sector;
    out.sector_weight = sector;
    out.conditional.diagnostics["sector_weight"] = sector;
    return out;
}

}  // namespace dwall
