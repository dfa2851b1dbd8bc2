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

namespace dwall {

/// Background-susceptibility model parameters. schedule_ratio is
/// B(t_freeze) / (k_B T), dimensionless once energies are in units of J.
struct SusceptibilityParams {
    double chi = 0.0;
    double schedule_ratio = 1.0;
};

/// Induced terms J'_ij = chi sum_k J_ik J_jk and h'_i = chi sum_k J_ik h_k
/// for a chain problem: next-nearest couplings (length Q-2) plus induced
/// fields (length Q). Original terms are not modified.
struct InducedTerms {
    std::vector<double> fields;
    std::vector<double> next_nearest;
};
InducedTerms susceptibility_transform(std::span<const double> fields,
                                      std::span<const double> couplers, double chi);
InducedTerms susceptibility_transform(std::span<const double> fields,
                                      std::span<const double> couplers,
                                      const SusceptibilityParams& p);

/// Wall-site energies of the clean chain with the induced terms included.
/// Raises the two terminal sites by 2 chi J (h - J) relative to the interior
/// sites, which stay mutually equal.
std::vector<double> domain_wall_energies_with_susceptibility(const ChainSpec& spec,
                                                             const SusceptibilityParams& p);

/// Linear correction for background susceptibility: multiplies the terminal
/// sites by 1 + schedule_ratio * 2 chi J (h - J) (the linearized inverse of
/// the 2 chi J (h - J) terminal energy shift), then renormalizes. Throws
/// std::domain_error if the factor is not positive.
DomainWallDistribution susceptibility_correct(const DomainWallDistribution& dist,
                                              const SusceptibilityParams& p,
                                              const ChainSpec& spec);

/// Least-squares fit of sigma_zeta / T against simulated distributions.
/// Every candidate is evaluated with the same seed, so all candidates share
/// one disorder stream (common random numbers) and the residual is smooth in
/// sigma; a golden-section refinement then follows the coarse grid scan.
struct FitConfig {
    std::vector<double> grid;          // empty -> 13 points on [0, 0.6]
    std::uint64_t realizations = 100000;
    std::uint64_t seed = 1;
    double tolerance = 1e-4;           // final bracket width in sigma/T
    int threads = 0;
};
struct NoiseFitResult {
    double sigma_over_T = 0.0;
    double residual = 0.0;  // squared L2 distance at the minimizer
    std::uint64_t realizations = 0;
    bool non_convex_warning = false;
    std::vector<std::pair<double, double>> search_trace;  // (candidate, residual)
};
NoiseFitResult fit_sigma_over_T(const DomainWallDistribution& empirical, const ChainSpec& spec,
                                const FitConfig& cfg);

/// Thermal polarization of an uncoupled qubit with field error zeta:
/// <sigma^z> = P_+ - P_- = -tanh(zeta / T).
double single_qubit_polarization(double zeta_over_T);

/// Inverts the linearized relation zeta/T ~ -<sigma^z> per qubit and reports
/// the rms over qubits. Throws InputError when any |polarization| >= 1.
struct PolarizationNoiseResult {
    double sigma_over_T_rms = 0.0;
    std::vector<double> per_qubit;
};
PolarizationNoiseResult polarization_to_noise(std::span<const double> mean_polarizations);

/// Two-sided correlation spectral density of the control errors inferred
/// from a polarization time series: S_zeta(f_k) = T^2 |s_k|^2 / (N f_s).
/// `rms` integrates the spectrum (equals the series mean square by
/// Parseval); `rms_lagged` is the circular lag-1 variant that suppresses
/// sampling shot noise but vanishes for white input.
struct SpectralDensity {
    double f_sampling = 0.0;
    double temperature = 1.0;
    double nyquist_interval = 0.0;  // 2 / f_sampling
    std::vector<double> frequencies;
    std::vector<double> values;
    double rms = 0.0;
    double rms_lagged = 0.0;
};
SpectralDensity spectral_density(std::span<const double> series, double f_sampling,
                                 double temperature);

/// Ingested run log: one spin record per run, a timestamp per record, and an
/// optional shim-window id per record (empty = one window).
struct SampleLog {
    std::vector<double> timestamps;            // non-decreasing
    std::vector<SpinConfiguration> records;
    std::vector<int> shim_ids;

    std::size_t size() const { return records.size(); }
    void validate() const;  // throws InputError
    /// Timestamps where a new shim window begins (first record included).
    std::vector<double> shim_boundaries() const;
};

/// Per shim window and per qubit: mean polarization and the mean absolute
/// deviation of single runs from that window mean.
struct ShimWindowStats {
    int window = 0;
    std::size_t first_record = 0;
    std::size_t num_records = 0;
    std::vector<double> mean_polarization;
    std::vector<double> mean_abs_deviation;
};
std::vector<ShimWindowStats> shim_statistics(const SampleLog& log);

/// Domain-wall classification of every record, binned by shim window.
struct TimeBin {
    int window = 0;
    double t_begin = 0.0, t_end = 0.0;
    std::vector<std::uint64_t> site_counts;  // length D
    std::uint64_t out_of_sector = 0;
    std::uint64_t num_records = 0;
};
struct DomainWallTimeSeries {
    std::vector<TimeBin> bins;
    std::vector<int> site_per_record;  // 0 = out of sector, else 1..D
    std::uint64_t out_of_sector_total = 0;
    double mean_chain_polarization = 0.0;
    double chain_polarization_std = 0.0;
    /// Expected per-record chain-polarization spread if walls were uniform:
    /// sqrt(4 Var(n) / Q^2), Var(n) = (D^2 - 1)/12.
    double expected_uniform_std = 0.0;
};
DomainWallTimeSeries domain_wall_time_series(const SampleLog& log, const ChainSpec& spec);

}  // namespace dwall
