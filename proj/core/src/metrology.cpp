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

#include "dwall/metrology.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "dwall/sampler.hpp"

namespace dwall {

InducedTerms susceptibility_transform(std::span<const double> fields,
                                      std::span<const double> couplers, double chi) {
    const std::size_t q = fields.size();
    if (couplers.size() + 1 != q) {
        throw DimensionError("susceptibility_transform: vector lengths inconsistent");
    }
    InducedTerms t;
    t.fields.assign(q, 0.0);
    t.next_nearest.assign(q >= 2 ? q - 2 : 0, 0.0);
    for (std::size_t i = 0; i < q; ++i) {
        double s = 0.0;
        if (i > 0) s += couplers[i - 1] * fields[i - 1];
        if (i + 1 < q) s += couplers[i] * fields[i + 1];
        t.fields[i] = chi * s;
    }
    for (std::size_t i = 0; i + 2 < q; ++i) {
        t.next_nearest[i] = chi * couplers[i] * couplers[i + 1];
    }
    return t;
}

InducedTerms susceptibility_transform(std::span<const double> fields,
                                      std::span<const double> couplers,
                                      const SusceptibilityParams& p) {
    return susceptibility_transform(fields, couplers, p.chi);
}

std::vector<double> domain_wall_energies_with_susceptibility(const ChainSpec& spec,
                                                             const SusceptibilityParams& p) {
    spec.validate();
    const auto dis = DisorderRealization::zeros(spec);
    auto [fields, couplers] = problem_vectors(spec, dis);
    const InducedTerms induced = susceptibility_transform(fields, couplers, p.chi);
    const int d = spec.num_sites();
    std::vector<double> energies(static_cast<std::size_t>(d));
    for (int n = 1; n <= d; ++n) {
        const SpinConfiguration config = domain_wall_configuration(spec, n);
        double e = chain_energy(fields, couplers, config);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            e += induced.fields[i] * static_cast<double>(config.spins[i]);
        }
        for (std::size_t i = 0; i < induced.next_nearest.size(); ++i) {
            e -= induced.next_nearest[i] * static_cast<double>(config.spins[i]) *
                 static_cast<double>(config.spins[i + 2]);
        }
        energies[static_cast<std::size_t>(n - 1)] = e;
    }
    return energies;
}

DomainWallDistribution susceptibility_correct(const DomainWallDistribution& dist,
                                              const SusceptibilityParams& p,
                                              const ChainSpec& spec) {
    spec.validate();
    if (dist.num_sites() != spec.num_sites()) {
        throw DimensionError("susceptibility_correct: distribution does not match chain");
    }
    if (dist.num_sites() < 3) {
        throw std::domain_error("susceptibility_correct: need D >= 3");
    }
    // The transform raises the terminal wall energies by 2 chi J (h - J), so
    // the linearized Boltzmann inverse carries the same coefficient.
    const double factor = 1.0 + p.schedule_ratio * 2.0 * p.chi * spec.coupling *
                                    (spec.boundary_field - spec.coupling);
    if (!(factor > 0.0)) {
        throw std::domain_error("susceptibility_correct: correction factor must be positive");
    }
    DomainWallDistribution out = dist;
    if (factor == 1.0) {
        out.diagnostics["susceptibility_factor"] = factor;
        return out;
    }
    out.probs.front() *= factor;
    out.probs.back() *= factor;
    out.stderrs.front() *= factor;
    out.stderrs.back() *= factor;
    double sum = 0.0;
    for (double v : out.probs) sum += v;
    for (auto& v : out.probs) v /= sum;
    for (auto& v : out.stderrs) v /= sum;
    out.provenance = dist.provenance + "+susceptibility_correct";
    out.diagnostics["susceptibility_factor"] = factor;
    return out;
}

namespace {

double fit_residual(const DomainWallDistribution& empirical, const ChainSpec& spec,
                    const FitConfig& cfg, double candidate) {
    NoiseConfig noise;
    noise.field_sigma = candidate;
    AverageOptions opts;
    opts.threads = cfg.threads;
    const DomainWallDistribution model = disorder_averaged_distribution(
        spec, noise, 1.0, cfg.realizations, cfg.seed, opts);
    return l2_distance_sq(model, empirical);
}

}  // namespace

NoiseFitResult fit_sigma_over_T(const DomainWallDistribution& empirical, const ChainSpec& spec,
                                const FitConfig& cfg) {
    spec.validate();
    if (empirical.num_sites() != spec.num_sites()) {
        throw InputError("fit_sigma_over_T: empirical distribution does not match chain");
    }
    empirical.validate(1e-6);

    std::vector<double> grid = cfg.grid;
    if (grid.empty()) {
        for (int i = 0; i <= 12; ++i) grid.push_back(0.05 * i);
    }
    if (grid.size() < 2) throw InputError("fit_sigma_over_T: grid needs at least 2 points");
    std::sort(grid.begin(), grid.end());
    for (double g : grid) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw InputError("fit_sigma_over_T: grid values must be finite and >= 0");
        }
    }

    NoiseFitResult result;
    result.realizations = cfg.realizations;
    auto eval = [&](double s) {
        const double r = fit_residual(empirical, spec, cfg, s);
        result.search_trace.emplace_back(s, r);
        return r;
    };

    std::vector<double> grid_res;
    grid_res.reserve(grid.size());
    for (double g : grid) grid_res.push_back(eval(g));

    int minima = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool left_up = i == 0 || grid_res[i - 1] > grid_res[i];
        const bool right_up = i + 1 == grid.size() || grid_res[i + 1] > grid_res[i];
        if (left_up && right_up) ++minima;
    }
    result.non_convex_warning = minima > 1;

    const std::size_t best_i = static_cast<std::size_t>(
        std::min_element(grid_res.begin(), grid_res.end()) - grid_res.begin());
    double a = grid[best_i == 0 ? 0 : best_i - 1];
    double b = grid[std::min(best_i + 1, grid.size() - 1)];

    // Golden-section refinement inside the bracket; CRN keeps the landscape
    // identical for every candidate.
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > cfg.tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }

    const auto best = std::min_element(
        result.search_trace.begin(), result.search_trace.end(),
        [](const auto& x, const auto& y) { return x.second < y.second; });
    result.sigma_over_T = best->first;
    result.residual = best->second;
    return result;
}

double single_qubit_polarization(double zeta_over_T) { return -std::tanh(zeta_over_T); }

PolarizationNoiseResult polarization_to_noise(std::span<const double> mean_polarizations) {
    if (mean_polarizations.empty()) {
        throw InputError("polarization_to_noise: no qubits");
    }
    PolarizationNoiseResult r;
    r.per_qubit.reserve(mean_polarizations.size());
    double sq = 0.0;
    for (double p : mean_polarizations) {
        if (!(std::abs(p) < 1.0)) {
            throw InputError("polarization_to_noise: |polarization| must be < 1");
        }
        r.per_qubit.push_back(-p);
        sq += p * p;
    }
    r.sigma_over_T_rms = std::sqrt(sq / static_cast<double>(mean_polarizations.size()));
    return r;
}

SpectralDensity spectral_density(std::span<const double> series, double f_sampling,
                                 double temperature) {
    const std::size_t n = series.size();
    if (n < 2) throw InputError("spectral_density: need at least 2 samples");
    if (!(f_sampling > 0.0)) throw InputError("spectral_density: f_sampling must be positive");
    for (double v : series) {
        if (!std::isfinite(v)) throw InputError("spectral_density: non-finite sample");
    }

    std::vector<double> in(series.begin(), series.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    {
        // FFTW planning is not thread safe.
        static std::mutex plan_mutex;
        std::unique_lock lock(plan_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                              reinterpret_cast<fftw_complex*>(out.data()),
                                              FFTW_ESTIMATE);
        lock.unlock();
        fftw_execute(plan);
        lock.lock();
        fftw_destroy_plan(plan);
    }

    SpectralDensity s;
    s.f_sampling = f_sampling;
    s.temperature = temperature;
    s.nyquist_interval = 2.0 / f_sampling;
    s.frequencies.resize(n);
    s.values.resize(n);
    const double t2 = temperature * temperature;
    const double norm = t2 / (static_cast<double>(n) * f_sampling);
    std::vector<double> power(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kk = k <= n / 2 ? k : n - k;  // hermitian symmetry
        power[k] = std::norm(out[kk]);
        s.frequencies[k] = static_cast<double>(k) * f_sampling / static_cast<double>(n);
        s.values[k] = norm * power[k];
    }

    double integral = 0.0;  // sum_k S(f_k) * f_s / N = T^2 <s^2> by Parseval
    double lagged = 0.0;
    const double two_pi_over_n = 2.0 * M_PI / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        integral += s.values[k];
        lagged += power[k] * std::cos(two_pi_over_n * static_cast<double>(k));
    }
    integral *= f_sampling / static_cast<double>(n);
    s.rms = std::sqrt(std::max(0.0, integral));
    lagged *= t2 / (static_cast<double>(n) * static_cast<double>(n));
    s.rms_lagged = lagged >= 0.0 ? std::sqrt(lagged) : -std::sqrt(-lagged);
    return s;
}

void SampleLog::validate() const {
    if (records.empty()) throw InputError("sample log: no records");
    if (timestamps.size() != records.size()) {
        throw InputError("sample log: timestamp count does not match records");
    }
    if (!shim_ids.empty() && shim_ids.size() != records.size()) {
        throw InputError("sample log: shim column does not match records");
    }
    for (std::size_t i = 0; i + 1 < timestamps.size(); ++i) {
        if (timestamps[i + 1] < timestamps[i]) {
            throw InputError("sample log: timestamps must be non-decreasing");
        }
    }
    const std::size_t q = records.front().spins.size();
    for (const auto& r : records) {
        if (r.spins.size() != q || !r.is_valid()) {
            throw InputError("sample log: malformed spin record");
        }
    }
}

std::vector<double> SampleLog::shim_boundaries() const {
    validate();
    std::vector<double> out{timestamps.front()};
    for (std::size_t i = 1; i < shim_ids.size(); ++i) {
        if (shim_ids[i] != shim_ids[i - 1]) out.push_back(timestamps[i]);
    }
    return out;
}

namespace {

/// Records grouped into runs of equal shim id (single group if absent).
std::vector<std::pair<std::size_t, std::size_t>> shim_windows(const SampleLog& log) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    if (log.shim_ids.empty()) {
        spans.emplace_back(0, log.size());
        return spans;
    }
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= log.size(); ++i) {
        if (i == log.size() || log.shim_ids[i] != log.shim_ids[begin]) {
            spans.emplace_back(begin, i);
            begin = i;
        }
    }
    return spans;
}

}  // namespace

std::vector<ShimWindowStats> shim_statistics(const SampleLog& log) {
    log.validate();
    const std::size_t q = log.records.front().spins.size();
    std::vector<ShimWindowStats> out;
    int window = 0;
    for (auto [begin, end] : shim_windows(log)) {
        ShimWindowStats st;
        st.window = log.shim_ids.empty() ? window : log.shim_ids[begin];
        st.first_record = begin;
        st.num_records = end - begin;
        st.mean_polarization.assign(q, 0.0);
        st.mean_abs_deviation.assign(q, 0.0);
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t i = 0; i < q; ++i) {
                st.mean_polarization[i] += static_cast<double>(log.records[r].spins[i]);
            }
        }
        for (auto& v : st.mean_polarization) v /= static_cast<double>(st.num_records);
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t i = 0; i < q; ++i) {
                st.mean_abs_deviation[i] += std::abs(
                    static_cast<double>(log.records[r].spins[i]) - st.mean_polarization[i]);
            }
        }
        for (auto& v : st.mean_abs_deviation) v /= static_cast<double>(st.num_records);
        out.push_back(std::move(st));
        ++window;
    }
    return out;
}

DomainWallTimeSeries domain_wall_time_series(const SampleLog& log, const ChainSpec& spec) {
    log.validate();
    spec.validate();
    const std::size_t q = log.records.front().spins.size();
    if (static_cast<int>(q) != spec.num_qubits) {
        throw DimensionError("domain_wall_time_series: record length does not match chain");
    }
    DomainWallTimeSeries ts;
    ts.site_per_record.reserve(log.size());
    const std::size_t d = static_cast<std::size_t>(spec.num_sites());

    double pol_sum = 0.0, pol_sq = 0.0;
    for (const auto& rec : log.records) {
        double m = 0.0;
        for (auto s : rec.spins) m += static_cast<double>(s);
        m /= static_cast<double>(q);
        pol_sum += m;
        pol_sq += m * m;
        const auto site = classify_single_domain_wall(spec, rec);
        ts.site_per_record.push_back(site ? *site : 0);
        if (!site) ++ts.out_of_sector_total;
    }
    const double n_rec = static_cast<double>(log.size());
    ts.mean_chain_polarization = pol_sum / n_rec;
    ts.chain_polarization_std =
        std::sqrt(std::max(0.0, pol_sq / n_rec - ts.mean_chain_polarization *
                                                    ts.mean_chain_polarization));
    const double dd = static_cast<double>(spec.num_sites());
    ts.expected_uniform_std = std::sqrt(4.0 * (dd * dd - 1.0) / 12.0) /
                              static_cast<double>(spec.num_qubits);

    int window = 0;
    for (auto [begin, end] : shim_windows(log)) {
        TimeBin bin;
        bin.window = log.shim_ids.empty() ? window : log.shim_ids[begin];
        bin.t_begin = log.timestamps[begin];
        bin.t_end = log.timestamps[end - 1];
        bin.site_counts.assign(d, 0);
        bin.num_records = end - begin;
        for (std::size_t r = begin; r < end; ++r) {
            const int site = ts.site_per_record[r];
            if (site == 0) {
                ++bin.out_of_sector;
            } else {
                ++bin.site_counts[static_cast<std::size_t>(site - 1)];
            }
        }
        ts.bins.push_back(std::move(bin));
        ++window;
    }
    return ts;
}

}  // namespace dwall
