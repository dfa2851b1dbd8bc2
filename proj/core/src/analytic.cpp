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

#include "dwall/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dwall/sampler.hpp"

namespace dwall {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
}

DomainWallDistribution high_t_distribution(const HighTParams& p) {
    if (p.sites < 2) throw std::domain_error("high_t_distribution: need D >= 2");
    if (!(p.beta >= 0.0) || !(p.zeta_sq >= 0.0)) {
        throw std::domain_error("high_t_distribution: beta and zeta_sq must be >= 0");
    }
    const double n_sites = static_cast<double>(p.sites);
    const double b2z2 = p.beta * p.beta * p.zeta_sq;
    const double ptilde =
        1.0 / n_sites - b2z2 / (n_sites * n_sites * n_sites) *
                            (1.25 * n_sites * n_sites * n_sites + n_sites * n_sites +
                             n_sites / 6.0 + 1.0);

    DomainWallDistribution d;
    d.probs.resize(static_cast<std::size_t>(p.sites));
    d.stderrs.assign(static_cast<std::size_t>(p.sites), 0.0);
    d.beta = p.beta;
    d.provenance = "high_t";
    bool clamped = false;
    double sum = 0.0;
    for (int n = 1; n <= p.sites; ++n) {
        const double x = static_cast<double>(n) - (n_sites + 1.0) / 2.0;
        double v = ptilde + b2z2 * (2.0 / (n_sites * n_sites)) * x * x;
        if (v < 0.0) {
            v = 0.0;
            clamped = true;
        }
        d.probs[static_cast<std::size_t>(n - 1)] = v;
        sum += v;
    }
    d.diagnostics["normalization_deficit"] = 1.0 - sum;
    d.diagnostics["validity_parameter"] = p.beta * std::sqrt(p.zeta_sq * n_sites);
    if (clamped) d.diagnostics["clamped"] = 1.0;
    for (auto& v : d.probs) v /= sum;
    return d;
}

double p_greater(double mean_energy, double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("p_greater: sigma must be positive");
    return 0.5 * (1.0 + std::erf(mean_energy / sigma));
}

std::vector<double> zero_t_mean_energies(int max_distance, double sigma) {
    if (max_distance < 0) throw std::domain_error("zero_t_mean_energies: negative distance");
    if (!(sigma > 0.0)) throw std::domain_error("zero_t_mean_energies: sigma must be positive");
    // Scale-free form u_l = Ebar_l / sigma.
    std::vector<double> u(static_cast<std::size_t>(max_distance) + 1, 0.0);
    for (int l = 1; l <= max_distance; ++l) {
        const double prev = u[static_cast<std::size_t>(l - 1)];
        u[static_cast<std::size_t>(l)] =
            0.5 * (prev * (1.0 + std::erf(prev)) + std::exp(-prev * prev) / kSqrtPi);
    }
    for (auto& v : u) v *= sigma;
    return u;
}

double zero_t_mean_energy(int distance, double sigma) {
    return zero_t_mean_energies(distance, sigma).back();
}

DomainWallDistribution zero_t_distribution(const ZeroTParams& p) {
    if (p.sites < 2) throw std::domain_error("zero_t_distribution: need D >= 2");
    if (!(p.sigma > 0.0)) throw std::domain_error("zero_t_distribution: sigma must be positive");
    const int deepest = p.sites - 2;
    const int cap = p.max_distance > 0 ? std::min(p.max_distance, deepest) : deepest;
    const std::vector<double> ebar = zero_t_mean_energies(cap, p.sigma);
    std::vector<double> logq(static_cast<std::size_t>(cap) + 1);
    for (int l = 0; l <= cap; ++l) {
        logq[static_cast<std::size_t>(l)] =
            std::log(p_greater(ebar[static_cast<std::size_t>(l)], p.sigma));
    }

    DomainWallDistribution d;
    d.probs.resize(static_cast<std::size_t>(p.sites));
    d.stderrs.assign(static_cast<std::size_t>(p.sites), 0.0);
    d.beta = 0.0;
    d.provenance = "zero_t";
    std::vector<double> logw(static_cast<std::size_t>(p.sites), 0.0);
    double hi = 0.0;
    for (int n = 1; n <= p.sites; ++n) {
        double s = 0.0;
        for (int m = 1; m <= p.sites; ++m) {
            if (m == n) continue;
            const int l = std::min(std::abs(n - m) - 1, cap);
            s += logq[static_cast<std::size_t>(l)];
        }
        logw[static_cast<std::size_t>(n - 1)] = s;
        hi = n == 1 ? s : std::max(hi, s);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
        d.probs[i] = std::exp(logw[i] - hi);
        sum += d.probs[i];
    }
    for (auto& v : d.probs) v /= sum;
    return d;
}

DomainWallDistribution exact_discrete_disorder_average(const ChainSpec& spec, double sigma,
                                                       double beta) {
    spec.validate();
    if (spec.num_qubits > 20) {
        throw CapacityError("exact_discrete_disorder_average capped at Q = 20");
    }
    if (!(sigma >= 0.0) || !(beta >= 0.0)) {
        throw std::domain_error("exact_discrete_disorder_average: sigma, beta must be >= 0");
    }
    const int q = spec.num_qubits;
    const std::size_t d = static_cast<std::size_t>(spec.num_sites());
    const std::uint64_t patterns = std::uint64_t{1} << q;

    std::vector<double> acc(d, 0.0), zeta(static_cast<std::size_t>(q)), energies(d), probs(d);
    for (std::uint64_t pat = 0; pat < patterns; ++pat) {
        double total = 0.0;
        for (int i = 0; i < q; ++i) {
            zeta[static_cast<std::size_t>(i)] = ((pat >> i) & 1u) ? sigma : -sigma;
            total += zeta[static_cast<std::size_t>(i)];
        }
        double prefix = 0.0;
        for (std::size_t n = 0; n < d; ++n) {
            prefix += zeta[n];
            energies[n] = 2.0 * prefix - total;
        }
        double lo = energies[0];
        for (double e : energies) lo = std::min(lo, e);
        double z = 0.0;
        for (std::size_t n = 0; n < d; ++n) {
            probs[n] = std::exp(-beta * (energies[n] - lo));
            z += probs[n];
        }
        for (std::size_t n = 0; n < d; ++n) acc[n] += probs[n] / z;
    }

    DomainWallDistribution out;
    out.probs.resize(d);
    out.stderrs.assign(d, 0.0);
    out.realizations = patterns;
    out.beta = beta;
    out.provenance = "exact_discrete";
    for (std::size_t n = 0; n < d; ++n) out.probs[n] = acc[n] / static_cast<double>(patterns);
    return out;
}

DomainWallDistribution mean_field_finite_t(const ChainSpec& spec, double sigma, double beta,
                                           const MeanFieldOptions& opts) {
    spec.validate();
    if (!(sigma >= 0.0) || !(beta >= 0.0)) {
        throw std::domain_error("mean_field_finite_t: sigma, beta must be >= 0");
    }
    const int q = spec.num_qubits;
    const int d = spec.num_sites();
    const double x = beta * sigma;
    if (x == 0.0) return uniform_distribution(d, beta, "mean_field");

    // a[n][m] = <zeta_n>_m / sigma with all other fields at their ensemble
    // mean (zero). The coefficient of zeta_n in E_m is +1 for m >= n, else -1,
    // so Z(zeta) = (n-1) e^{+beta zeta} + (D-n+1) e^{-beta zeta}.
    const double t = std::exp(x);
    std::vector<double> a(static_cast<std::size_t>(q) * static_cast<std::size_t>(d));
    for (int n = 1; n <= q; ++n) {
        const double n_below = static_cast<double>(n - 1);
        const double n_above = static_cast<double>(std::max(d - n + 1, 0));
        const double z_plus = n_below * t + n_above / t;
        const double z_minus = n_below / t + n_above * t;
        for (int m = 1; m <= d; ++m) {
            const double c = m >= n ? 1.0 : -1.0;
            const double gp = std::exp(-c * x) / z_plus;
            const double gm = std::exp(c * x) / z_minus;
            a[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(d) +
              static_cast<std::size_t>(m - 1)] = (gp - gm) / (gp + gm);
        }
    }

    auto apply_a = [&](const std::vector<double>& p, std::vector<double>& out) {
        for (int n = 0; n < q; ++n) {
            double s = 0.0;
            for (int m = 0; m < d; ++m) {
                s += a[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) +
                       static_cast<std::size_t>(m)] *
                     p[static_cast<std::size_t>(m)];
            }
            out[static_cast<std::size_t>(n)] = s;
        }
    };
    auto apply_at = [&](const std::vector<double>& r, std::vector<double>& out) {
        for (int m = 0; m < d; ++m) {
            double s = 0.0;
            for (int n = 0; n < q; ++n) {
                s += a[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) +
                       static_cast<std::size_t>(m)] *
                     r[static_cast<std::size_t>(n)];
            }
            out[static_cast<std::size_t>(m)] = s;
        }
    };

    // Damped steepest descent on ||A P||^2 within the affine slice sum P = 1.
    std::vector<double> p(static_cast<std::size_t>(d), 1.0 / static_cast<double>(d));
    std::vector<double> r(static_cast<std::size_t>(q)), g(static_cast<std::size_t>(d)),
        ad(static_cast<std::size_t>(q));
    double change = 0.0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        apply_a(p, r);
        apply_at(r, g);
        const double gmean = std::accumulate(g.begin(), g.end(), 0.0) / d;
        for (auto& v : g) v -= gmean;  // stay on sum P = 1
        apply_a(g, ad);
        double rad = 0.0, adad = 0.0;
        for (int n = 0; n < q; ++n) {
            rad += r[static_cast<std::size_t>(n)] * ad[static_cast<std::size_t>(n)];
            adad += ad[static_cast<std::size_t>(n)] * ad[static_cast<std::size_t>(n)];
        }
        if (adad == 0.0) {
            change = 0.0;
            break;
        }
        const double step = opts.damping * rad / adad;
        change = 0.0;
        for (int m = 0; m < d; ++m) {
            const double delta = step * g[static_cast<std::size_t>(m)];
            p[static_cast<std::size_t>(m)] -= delta;
            change = std::max(change, std::abs(delta));
        }
        if (change < opts.tolerance) break;
    }
    if (change >= opts.tolerance) {
        throw ConvergenceError("mean_field_finite_t: fixed point not reached", change);
    }

    DomainWallDistribution out;
    out.probs.resize(static_cast<std::size_t>(d));
    out.stderrs.assign(static_cast<std::size_t>(d), 0.0);
    out.beta = beta;
    out.provenance = "mean_field";
    double sum = 0.0;
    for (int m = 0; m < d; ++m) {
        double v = p[static_cast<std::size_t>(m)];
        if (v < 0.0 && v > -1e-12) v = 0.0;
        out.probs[static_cast<std::size_t>(m)] = v;
        sum += v;
    }
    for (auto& v : out.probs) v /= sum;
    return out;
}

ParabolaFit fit_parabola(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3) throw std::domain_error("fit_parabola: need at least 3 points");
    const double center = (static_cast<double>(n) + 1.0) / 2.0;
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i + 1) - center;
        const double x2 = x * x;
        s0 += 1;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        b0 += values[i];
        b1 += values[i] * x;
        b2 += values[i] * x2;
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) +
                       s2 * (s1 * s3 - s2 * s2);
    ParabolaFit fit;
    fit.c0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) +
              s2 * (b1 * s3 - b2 * s2)) /
             det;
    fit.c1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s2 * s3) +
              s2 * (s1 * b2 - s2 * b1)) /
             det;
    fit.c2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - s3 * b0) +
              b0 * (s1 * s3 - s2 * s2)) /
             det;
    fit.fitted.resize(n);
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i + 1) - center;
        fit.fitted[i] = fit.c0 + fit.c1 * x + fit.c2 * x * x;
        fit.residuals[i] = values[i] - fit.fitted[i];
    }
    return fit;
}

}  // namespace dwall
