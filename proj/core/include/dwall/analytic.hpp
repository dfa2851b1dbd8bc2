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

#include <span>
#include <vector>

#include "dwall/chain.hpp"
#include "dwall/distribution.hpp"

namespace dwall {

/// High-temperature expansion of the disorder-averaged distribution:
///   P_n = Ptilde + beta^2 zb2 (2/N^2) (n - (N+1)/2)^2,   N = D
///   Ptilde = 1/N - (beta^2 zb2 / N^3) ((5/4)N^3 + N^2 + N/6 + 1)
/// zeta_sq is the noise second moment (sigma^2 for Gaussian fields). The
/// truncated expansion does not sum exactly to 1; the output is renormalized
/// and the pre-normalization deficit recorded in diagnostics. Valid for
/// beta * sigma * sqrt(D) well below 1 (diagnostic, never rejected).
struct HighTParams {
    int sites = 9;
    double beta = 1.0;
    double zeta_sq = 0.0;
};
DomainWallDistribution high_t_distribution(const HighTParams& p);

/// (1/2)(1 + erf(mean_energy / sigma)): probability that a site lies above a
/// conditioned mean, with the Gaussian normalization 1/(sqrt(pi) sigma)
/// (implied variance sigma^2 / 2) taken literally.
double p_greater(double mean_energy, double sigma);

/// Conditional mean site energy at distance l from the running minimum:
///   Ebar_0 = 0
///   Ebar_l = (1/2)(Ebar_{l-1}(1 + erf(Ebar_{l-1}/sigma))
///            + (sigma/sqrt(pi)) exp(-Ebar_{l-1}^2/sigma^2))
/// Strictly increasing in l; proportional to sigma.
double zero_t_mean_energy(int distance, double sigma);
std::vector<double> zero_t_mean_energies(int max_distance, double sigma);

/// Zero-temperature wall distribution,
///   P_min(n) ~ prod_{m != n} P_>(Ebar_{|n-m|-1}, sigma),
/// normalized over n = 1..D. The shape is independent of sigma (the recursion
/// is scale free), so the sigma ambiguity only rescales Ebar. max_distance
/// caps the recursion depth (0 = no cap); beyond it Ebar saturates at its
/// last value.
struct ZeroTParams {
    int sites = 9;
    double sigma = 1.0;
    int max_distance = 0;
};
DomainWallDistribution zero_t_distribution(const ZeroTParams& p);

/// Exhaustive equal-weight average of the sector Boltzmann distribution over
/// all 2^Q assignments of +-sigma field errors (Q <= 20). Exact oracle for
/// the binary noise model.
DomainWallDistribution exact_discrete_disorder_average(const ChainSpec& spec, double sigma,
                                                       double beta);

/// Self-consistent single-field average for binary noise: the conditional
/// means <zeta_n>_m with all other fields at their ensemble mean close into
/// the linear system sum_m P(m) <zeta_n>_m = 0 with sum_m P(m) = 1, solved by
/// damped fixed-point iteration from the uniform distribution.
struct MeanFieldOptions {
    double damping = 0.5;
    double tolerance = 1e-10;  // L-inf change between successive P iterates
    int max_iterations = 10000;
};
DomainWallDistribution mean_field_finite_t(const ChainSpec& spec, double sigma, double beta,
                                           const MeanFieldOptions& opts = {});

/// Least-squares quadratic in the site index, centered on the chain middle.
struct ParabolaFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // y ~ c0 + c1 x + c2 x^2, x = n - (D+1)/2
    std::vector<double> fitted;
    std::vector<double> residuals;
};
ParabolaFit fit_parabola(std::span<const double> values);

}  // namespace dwall
