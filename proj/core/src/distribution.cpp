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

#include "dwall/distribution.hpp"

#include <cmath>
#include <limits>

#include "dwall/errors.hpp"

namespace dwall {

void DomainWallDistribution::validate(double sum_tol) const {
    if (probs.empty()) throw InputError("distribution: no sites");
    if (stderrs.size() != probs.size()) {
        throw InputError("distribution: stderr length does not match probs");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
            throw InputError("distribution: probability outside [0, 1]");
        }
        if (!(stderrs[i] >= 0.0)) throw InputError("distribution: negative stderr");
        sum += probs[i];
    }
    if (std::abs(sum - 1.0) > sum_tol) {
        throw InputError("distribution: probabilities do not sum to 1 within tolerance");
    }
}

DomainWallDistribution uniform_distribution(int sites, double beta, std::string provenance) {
    DomainWallDistribution d;
    d.probs.assign(static_cast<std::size_t>(sites), 1.0 / static_cast<double>(sites));
    d.stderrs.assign(static_cast<std::size_t>(sites), 0.0);
    d.beta = beta;
    d.provenance = std::move(provenance);
    return d;
}

double l2_distance_sq(const DomainWallDistribution& a, const DomainWallDistribution& b) {
    if (a.probs.size() != b.probs.size()) {
        throw DimensionError("l2_distance_sq: site counts differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        const double d = a.probs[i] - b.probs[i];
        s += d * d;
    }
    return s;
}

double linf_distance(const DomainWallDistribution& a, const DomainWallDistribution& b) {
    if (a.probs.size() != b.probs.size()) {
        throw DimensionError("linf_distance: site counts differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        m = std::max(m, std::abs(a.probs[i] - b.probs[i]));
    }
    return m;
}

double max_asymmetry_over_stderr(const DomainWallDistribution& d) {
    const std::size_t n = d.probs.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double diff = std::abs(d.probs[i] - d.probs[j]);
        const double se = std::sqrt(d.stderrs[i] * d.stderrs[i] + d.stderrs[j] * d.stderrs[j]);
        if (se == 0.0) {
            if (diff > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, diff / se);
    }
    return worst;
}

}  // namespace dwall
