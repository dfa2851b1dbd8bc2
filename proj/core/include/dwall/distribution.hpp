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
#include <map>
#include <string>
#include <vector>

namespace dwall {

/// Probability of finding the domain wall at each site, with standard errors
/// of the mean (zero for exact methods) and provenance metadata.
struct DomainWallDistribution {
    std::vector<double> probs;
    std::vector<double> stderrs;
    std::uint64_t realizations = 1;
    double beta = 0.0;
    std::string provenance;  // "sector", "full", "quantum", "disorder_average", ...
    std::map<std::string, double> diagnostics;

    int num_sites() const { return static_cast<int>(probs.size()); }

    /// Throws InputError unless probs lie in [0,1], sum to 1 within sum_tol,
    /// and stderrs are non-negative with matching length.
    void validate(double sum_tol = 1e-9) const;
};

DomainWallDistribution uniform_distribution(int sites, double beta, std::string provenance);

double l2_distance_sq(const DomainWallDistribution& a, const DomainWallDistribution& b);
double linf_distance(const DomainWallDistribution& a, const DomainWallDistribution& b);

/// Largest |P_n - P_{D+1-n}| over sites, in units of the combined stderr
/// (infinite if any combined stderr is zero while the difference is not).
double max_asymmetry_over_stderr(const DomainWallDistribution& d);

}  // namespace dwall
