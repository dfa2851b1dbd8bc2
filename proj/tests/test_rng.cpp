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

#include "dwall/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

using namespace dwall;

TEST_CASE("streams are reproducible and distinct") {
    StreamRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool all_equal_c = true, all_equal_d = true;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        all_equal_c &= (va == c.next_u64());
        all_equal_d &= (va == d.next_u64());
    }
    CHECK(!all_equal_c);
    CHECK(!all_equal_d);
}

TEST_CASE("uniform01 stays in (0, 1]") {
    StreamRng rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("gaussian moments: law of large numbers") {
    StreamRng rng(2024, 0);
    const int n = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("sign is a fair coin") {
    StreamRng rng(9, 9);
    int plus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) plus += rng.sign() > 0 ? 1 : 0;
    CHECK(std::abs(plus - n / 2) < 5 * std::sqrt(n / 4.0));
}
