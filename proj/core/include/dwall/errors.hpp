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

#include <stdexcept>
#include <string>

namespace dwall {

/// Input vectors whose lengths do not match the chain they describe.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds a hard cap (exhaustive enumeration, dense
/// diagonalization). Maps to CLI exit code 3.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach its tolerance. Maps to CLI exit code 4.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
    double last_residual;
};

/// Malformed user-facing input: config files, sample logs, serialized
/// distributions. Maps to CLI exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chain embedding could not be constructed on the given hardware graph.
struct EmbeddingError : std::runtime_error {
    EmbeddingError(const std::string& msg, double achieved_coverage)
        : std::runtime_error(msg), coverage(achieved_coverage) {}
    double coverage;
};

}  // namespace dwall
