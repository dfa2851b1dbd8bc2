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

#include <iosfwd>
#include <optional>
#include <string>

#include "dwall/chimera.hpp"
#include "dwall/distribution.hpp"
#include "dwall/metrology.hpp"

namespace dwall {

/// Optional metadata block carried in every JSON document. Timestamps are
/// omitted in canonical mode so reruns are byte-identical.
struct OutputMeta {
    std::optional<std::uint64_t> seed;
    bool canonical = false;
    std::string command;
};

std::string distribution_json(const DomainWallDistribution& d, const OutputMeta& meta = {});
DomainWallDistribution distribution_from_json(const std::string& text);

/// Plot-ready TSV, comment-header style: "# site prob stderr".
std::string distribution_tsv(const DomainWallDistribution& d);
DomainWallDistribution distribution_from_tsv(const std::string& text);

/// Accepts either of the two formats above (sniffs for a JSON object).
DomainWallDistribution distribution_from_text(const std::string& text);

std::string fit_result_json(const NoiseFitResult& r, const OutputMeta& meta = {});

std::string embedding_json(const HardwareGraph& graph, const MasterChain& master,
                           const std::vector<Embedding>& chains, const OutputMeta& meta = {});
std::string graph_dot(const HardwareGraph& graph);
std::string chains_dot(const HardwareGraph& graph, const std::vector<Embedding>& chains);

std::string spectrum_json(const SpectralDensity& s, const OutputMeta& meta = {});
std::string spectrum_tsv(const SpectralDensity& s);

std::string time_series_json(const DomainWallTimeSeries& ts, const OutputMeta& meta = {});
std::string time_series_tsv(const DomainWallTimeSeries& ts);
std::string shim_stats_json(const std::vector<ShimWindowStats>& stats,
                            const OutputMeta& meta = {});
std::string shim_stats_tsv(const std::vector<ShimWindowStats>& stats);

/// Sample log CSV: header "timestamp,spin_1,...,spin_Q[,shim]", spins +-1.
SampleLog read_sample_log_csv(std::istream& in);
SampleLog read_sample_log_csv_file(const std::string& path);
std::string sample_log_csv(const SampleLog& log);

/// Two-column series CSV: "timestamp,value". Returns (timestamps, values).
std::pair<std::vector<double>, std::vector<double>> read_series_csv(std::istream& in);
std::pair<std::vector<double>, std::vector<double>> read_series_csv_file(
    const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dwall
