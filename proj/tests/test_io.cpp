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

#include "dwall/io.hpp"

#include <sstream>

#include "doctest.h"
#include "dwall/sampler.hpp"

using namespace dwall;

TEST_CASE("distribution JSON round trip") {
    NoiseConfig noise;
    noise.field_sigma = 0.2;
    const ChainSpec spec{10, 1.0, 2.0};
    const auto d = disorder_averaged_distribution(spec, noise, 1.0, 5000, 3);
    OutputMeta meta;
    meta.canonical = true;
    meta.seed = 3;
    const std::string text = distribution_json(d, meta);
    const auto back = distribution_from_json(text);
    CHECK(back.probs == d.probs);
    CHECK(back.stderrs == d.stderrs);
    CHECK(back.beta == d.beta);
    CHECK(back.realizations == d.realizations);
    CHECK(back.provenance == d.provenance);
    // Canonical output is reproducible byte for byte.
    CHECK(distribution_json(d, meta) == text);
}

TEST_CASE("distribution TSV round trip and comment header") {
    const auto d = uniform_distribution(9, 1.0, "sector");
    const std::string tsv = distribution_tsv(d);
    CHECK(tsv.rfind("# site prob stderr", 0) == 0);
    const auto back = distribution_from_tsv(tsv);
    CHECK(back.probs == d.probs);
    const auto sniffed = distribution_from_text(tsv);
    CHECK(sniffed.probs == d.probs);
}

TEST_CASE("distribution JSON validation failures") {
    CHECK_THROWS_AS(distribution_from_json("not json"), InputError);
    CHECK_THROWS_AS(distribution_from_json("{\"kind\":\"wrong\"}"), InputError);
    CHECK_THROWS_AS(distribution_from_json("{\"kind\":\"domain_wall_distribution\"}"),
                    InputError);
    // Probabilities that do not sum to one.
    CHECK_THROWS_AS(distribution_from_json(
                        "{\"kind\":\"domain_wall_distribution\",\"probs\":[0.5,0.1]}"),
                    InputError);
    // num_sites contradicting the array length.
    CHECK_THROWS_AS(
        distribution_from_json("{\"kind\":\"domain_wall_distribution\",\"probs\":[0.5,0.5],"
                               "\"num_sites\":3}"),
        InputError);
}

TEST_CASE("sample log CSV round trip, with and without shim column") {
    const ChainSpec spec{4, 1.0, 2.0};
    SampleLog log;
    for (int r = 0; r < 6; ++r) {
        log.timestamps.push_back(0.5 * r);
        log.records.push_back(domain_wall_configuration(spec, 1 + r % 3));
        log.shim_ids.push_back(r / 3);
    }
    const std::string csv = sample_log_csv(log);
    CHECK(csv.rfind("timestamp,spin_1,spin_2,spin_3,spin_4,shim", 0) == 0);
    std::istringstream in(csv);
    const auto back = read_sample_log_csv(in);
    CHECK(back.timestamps == log.timestamps);
    CHECK(back.shim_ids == log.shim_ids);
    REQUIRE(back.records.size() == log.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
        CHECK(back.records[i] == log.records[i]);
    }

    SampleLog plain = log;
    plain.shim_ids.clear();
    std::istringstream in2(sample_log_csv(plain));
    const auto back2 = read_sample_log_csv(in2);
    CHECK(back2.shim_ids.empty());
}

TEST_CASE("sample log CSV rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_sample_log_csv(empty), InputError);
    std::istringstream bad_header("time,spin_1\n0,1\n");
    CHECK_THROWS_AS(read_sample_log_csv(bad_header), InputError);
    std::istringstream bad_spin("timestamp,spin_1,spin_2,spin_3\n0,1,2,1\n");
    CHECK_THROWS_AS(read_sample_log_csv(bad_spin), InputError);
    std::istringstream short_row("timestamp,spin_1,spin_2,spin_3\n0,1,1\n");
    CHECK_THROWS_AS(read_sample_log_csv(short_row), InputError);
}

TEST_CASE("series CSV parsing") {
    std::istringstream in("timestamp,value\n0.0,0.5\n1.0,-0.25\n2.0,0.125\n");
    const auto [t, v] = read_series_csv(in);
    CHECK(t == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(v == std::vector<double>{0.5, -0.25, 0.125});
    std::istringstream tiny("timestamp,value\n0,1\n");
    CHECK_THROWS_AS(read_series_csv(tiny), InputError);
}

TEST_CASE("embedding JSON carries graph, chains, and sharing stats") {
    const auto grid = build_chimera(2, 2, 4);
    const auto mc = generate_master_chain(grid, 1);
    const auto chains = cut_chains(mc, 8, 0);
    OutputMeta meta;
    meta.canonical = true;
    const std::string text = embedding_json(grid, mc, chains, meta);
    CHECK(text.find("\"master_cycle_length\": 32") != std::string::npos);
    CHECK(text.find("\"num_chains\": 4") != std::string::npos);
    CHECK(text.find("\"high_density\"") != std::string::npos);
    const std::string dot = chains_dot(grid, chains);
    CHECK(dot.rfind("graph embedding {", 0) == 0);
}
