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

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dwall/version.hpp"
#include "json.hpp"

namespace dwall {

using nlohmann::json;

namespace {

json meta_block(const OutputMeta& meta) {
    json m;
    m["generator"] = std::string("dwall ") + kVersion;
    if (!meta.command.empty()) m["command"] = meta.command;
    if (meta.seed) m["seed"] = *meta.seed;
    if (!meta.canonical) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        m["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    }
    return m;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("invalid JSON document");
    return j;
}

void require(bool cond, const char* msg) {
    if (!cond) throw InputError(msg);
}

}  // namespace

std::string distribution_json(const DomainWallDistribution& d, const OutputMeta& meta) {
    json j;
    j["kind"] = "domain_wall_distribution";
    j["schema_version"] = 1;
    j["units"] = {{"energy", "J"}, {"beta", "1/J"}};
    j["num_sites"] = d.num_sites();
    j["beta"] = d.beta;
    j["provenance"] = d.provenance;
    j["realizations"] = d.realizations;
    j["probs"] = d.probs;
    j["stderrs"] = d.stderrs;
    if (!d.diagnostics.empty()) j["diagnostics"] = d.diagnostics;
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

DomainWallDistribution distribution_from_json(const std::string& text) {
    const json j = parse(text);
    require(j.is_object(), "distribution: expected a JSON object");
    require(j.value("kind", "") == "domain_wall_distribution",
            "distribution: wrong or missing 'kind'");
    require(j.contains("probs") && j["probs"].is_array(), "distribution: missing 'probs' array");
    DomainWallDistribution d;
    for (const auto& v : j["probs"]) {
        require(v.is_number(), "distribution: probs must be numbers");
        d.probs.push_back(v.get<double>());
    }
    if (j.contains("stderrs")) {
        require(j["stderrs"].is_array(), "distribution: stderrs must be an array");
        for (const auto& v : j["stderrs"]) d.stderrs.push_back(v.get<double>());
    } else {
        d.stderrs.assign(d.probs.size(), 0.0);
    }
    d.beta = j.value("beta", 0.0);
    d.realizations = j.value("realizations", std::uint64_t{1});
    d.provenance = j.value("provenance", "unknown");
    if (j.contains("num_sites")) {
        require(j["num_sites"].get<int>() == d.num_sites(),
                "distribution: num_sites does not match probs length");
    }
    d.validate(1e-6);
    return d;
}

std::string distribution_tsv(const DomainWallDistribution& d) {
    std::ostringstream os;
    os << "# site prob stderr\n";
    os.precision(17);
    for (int n = 0; n < d.num_sites(); ++n) {
        os << (n + 1) << ' ' << d.probs[static_cast<std::size_t>(n)] << ' '
           << d.stderrs[static_cast<std::size_t>(n)] << '\n';
    }
    return os.str();
}

DomainWallDistribution distribution_from_tsv(const std::string& text) {
    DomainWallDistribution d;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int site = 0;
        double prob = 0.0, se = 0.0;
        if (!(ls >> site >> prob)) throw InputError("distribution TSV: malformed row");
        if (!(ls >> se)) se = 0.0;
        d.probs.push_back(prob);
        d.stderrs.push_back(se);
    }
    if (d.probs.empty()) throw InputError("distribution TSV: no data rows");
    d.provenance = "empirical";
    d.validate(1e-6);
    return d;
}

DomainWallDistribution distribution_from_text(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        if (c == '{') return distribution_from_json(text);
        break;
    }
    return distribution_from_tsv(text);
}

std::string fit_result_json(const NoiseFitResult& r, const OutputMeta& meta) {
    json j;
    j["kind"] = "noise_fit";
    j["schema_version"] = 1;
    j["units"] = {{"sigma_over_T", "dimensionless"}, {"residual", "probability^2"}};
    j["sigma_over_T"] = r.sigma_over_T;
    j["residual"] = r.residual;
    j["realizations"] = r.realizations;
    j["non_convex_warning"] = r.non_convex_warning;
    json trace = json::array();
    for (const auto& [cand, res] : r.search_trace) {
        trace.push_back({{"sigma_over_T", cand}, {"residual", res}});
    }
    j["search_trace"] = trace;
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

std::string embedding_json(const HardwareGraph& graph, const MasterChain& master,
                           const std::vector<Embedding>& chains, const OutputMeta& meta) {
    json j;
    j["kind"] = "embedding_set";
    j["schema_version"] = 1;
    json g;
    g["rows"] = graph.rows;
    g["cols"] = graph.cols;
    g["cell_size"] = graph.cell_size;
    json broken = json::array();
    for (int v = 0; v < graph.num_qubits(); ++v) {
        if (graph.is_broken[static_cast<std::size_t>(v)]) broken.push_back(v);
    }
    g["broken"] = broken;
    g["num_qubits"] = graph.num_qubits();
    g["num_edges"] = graph.num_edges();
    j["graph"] = g;
    j["master_cycle_length"] = master.cycle.size();
    j["coverage"] = master.coverage;
    json ch = json::array();
    int worst_sharing = 0;
    for (const auto& e : chains) {
        ch.push_back(e.qubit_path);
        worst_sharing = std::max(worst_sharing, max_cell_sharing(graph, e));
    }
    j["chains"] = ch;
    j["num_chains"] = chains.size();
    j["max_cell_sharing"] = worst_sharing;
    if (!chains.empty()) {
        j["style"] = chains.front().style == EmbeddingStyle::low_density ? "low_density"
                                                                         : "high_density";
    }
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

std::string graph_dot(const HardwareGraph& graph) {
    std::ostringstream os;
    os << "graph chimera {\n  node [shape=point];\n";
    for (int v = 0; v < graph.num_qubits(); ++v) {
        for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
            if (u > v) os << "  q" << v << " -- q" << u << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string chains_dot(const HardwareGraph& graph, const std::vector<Embedding>& chains) {
    std::ostringstream os;
    os << "graph embedding {\n  node [shape=point];\n";
    for (int v = 0; v < graph.num_qubits(); ++v) {
        for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
            if (u > v) os << "  q" << v << " -- q" << u << " [color=lightgray];\n";
        }
    }
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& path = chains[c].qubit_path;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            os << "  q" << path[i] << " -- q" << path[i + 1] << " [color=\"/dark28/"
               << (c % 8 + 1) << "\" penwidth=2];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string spectrum_json(const SpectralDensity& s, const OutputMeta& meta) {
    json j;
    j["kind"] = "spectral_density";
    j["schema_version"] = 1;
    j["f_sampling"] = s.f_sampling;
    j["temperature"] = s.temperature;
    j["nyquist_interval"] = s.nyquist_interval;
    j["frequencies"] = s.frequencies;
    j["values"] = s.values;
    j["rms"] = s.rms;
    j["rms_lagged"] = s.rms_lagged;
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

std::string spectrum_tsv(const SpectralDensity& s) {
    std::ostringstream os;
    os << "# freq S_zeta\n";
    os.precision(17);
    for (std::size_t k = 0; k < s.frequencies.size(); ++k) {
        os << s.frequencies[k] << ' ' << s.values[k] << '\n';
    }
    return os.str();
}

std::string time_series_json(const DomainWallTimeSeries& ts, const OutputMeta& meta) {
    json j;
    j["kind"] = "domain_wall_time_series";
    j["schema_version"] = 1;
    json bins = json::array();
    for (const auto& b : ts.bins) {
        bins.push_back({{"window", b.window},
                        {"t_begin", b.t_begin},
                        {"t_end", b.t_end},
                        {"site_counts", b.site_counts},
                        {"out_of_sector", b.out_of_sector},
                        {"num_records", b.num_records}});
    }
    j["bins"] = bins;
    j["out_of_sector_total"] = ts.out_of_sector_total;
    j["mean_chain_polarization"] = ts.mean_chain_polarization;
    j["chain_polarization_std"] = ts.chain_polarization_std;
    j["expected_uniform_std"] = ts.expected_uniform_std;
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

std::string time_series_tsv(const DomainWallTimeSeries& ts) {
    std::ostringstream os;
    os << "# window t_begin t_end out_of_sector counts...\n";
    os.precision(17);
    for (const auto& b : ts.bins) {
        os << b.window << ' ' << b.t_begin << ' ' << b.t_end << ' ' << b.out_of_sector;
        for (auto c : b.site_counts) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

std::string shim_stats_json(const std::vector<ShimWindowStats>& stats, const OutputMeta& meta) {
    json j;
    j["kind"] = "shim_statistics";
    j["schema_version"] = 1;
    json windows = json::array();
    for (const auto& w : stats) {
        windows.push_back({{"window", w.window},
                           {"num_records", w.num_records},
                           {"mean_polarization", w.mean_polarization},
                           {"mean_abs_deviation", w.mean_abs_deviation}});
    }
    j["windows"] = windows;
    j["meta"] = meta_block(meta);
    return j.dump(2) + "\n";
}

std::string shim_stats_tsv(const std::vector<ShimWindowStats>& stats) {
    std::ostringstream os;
    os << "# window qubit mean_polarization mean_abs_deviation\n";
    os.precision(17);
    for (const auto& w : stats) {
        for (std::size_t i = 0; i < w.mean_polarization.size(); ++i) {
            os << w.window << ' ' << (i + 1) << ' ' << w.mean_polarization[i] << ' '
               << w.mean_abs_deviation[i] << '\n';
        }
    }
    return os.str();
}

SampleLog read_sample_log_csv(std::istream& in) {
    SampleLog log;
    std::string line;
    if (!std::getline(in, line)) throw InputError("sample log CSV: empty file");
    // Header: timestamp,spin_1,...,spin_Q[,shim]
    std::vector<std::string> cols;
    {
        std::istringstream hs(line);
        std::string tok;
        while (std::getline(hs, tok, ',')) cols.push_back(tok);
    }
    if (cols.size() < 2 || cols.front() != "timestamp") {
        throw InputError("sample log CSV: header must start with 'timestamp,spin_1,...'");
    }
    const bool has_shim = cols.back() == "shim";
    const std::size_t q = cols.size() - 1 - (has_shim ? 1 : 0);
    if (q < 1) throw InputError("sample log CSV: no spin columns");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> fields;
        while (std::getline(ls, tok, ',')) fields.push_back(tok);
        if (fields.size() != cols.size()) {
            throw InputError("sample log CSV: wrong column count on line " +
                             std::to_string(lineno));
        }
        try {
            log.timestamps.push_back(std::stod(fields[0]));
            SpinConfiguration rec;
            rec.spins.reserve(q);
            for (std::size_t i = 0; i < q; ++i) {
                const int s = std::stoi(fields[1 + i]);
                if (s != 1 && s != -1) {
                    throw InputError("sample log CSV: spins must be +1/-1 (line " +
                                     std::to_string(lineno) + ")");
                }
                rec.spins.push_back(static_cast<std::int8_t>(s));
            }
            log.records.push_back(std::move(rec));
            if (has_shim) log.shim_ids.push_back(std::stoi(fields.back()));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            throw InputError("sample log CSV: malformed number on line " +
                             std::to_string(lineno));
        }
    }
    log.validate();
    return log;
}

SampleLog read_sample_log_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sample log: " + path);
    return read_sample_log_csv(in);
}

std::string sample_log_csv(const SampleLog& log) {
    log.validate();
    std::ostringstream os;
    os.precision(17);
    const std::size_t q = log.records.front().spins.size();
    os << "timestamp";
    for (std::size_t i = 1; i <= q; ++i) os << ",spin_" << i;
    if (!log.shim_ids.empty()) os << ",shim";
    os << '\n';
    for (std::size_t r = 0; r < log.size(); ++r) {
        os << log.timestamps[r];
        for (auto s : log.records[r].spins) os << ',' << static_cast<int>(s);
        if (!log.shim_ids.empty()) os << ',' << log.shim_ids[r];
        os << '\n';
    }
    return os.str();
}

std::pair<std::vector<double>, std::vector<double>> read_series_csv(std::istream& in) {
    std::vector<double> t, v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) {
            throw InputError("series CSV: expected 'timestamp,value' on line " +
                             std::to_string(lineno));
        }
        try {
            t.push_back(std::stod(a));
            v.push_back(std::stod(b));
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header row
            throw InputError("series CSV: malformed number on line " + std::to_string(lineno));
        }
    }
    if (v.size() < 2) throw InputError("series CSV: need at least 2 samples");
    return {std::move(t), std::move(v)};
}

std::pair<std::vector<double>, std::vector<double>> read_series_csv_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open series: " + path);
    return read_series_csv(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dwall
