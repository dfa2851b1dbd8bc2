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

// dwall: simulation and noise-metrology CLI for domain walls on frustrated
// Ising chains. Subcommands: sample, analytic, fit, embed, ingest, correct,
// spectrum. Exit codes: 0 success, 2 config/input error, 3 capacity error,
// 4 convergence error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dwall/analytic.hpp"
#include "dwall/chimera.hpp"
#include "dwall/io.hpp"
#include "dwall/metrology.hpp"
#include "dwall/sampler.hpp"
#include "dwall/version.hpp"
#include "json.hpp"

namespace {

using dwall::InputError;
using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "both";  // json | tsv | both
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool canonical = false;
};

json load_config(const CommonFlags& flags) {
    if (flags.config_path.empty()) throw InputError("missing --config");
    const json cfg = json::parse(dwall::read_text_file(flags.config_path), nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) {
        throw InputError("config: not a JSON object: " + flags.config_path);
    }
    return cfg;
}

template <typename T>
T field(const json& j, const std::string& key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("config: field '" + key + "' has the wrong type");
    }
}

template <typename T>
T require_field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw InputError("config: missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("config: field '" + key + "' has the wrong type");
    }
}

dwall::ChainSpec chain_from_config(const json& cfg) {
    const json c = field(cfg, "chain", json::object());
    dwall::ChainSpec spec;
    spec.num_qubits = require_field<int>(c, "num_qubits");
    spec.coupling = field(c, "coupling", 1.0);
    spec.boundary_field = field(c, "boundary_field", 2.0);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return spec;
}

// Noise block: field_sigma/coupler_sigma in units of J, or *_over_T variants
// that divide out beta.
dwall::NoiseConfig noise_from_config(const json& cfg, double beta) {
    const json n = field(cfg, "noise", json::object());
    dwall::NoiseConfig noise;
    if (n.contains("field_sigma_over_T")) {
        if (beta <= 0.0) throw InputError("config: field_sigma_over_T needs beta > 0");
        noise.field_sigma = require_field<double>(n, "field_sigma_over_T") / beta;
    } else {
        noise.field_sigma = field(n, "field_sigma", 0.0);
    }
    if (n.contains("coupler_sigma_over_T")) {
        if (beta <= 0.0) throw InputError("config: coupler_sigma_over_T needs beta > 0");
        noise.coupler_sigma = require_field<double>(n, "coupler_sigma_over_T") / beta;
    } else {
        noise.coupler_sigma = field(n, "coupler_sigma", 0.0);
    }
    const std::string kind = field<std::string>(n, "kind", "gaussian");
    if (kind == "gaussian") {
        noise.kind = dwall::NoiseKind::gaussian;
    } else if (kind == "binary") {
        noise.kind = dwall::NoiseKind::binary;
    } else {
        throw InputError("config: noise.kind must be 'gaussian' or 'binary'");
    }
    noise.cell_common_sigma = field(n, "cell_common_sigma", 0.0);
    noise.ferro_noise_scale = field(n, "ferro_noise_scale", 0.0);
    try {
        noise.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return noise;
}

void write_outputs(const CommonFlags& flags, const std::string& stem, const std::string& json_text,
                   const std::string& tsv_text) {
    std::filesystem::create_directories(flags.out_dir);
    const auto base = std::filesystem::path(flags.out_dir) / stem;
    if (flags.format == "json" || flags.format == "both") {
        dwall::write_text_file(base.string() + ".json", json_text);
        std::cout << "wrote " << base.string() << ".json\n";
    }
    if ((flags.format == "tsv" || flags.format == "both") && !tsv_text.empty()) {
        dwall::write_text_file(base.string() + ".tsv", tsv_text);
        std::cout << "wrote " << base.string() << ".tsv\n";
    }
}

dwall::OutputMeta meta_for(const CommonFlags& flags, const std::string& command,
                           std::optional<std::uint64_t> seed) {
    dwall::OutputMeta meta;
    meta.command = command;
    meta.canonical = flags.canonical;
    meta.seed = seed;
    return meta;
}

int run_sample(const CommonFlags& flags) {
    const json cfg = load_config(flags);
    const auto spec = chain_from_config(cfg);
    const double beta = field(cfg, "beta", 1.0);
    const auto noise = noise_from_config(cfg, beta);
    const std::uint64_t m = field<std::uint64_t>(cfg, "realizations", 100000);
    const std::uint64_t seed = flags.seed.value_or(field<std::uint64_t>(cfg, "seed", 1));
    dwall::AverageOptions opts;
    opts.threads = flags.threads.value_or(field(cfg, "threads", 0));

    auto dist = dwall::disorder_averaged_distribution(spec, noise, beta, m, seed, opts);

    // Parabola diagnostic: sites whose best-fit residual exceeds 3 stderr.
    const auto fit = dwall::fit_parabola(dist.probs);
    int deviating = 0;
    double worst = 0.0;
    for (std::size_t n = 0; n < fit.residuals.size(); ++n) {
        if (dist.stderrs[n] > 0.0) {
            const double r = std::abs(fit.residuals[n]) / dist.stderrs[n];
            worst = std::max(worst, r);
            if (r > 3.0) ++deviating;
        }
    }
    dist.diagnostics["parabola_max_residual_over_stderr"] = worst;
    dist.diagnostics["parabola_deviating_sites"] = deviating;
    if (deviating > 0) {
        std::cout << "note: distribution deviates from its best-fit parabola at " << deviating
                  << " site(s)\n";
    }

    write_outputs(flags, "sample_distribution", dwall::distribution_json(dist, meta_for(flags, "sample", seed)),
                  dwall::distribution_tsv(dist));
    return 0;
}

int run_analytic(const CommonFlags& flags) {
    const json cfg = load_config(flags);
    const std::string method = require_field<std::string>(cfg, "method");
    const double beta = field(cfg, "beta", 1.0);

    dwall::DomainWallDistribution dist;
    if (method == "high_t") {
        dwall::HighTParams p;
        const auto spec = chain_from_config(cfg);
        p.sites = spec.num_sites();
        p.beta = beta;
        if (cfg.contains("zeta_sq")) {
            p.zeta_sq = require_field<double>(cfg, "zeta_sq");
        } else {
            const double s = require_field<double>(field(cfg, "noise", json::object()),
                                                   "field_sigma");
            p.zeta_sq = s * s;
        }
        dist = dwall::high_t_distribution(p);
        if (dist.diagnostics.at("validity_parameter") > 0.3) {
            std::cout << "note: beta * sigma * sqrt(D) = "
                      << dist.diagnostics.at("validity_parameter")
                      << " is outside the high-temperature validity regime\n";
        }
    } else if (method == "zero_t") {
        dwall::ZeroTParams p;
        const auto spec = chain_from_config(cfg);
        p.sites = spec.num_sites();
        p.sigma = field(field(cfg, "noise", json::object()), "field_sigma", 1.0);
        p.max_distance = field(cfg, "max_distance", 0);
        dist = dwall::zero_t_distribution(p);
    } else if (method == "mean_field") {
        const auto spec = chain_from_config(cfg);
        const double s =
            require_field<double>(field(cfg, "noise", json::object()), "field_sigma");
        dwall::MeanFieldOptions opts;
        opts.max_iterations = field(cfg, "max_iterations", opts.max_iterations);
        opts.tolerance = field(cfg, "tolerance", opts.tolerance);
        opts.damping = field(cfg, "damping", opts.damping);
        dist = dwall::mean_field_finite_t(spec, s, beta, opts);
    } else if (method == "exact_discrete") {
        const auto spec = chain_from_config(cfg);
        const double s =
            require_field<double>(field(cfg, "noise", json::object()), "field_sigma");
        dist = dwall::exact_discrete_disorder_average(spec, s, beta);
    } else {
        throw InputError("config: method must be high_t | zero_t | mean_field | exact_discrete");
    }
    write_outputs(flags, "analytic_distribution",
                  dwall::distribution_json(dist, meta_for(flags, "analytic " + method, {})),
                  dwall::distribution_tsv(dist));
    return 0;
}

int run_fit(const CommonFlags& flags, const std::string& empirical_path) {
    const json cfg = load_config(flags);
    const auto spec = chain_from_config(cfg);
    const auto empirical = dwall::distribution_from_text(dwall::read_text_file(empirical_path));

    dwall::FitConfig fit_cfg;
    if (cfg.contains("grid")) {
        const json g = cfg.at("grid");
        if (g.is_array()) {
            for (const auto& v : g) fit_cfg.grid.push_back(v.get<double>());
        } else if (g.is_object()) {
            const double lo = field(g, "min", 0.0);
            const double hi = require_field<double>(g, "max");
            const int points = field(g, "points", 13);
            if (points < 2 || hi <= lo) throw InputError("config: invalid fit grid");
            for (int i = 0; i < points; ++i) {
                fit_cfg.grid.push_back(lo + (hi - lo) * i / (points - 1));
            }
        } else {
            throw InputError("config: grid must be an array or {min,max,points}");
        }
    }
    fit_cfg.realizations = field<std::uint64_t>(cfg, "realizations", 100000);
    fit_cfg.seed = flags.seed.value_or(field<std::uint64_t>(cfg, "seed", 1));
    fit_cfg.tolerance = field(cfg, "tolerance", 1e-4);
    fit_cfg.threads = flags.threads.value_or(field(cfg, "threads", 0));

    const auto result = dwall::fit_sigma_over_T(empirical, spec, fit_cfg);
    if (result.non_convex_warning) {
        std::cout << "warning: residual trace is not single-welled\n";
    }
    std::cout << "sigma_over_T = " << result.sigma_over_T << " (residual " << result.residual
              << ")\n";
    write_outputs(flags, "fit_result",
                  dwall::fit_result_json(result, meta_for(flags, "fit", fit_cfg.seed)), "");
    return 0;
}

int run_embed(const CommonFlags& flags, bool want_dot) {
    const json cfg = load_config(flags);
    const json g = field(cfg, "graph", json::object());
    const int rows = field(g, "rows", 8);
    const int cols = field(g, "cols", 8);
    const int cell = field(g, "cell_size", 4);
    std::vector<int> broken;
    for (const auto& b : field(g, "broken", json::array())) broken.push_back(b.get<int>());
    const auto graph = dwall::build_chimera(rows, cols, cell, broken);

    const int length = require_field<int>(cfg, "chain_length");
    const std::string style = field<std::string>(cfg, "style", "high_density");
    const std::uint64_t seed = flags.seed.value_or(field<std::uint64_t>(cfg, "seed", 1));
    const int offset = field(cfg, "offset", 0);

    dwall::MasterChain master;
    std::vector<dwall::Embedding> chains;
    if (style == "high_density") {
        master = dwall::generate_master_chain(graph, seed);
        chains = dwall::cut_chains(master, length, offset);
    } else if (style == "low_density") {
        const auto low = dwall::low_density_embedding(graph, length, seed);
        chains = low.chains;
    } else {
        throw InputError("config: style must be high_density or low_density");
    }
    std::cout << chains.size() << " chain(s) of length " << length << "\n";

    write_outputs(flags, "embedding",
                  dwall::embedding_json(graph, master, chains, meta_for(flags, "embed", seed)),
                  "");
    if (want_dot) {
        const auto base = std::filesystem::path(flags.out_dir) / "embedding";
        dwall::write_text_file(base.string() + ".dot", dwall::chains_dot(graph, chains));
        std::cout << "wrote " << base.string() << ".dot\n";
    }
    return 0;
}

int run_ingest(const CommonFlags& flags, const std::string& log_path) {
    const json cfg = load_config(flags);
    const auto spec = chain_from_config(cfg);
    const auto log = dwall::read_sample_log_csv_file(log_path);

    const auto ts = dwall::domain_wall_time_series(log, spec);
    const auto shims = dwall::shim_statistics(log);
    std::cout << log.size() << " records, " << ts.bins.size() << " window(s), "
              << ts.out_of_sector_total << " out-of-sector\n";
    write_outputs(flags, "ingest_timeseries",
                  dwall::time_series_json(ts, meta_for(flags, "ingest", {})),
                  dwall::time_series_tsv(ts));
    write_outputs(flags, "ingest_shims",
                  dwall::shim_stats_json(shims, meta_for(flags, "ingest", {})),
                  dwall::shim_stats_tsv(shims));
    return 0;
}

int run_correct(const CommonFlags& flags, const std::string& dist_path) {
    const json cfg = load_config(flags);
    const auto spec = chain_from_config(cfg);
    const json s = field(cfg, "susceptibility", json::object());
    dwall::SusceptibilityParams p;
    p.chi = require_field<double>(s, "chi");
    p.schedule_ratio = field(s, "schedule_ratio", 1.0);

    const auto dist = dwall::distribution_from_text(dwall::read_text_file(dist_path));
    const auto corrected = dwall::susceptibility_correct(dist, p, spec);
    write_outputs(flags, "corrected_distribution",
                  dwall::distribution_json(corrected, meta_for(flags, "correct", {})),
                  dwall::distribution_tsv(corrected));
    return 0;
}

int run_spectrum(const CommonFlags& flags, const std::string& series_path) {
    const json cfg = flags.config_path.empty() ? json::object() : load_config(flags);
    const double temperature = field(cfg, "temperature", 1.0);

    const auto [t, v] = dwall::read_series_csv_file(series_path);
    double f_sampling = field(cfg, "f_sampling", 0.0);
    if (f_sampling <= 0.0) {
        // Derive from timestamps; reject non-uniform spacing.
        const double dt = t[1] - t[0];
        if (dt <= 0.0) throw InputError("spectrum: timestamps must be increasing");
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            if (std::abs((t[i + 1] - t[i]) - dt) > 1e-6 * dt) {
                throw InputError("spectrum: non-uniform sample spacing");
            }
        }
        f_sampling = 1.0 / dt;
    }
    const auto s = dwall::spectral_density(v, f_sampling, temperature);
    std::cout << "rms = " << s.rms << ", lag-1 rms = " << s.rms_lagged
              << ", Nyquist interval = " << s.nyquist_interval << "\n";
    write_outputs(flags, "spectrum", dwall::spectrum_json(s, meta_for(flags, "spectrum", {})),
                  dwall::spectrum_tsv(s));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"domain-wall disorder toolkit for frustrated Ising chains"};
    app.set_version_flag("--version", dwall::kVersion);
    app.require_subcommand(1);

    CommonFlags flags;
    std::string empirical_path, input_path;
    bool want_dot = false;

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        auto* opt = cmd->add_option("-c,--config", flags.config_path, "JSON config file");
        if (config_required) opt->required();
        cmd->add_option("--out", flags.out_dir, "output directory (default .)");
        cmd->add_option("--format", flags.format, "json | tsv | both")
            ->check(CLI::IsMember({"json", "tsv", "both"}));
        cmd->add_option("--seed", [&flags](const CLI::results_t& r) {
            flags.seed = std::stoull(r[0]);
            return true;
        }, "override the config seed");
        cmd->add_option("--threads", [&flags](const CLI::results_t& r) {
            flags.threads = std::stoi(r[0]);
            return true;
        }, "worker threads (0 = all cores); never changes results");
        cmd->add_flag("--canonical", flags.canonical,
                      "omit volatile metadata so reruns are byte-identical");
    };

    auto* sample = app.add_subcommand("sample", "disorder-averaged domain-wall distribution");
    add_common(sample);
    auto* analytic = app.add_subcommand("analytic",
                                        "closed-form solvers: high_t | zero_t | mean_field | "
                                        "exact_discrete");
    add_common(analytic);
    auto* fit = app.add_subcommand("fit", "fit sigma_zeta/T to an empirical distribution");
    add_common(fit);
    fit->add_option("--empirical", empirical_path, "distribution file (JSON or TSV)")->required();
    auto* embed = app.add_subcommand("embed", "generate hardware chain embeddings");
    add_common(embed);
    embed->add_flag("--dot", want_dot, "also write a DOT rendering");
    auto* ingest = app.add_subcommand("ingest", "classify a sample log CSV");
    add_common(ingest);
    ingest->add_option("--input", input_path, "sample log CSV")->required();
    auto* correct = app.add_subcommand("correct", "apply the background-susceptibility correction");
    add_common(correct);
    correct->add_option("--input", input_path, "distribution file (JSON or TSV)")->required();
    auto* spectrum = app.add_subcommand("spectrum", "control-error spectral density of a series");
    add_common(spectrum, /*config_required=*/false);
    spectrum->add_option("--input", input_path, "series CSV (timestamp,value)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed()) return run_sample(flags);
        if (analytic->parsed()) return run_analytic(flags);
        if (fit->parsed()) return run_fit(flags, empirical_path);
        if (embed->parsed()) return run_embed(flags, want_dot);
        if (ingest->parsed()) return run_ingest(flags, input_path);
        if (correct->parsed()) return run_correct(flags, input_path);
        if (spectrum->parsed()) return run_spectrum(flags, input_path);
    } catch (const dwall::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const dwall::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << " (last residual " << e.last_residual
                  << ")\n";
        return 4;
    } catch (const dwall::EmbeddingError& e) {
        std::cerr << "embedding error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
