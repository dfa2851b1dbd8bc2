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

#include "dwall/chimera.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dwall/rng.hpp"
#include "parallel.hpp"

namespace dwall {

namespace {

int pick(StreamRng& rng, int n) { return static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n)); }

}  // namespace

int HardwareGraph::num_available() const {
    return static_cast<int>(std::count(is_broken.begin(), is_broken.end(), 0));
}

int HardwareGraph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& nb : adjacency) twice += nb.size();
    return static_cast<int>(twice / 2);
}

std::vector<int> HardwareGraph::available_qubits() const {
    std::vector<int> out;
    for (int v = 0; v < num_qubits(); ++v) {
        if (!is_broken[static_cast<std::size_t>(v)]) out.push_back(v);
    }
    return out;
}

bool HardwareGraph::adjacent(int a, int b) const {
    const auto& nb = adjacency[static_cast<std::size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

HardwareGraph build_chimera(int rows, int cols, int cell_size,
                            const std::vector<int>& broken) {
    if (rows < 1 || cols < 1 || cell_size < 1) {
        throw std::invalid_argument("build_chimera: dimensions must be >= 1");
    }
    HardwareGraph g;
    g.rows = rows;
    g.cols = cols;
    g.cell_size = cell_size;
    const int n = rows * cols * 2 * cell_size;
    g.adjacency.resize(static_cast<std::size_t>(n));
    g.is_broken.assign(static_cast<std::size_t>(n), 0);
    for (int b : broken) {
        if (b < 0 || b >= n) throw std::invalid_argument("build_chimera: broken id out of range");
        g.is_broken[static_cast<std::size_t>(b)] = 1;
    }
    auto qid = [&](int r, int c, int side, int i) {
        return ((r * cols + c) * 2 + side) * cell_size + i;
    };
    auto add = [&](int a, int b) {
        if (g.is_broken[static_cast<std::size_t>(a)] || g.is_broken[static_cast<std::size_t>(b)]) return;
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (int i = 0; i < cell_size; ++i) {
                for (int j = 0; j < cell_size; ++j) add(qid(r, c, 0, i), qid(r, c, 1, j));
            }
            if (r + 1 < rows) {
                for (int i = 0; i < cell_size; ++i) add(qid(r, c, 0, i), qid(r + 1, c, 0, i));
            }
            if (c + 1 < cols) {
                for (int j = 0; j < cell_size; ++j) add(qid(r, c, 1, j), qid(r, c + 1, 1, j));
            }
        }
    }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
    return g;
}

MasterChain generate_master_chain(const HardwareGraph& graph, std::uint64_t seed) {
    const std::vector<int> avail = graph.available_qubits();
    const int n = static_cast<int>(avail.size());
    if (n < 3) throw EmbeddingError("generate_master_chain: fewer than 3 available qubits", 0.0);

    std::vector<int> best;          // best closable cycle seen
    std::vector<int> path, pos(static_cast<std::size_t>(graph.num_qubits()), -1);
    std::vector<int> candidates;
    const int restarts = 40;
    const std::uint64_t budget = 200ULL * static_cast<std::uint64_t>(n);

    for (int restart = 0; restart < restarts; ++restart) {
        StreamRng rng(seed, static_cast<std::uint64_t>(restart));
        std::fill(pos.begin(), pos.end(), -1);
        path.clear();
        const int start = avail[pick(rng, n)];
        path.push_back(start);
        pos[static_cast<std::size_t>(start)] = 0;

        for (std::uint64_t step = 0; step < budget; ++step) {
            const int v = path.back();
            candidates.clear();
            for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
                if (pos[static_cast<std::size_t>(u)] < 0) candidates.push_back(u);
            }
            if (!candidates.empty()) {
                const int u = candidates[pick(rng, static_cast<int>(candidates.size()))];
                pos[static_cast<std::size_t>(u)] = static_cast<int>(path.size());
                path.push_back(u);
                continue;
            }
            // Endpoint has no fresh neighbor: try closing, remember the best
            // closable suffix, then rotate.
            int best_close = -1;
            for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
                best_close = std::max(best_close, static_cast<int>(path.size()) -
                                                      pos[static_cast<std::size_t>(u)]);
            }
            if (best_close >= 3) {
                if (static_cast<int>(path.size()) == n &&
                    graph.adjacent(path.front(), v)) {
                    MasterChain mc;
                    mc.cycle = path;
                    mc.coverage = 1.0;
                    return mc;
                }
                if (best_close > static_cast<int>(best.size())) {
                    for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
                        const int len = static_cast<int>(path.size()) -
                                        pos[static_cast<std::size_t>(u)];
                        if (len == best_close) {
                            best.assign(path.begin() + pos[static_cast<std::size_t>(u)],
                                        path.end());
                            break;
                        }
                    }
                }
            }
            const auto& nb = graph.adjacency[static_cast<std::size_t>(v)];
            candidates.clear();
            for (int u : nb) {
                if (path.size() >= 2 && u == path[path.size() - 2]) continue;
                candidates.push_back(u);
            }
            if (candidates.empty()) break;
            const int u = candidates[pick(rng, static_cast<int>(candidates.size()))];
            const int i = pos[static_cast<std::size_t>(u)];
            std::reverse(path.begin() + i + 1, path.end());
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < path.size(); ++j) {
                pos[static_cast<std::size_t>(path[j])] = static_cast<int>(j);
            }
        }
    }

    const double coverage = static_cast<double>(best.size()) / static_cast<double>(n);
    if (coverage < 0.95) {
        throw EmbeddingError("generate_master_chain: best cycle covers only " +
                                 std::to_string(best.size()) + " of " + std::to_string(n) +
                                 " available qubits",
                             coverage);
    }
    MasterChain mc;
    mc.cycle = std::move(best);
    mc.coverage = coverage;
    return mc;
}

std::vector<Embedding> cut_chains(const MasterChain& master, int length, int offset) {
    const int cycle_len = static_cast<int>(master.cycle.size());
    if (length < 1 || length > cycle_len) {
        throw std::invalid_argument("cut_chains: invalid chain length");
    }
    const int count = cycle_len / length;
    std::vector<Embedding> chains;
    chains.reserve(static_cast<std::size_t>(count));
    const int start = ((offset % cycle_len) + cycle_len) % cycle_len;
    for (int c = 0; c < count; ++c) {
        Embedding e;
        e.style = EmbeddingStyle::high_density;
        e.qubit_path.reserve(static_cast<std::size_t>(length));
        for (int t = 0; t < length; ++t) {
            e.qubit_path.push_back(
                master.cycle[static_cast<std::size_t>((start + c * length + t) % cycle_len)]);
        }
        chains.push_back(std::move(e));
    }
    return chains;
}

namespace {

// One staircase cell: pick an unbroken qubit on `side` of cell (r, c), or a
// preferred wire when preferred >= 0.
int pick_cell_qubit(const HardwareGraph& g, StreamRng& rng, int r, int c, int side,
                    int preferred) {
    const int k = g.cell_size;
    auto qid = [&](int wire) { return ((r * g.cols + c) * 2 + side) * k + wire; };
    if (preferred >= 0) {
        const int q = qid(preferred);
        return g.is_broken[static_cast<std::size_t>(q)] ? -1 : q;
    }
    const int first = pick(rng, k);
    for (int d = 0; d < k; ++d) {
        const int q = qid((first + d) % k);
        if (!g.is_broken[static_cast<std::size_t>(q)]) return q;
    }
    return -1;
}

}  // namespace

LowDensityResult low_density_embedding(const HardwareGraph& graph, int length,
                                       std::uint64_t seed) {
    if (length < 2) throw std::invalid_argument("low_density_embedding: length must be >= 2");
    const int cells_needed = (length + 1) / 2;
    LowDensityResult result;
    std::vector<char> cell_used(static_cast<std::size_t>(graph.rows * graph.cols), 0);
    StreamRng rng(seed, 0);

    // Staircase of cells: right, down, right, down, ... Two qubits per cell,
    // alternating (vertical, horizontal) / (horizontal, vertical) so that
    // consecutive qubits are adjacent through intra-cell and wire couplers.
    for (int r0 = 0; r0 < graph.rows; ++r0) {
        for (int c0 = 0; c0 < graph.cols; ++c0) {
            std::vector<std::pair<int, int>> cells;
            int r = r0, c = c0;
            bool fits = true;
            for (int i = 0; i < cells_needed; ++i) {
                if (r >= graph.rows || c >= graph.cols ||
                    cell_used[static_cast<std::size_t>(r * graph.cols + c)]) {
                    fits = false;
                    break;
                }
                cells.emplace_back(r, c);
                if (i % 2 == 0) ++c; else ++r;
            }
            if (!fits) continue;

            Embedding e;
            e.style = EmbeddingStyle::low_density;
            bool ok = true;
            int carry_wire = -1;  // wire the previous cell exits on
            for (std::size_t i = 0; i < cells.size() && ok; ++i) {
                auto [cr, cc] = cells[i];
                // Entering horizontally means the first qubit is on side 1.
                const int enter_side = (i == 0) ? 0 : (i % 2 == 1 ? 1 : 0);
                const int exit_side = 1 - enter_side;
                const int q1 = pick_cell_qubit(graph, rng, cr, cc, enter_side,
                                               i == 0 ? -1 : carry_wire);
                const int q2 = pick_cell_qubit(graph, rng, cr, cc, exit_side, -1);
                if (q1 < 0 || q2 < 0) { ok = false; break; }
                e.qubit_path.push_back(q1);
                if (static_cast<int>(e.qubit_path.size()) < length) e.qubit_path.push_back(q2);
                carry_wire = q2 % graph.cell_size;
            }
            if (!ok || static_cast<int>(e.qubit_path.size()) != length) continue;
            for (auto [cr, cc] : cells) {
                cell_used[static_cast<std::size_t>(cr * graph.cols + cc)] = 1;
            }
            result.chains.push_back(std::move(e));
        }
    }
    if (result.chains.empty()) {
        throw EmbeddingError("low_density_embedding: no chain of the requested length fits", 0.0);
    }
    int worst = 0;
    double total = 0.0;
    for (const auto& e : result.chains) {
        const int m = max_cell_sharing(graph, e);
        worst = std::max(worst, m);
        total += m;
    }
    result.max_cell_sharing = worst;
    result.mean_cell_sharing = total / static_cast<double>(result.chains.size());
    return result;
}

int max_cell_sharing(const HardwareGraph& graph, const Embedding& chain) {
    std::vector<int> counts(static_cast<std::size_t>(graph.rows * graph.cols), 0);
    int worst = 0;
    for (int q : chain.qubit_path) {
        const int c = graph.cell_of(q);
        worst = std::max(worst, ++counts[static_cast<std::size_t>(c)]);
    }
    return worst;
}

GaugeAssignment identity_gauge(int num_qubits) {
    GaugeAssignment g;
    g.signs.assign(static_cast<std::size_t>(num_qubits), 1);
    return g;
}

GaugeAssignment random_gauge(int num_qubits, std::uint64_t seed, std::uint64_t stream) {
    StreamRng rng(seed, stream);
    GaugeAssignment g;
    g.signs.resize(static_cast<std::size_t>(num_qubits));
    for (auto& s : g.signs) s = (rng.next_u64() >> 63) ? 1 : -1;
    return g;
}

std::pair<std::vector<double>, std::vector<double>> apply_gauge(
    std::span<const double> fields, std::span<const double> couplers,
    const GaugeAssignment& gauge) {
    if (gauge.signs.size() != fields.size() || couplers.size() + 1 != fields.size()) {
        throw DimensionError("apply_gauge: vector lengths inconsistent");
    }
    std::vector<double> h(fields.size()), j(couplers.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        h[i] = static_cast<double>(gauge.signs[i]) * fields[i];
    }
    for (std::size_t i = 0; i < couplers.size(); ++i) {
        j[i] = static_cast<double>(gauge.signs[i]) * static_cast<double>(gauge.signs[i + 1]) *
               couplers[i];
    }
    return {std::move(h), std::move(j)};
}

SpinConfiguration ungauge_sample(const SpinConfiguration& sample, const GaugeAssignment& gauge) {
    if (gauge.signs.size() != sample.spins.size()) {
        throw DimensionError("ungauge_sample: gauge length does not match record");
    }
    SpinConfiguration out = sample;
    for (std::size_t i = 0; i < out.spins.size(); ++i) {
        out.spins[i] = static_cast<std::int8_t>(out.spins[i] * gauge.signs[i]);
    }
    return out;
}

std::vector<SpinConfiguration> ungauge_samples(const std::vector<SpinConfiguration>& samples,
                                               const GaugeAssignment& gauge) {
    std::vector<SpinConfiguration> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(ungauge_sample(s, gauge));
    return out;
}

DomainWallDistribution embedded_disorder_average(const ChainSpec& spec, const NoiseConfig& noise,
                                                 const HardwareGraph& graph,
                                                 const std::vector<Embedding>& chains,
                                                 double beta, std::uint64_t realizations,
                                                 std::uint64_t seed,
                                                 const EmbeddedSamplingOptions& opts) {
    spec.validate();
    noise.validate();
    if (chains.empty()) throw std::invalid_argument("embedded_disorder_average: no chains");
    for (const auto& e : chains) {
        if (static_cast<int>(e.qubit_path.size()) != spec.num_qubits) {
            throw DimensionError("embedded_disorder_average: chain length != num_qubits");
        }
    }
    if (realizations < 1) throw std::invalid_argument("embedded_disorder_average: M >= 1");

    const auto q = static_cast<std::size_t>(spec.num_qubits);
    const auto d = static_cast<std::size_t>(spec.num_sites());
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t num_blocks = (realizations + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> sums(num_blocks), sqsums(num_blocks);

    detail::for_each_block(
        realizations, kBlock, opts.threads,
        [&](std::uint64_t block, std::uint64_t begin, std::uint64_t end) {
            auto& s = sums[block];
            auto& s2 = sqsums[block];
            s.assign(d, 0.0);
            s2.assign(d, 0.0);
            DisorderRealization dis;
            dis.field_errors.resize(q);
            dis.coupler_errors.resize(q - 1);
            std::vector<double> energies(d), probs(d);
            std::vector<std::pair<int, double>> cell_offsets;
            GaugeAssignment gauge = identity_gauge(spec.num_qubits);
            const bool gauss = noise.kind == NoiseKind::gaussian;
            for (std::uint64_t r = begin; r < end; ++r) {
                const Embedding& chain = chains[r % chains.size()];
                StreamRng rng(seed, r);
                if (opts.gauge_average) {
                    for (auto& g : gauge.signs) g = (rng.next_u64() >> 63) ? 1 : -1;
                }
                double ferro = 0.0;
                for (std::size_t i = 0; i + 1 < q; ++i) {
                    if (gauge.signs[i] * gauge.signs[i + 1] > 0) ferro += 1.0;
                }
                const double scale =
                    1.0 + noise.ferro_noise_scale * ferro / static_cast<double>(q - 1);
                // Common-mode offsets shared by qubits of a unit cell, drawn
                // once per cell per realization in path-encounter order.
                cell_offsets.clear();
                for (std::size_t i = 0; i < q; ++i) {
                    double offset = 0.0;
                    if (noise.cell_common_sigma > 0.0) {
                        const int cell = graph.cell_of(chain.qubit_path[i]);
                        bool found = false;
                        for (const auto& [c, v] : cell_offsets) {
                            if (c == cell) {
                                offset = v;
                                found = true;
                                break;
                            }
                        }
                        if (!found) {
                            offset = noise.cell_common_sigma * rng.gaussian();
                            cell_offsets.emplace_back(cell, offset);
                        }
                    }
                    const double raw = gauss ? rng.gaussian() : rng.sign();
                    const double physical = noise.field_sigma * scale * raw + offset;
                    dis.field_errors[i] = static_cast<double>(gauge.signs[i]) * physical;
                }
                for (std::size_t i = 0; i + 1 < q; ++i) {
                    const double raw = gauss ? rng.gaussian() : rng.sign();
                    dis.coupler_errors[i] = static_cast<double>(gauge.signs[i]) *
                                            static_cast<double>(gauge.signs[i + 1]) *
                                            noise.coupler_sigma * raw;
                }
                sector_energies_into(spec, dis, energies);
                double lo = energies[0];
                for (double e : energies) lo = std::min(lo, e);
                double z = 0.0;
                for (std::size_t n = 0; n < d; ++n) {
                    probs[n] = std::exp(-beta * (energies[n] - lo));
                    z += probs[n];
                }
                for (std::size_t n = 0; n < d; ++n) {
                    probs[n] /= z;
                    s[n] += probs[n];
                    s2[n] += probs[n] * probs[n];
                }
            }
        });

    DomainWallDistribution out;
    out.probs.assign(d, 0.0);
    out.stderrs.assign(d, 0.0);
    out.realizations = realizations;
    out.beta = beta;
    out.provenance = "embedded_average";
    out.diagnostics["gauge_average"] = opts.gauge_average ? 1.0 : 0.0;
    out.diagnostics["chains"] = static_cast<double>(chains.size());
    for (std::uint64_t b = 0; b < num_blocks; ++b) {
        for (std::size_t n = 0; n < d; ++n) {
            out.probs[n] += sums[b][n];
            out.stderrs[n] += sqsums[b][n];
        }
    }
    const double m = static_cast<double>(realizations);
    for (std::size_t n = 0; n < d; ++n) {
        const double mean = out.probs[n] / m;
        out.probs[n] = mean;
        out.stderrs[n] =
            realizations > 1
                ? std::sqrt(std::max(0.0, (out.stderrs[n] - m * mean * mean) / (m - 1.0)) / m)
                : 0.0;
    }
    return out;
}

}  // namespace dwall
