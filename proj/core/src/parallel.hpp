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

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace dwall::detail {

inline int resolve_threads(int requested, std::uint64_t num_blocks) {
    unsigned n = requested > 0 ? static_cast<unsigned>(requested)
                               : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (num_blocks < n) n = static_cast<unsigned>(num_blocks);
    return static_cast<int>(n == 0 ? 1 : n);
}

/// Runs fn(block_index, begin, end) over [0, total) split into fixed blocks.
/// Block boundaries depend only on block_size, never on the thread count, so
/// callers that accumulate per-block results and reduce them in block order
/// get bit-identical output for any parallelism.
template <typename F>
void for_each_block(std::uint64_t total, std::uint64_t block_size, int threads, F&& fn) {
    const std::uint64_t num_blocks = (total + block_size - 1) / block_size;
    const int nthreads = resolve_threads(threads, num_blocks);
    if (nthreads <= 1) {
        for (std::uint64_t b = 0; b < num_blocks; ++b) {
            const std::uint64_t begin = b * block_size;
            fn(b, begin, std::min(begin + block_size, total));
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            const std::uint64_t begin = b * block_size;
            fn(b, begin, std::min(begin + block_size, total));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace dwall::detail
