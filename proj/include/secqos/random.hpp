// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace secqos {

using Rng = std::mt19937_64;

/// Seed for substream `stream` of root seed `seed`. SplitMix64 finalizer over
/// both words, so neighbouring indices give unrelated generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

/// Worker count used when a call passes threads = 0. Defaults to the
/// hardware concurrency; the CLI sets it from --threads.
int default_threads();
void set_default_threads(int threads);

/// Runs body(index) for index in [0, count) on up to `threads` workers.
/// Work items are claimed dynamically; callers write results into
/// per-index slots so the outcome never depends on scheduling.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)> &body,
                  int threads = 0);

} // namespace secqos
