// Copyright 2026 The qbm-infogeo Authors
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

#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace qbm {

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of stream k derived from a master seed.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t k) {
  return mix64(mix64(master_seed) ^ mix64(k + 0x632BE59BD9B4E019ULL));
}

/// Deterministic 64-bit random stream. The uniform conversion is fixed here
/// rather than delegated to <random> distributions, whose output differs
/// between standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream split(std::uint64_t master_seed, std::uint64_t k) {
    return RandomStream(stream_seed(master_seed, k));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Runs fn(k) for k in [0, count) on up to `workers` threads. Callers write
/// results to slot k so reductions can happen in index order afterwards.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const std::size_t w = workers < 1 ? 1 : static_cast<std::size_t>(workers);
  if (w == 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t used = w < count ? w : count;
  std::vector<std::exception_ptr> errors(used);
  pool.reserve(used);
  for (std::size_t t = 0; t < used; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < count; k += used) fn(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qbm
