/*
 * Copyright 2026 The fockforge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FOCKFORGE_RNG_HPP
#define FOCKFORGE_RNG_HPP

#include <cstdint>
#include <vector>

namespace fockforge {

/// Deterministic random source (xoshiro256** seeded through splitmix64).
///
/// All draws are built from raw 64-bit outputs, so a given seed produces the
/// same stream on every platform and compiler. Independent streams for
/// parallel work are derived with stream().
class Rng {
 public:
  explicit Rng(uint64_t seed);

  /// Derives an independent stream, e.g. one per ensemble run.
  static Rng stream(uint64_t seed, uint64_t stream_index);

  uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform double in (0, 1] (safe as a log argument).
  double uniform_positive();

  /// Uniform integer in [0, bound).
  uint64_t uniform_below(uint64_t bound);

  /// Exponential with the given mean (inverse transform).
  double exponential(double mean);

  /// Normal via Box-Muller.
  double normal(double mean, double stddev);

  /// Poisson by Knuth's multiplication method.
  int poisson(double lambda);

  /// Index drawn proportionally to non-negative weights.
  std::size_t discrete(const std::vector<double>& weights);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  uint64_t state_[4];
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace fockforge

#endif
