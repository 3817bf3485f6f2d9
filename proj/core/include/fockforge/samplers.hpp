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

#ifndef FOCKFORGE_SAMPLERS_HPP
#define FOCKFORGE_SAMPLERS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fockforge/rng.hpp"
#include "fockforge/state.hpp"

namespace fockforge {

enum class SamplerMethod { Clifford, Metropolis };

struct SampleConfig {
  long nsamples = 1;
  uint64_t seed = 0;
  long burn_in = 1000;   // Metropolis only
  long thinning = 10;    // Metropolis only
};

/// One classical (distinguishable-photon) outcome: each photon of input
/// mode j lands in mode k with probability |U(k,j)|^2 / column norm.
OccupationVector classical_sample(const OccupationVector& input_ket,
                                  const Eigen::MatrixXcd& u, Rng& rng);

/// Exact probability of an outcome under the classical distinguishable
/// model (product-multinomial closed form, evaluated as a permanent of the
/// normalized |U|^2 pattern).
double classical_probability(const OccupationVector& input_ket,
                             const OccupationVector& output_ket,
                             const Eigen::MatrixXcd& u);

/// Draws outcomes photon by photon through the chain of conditional
/// probabilities; the marginal at step k is a sum of squared permanents of
/// k x k submatrices over all column subsets of that size.
std::vector<OccupationVector> clifford_a_sample(const OccupationVector& input_ket,
                                                const Eigen::MatrixXcd& u,
                                                const SampleConfig& cfg);

/// Probability that the chain sampler emits the given ordered mode sequence
/// (product of the per-step conditionals). Test oracle for chain-rule
/// consistency.
double clifford_ordered_probability(const OccupationVector& input_ket,
                                    const Eigen::MatrixXcd& u,
                                    const std::vector<int>& ordered_modes);

/// Metropolised independence sampler: proposals from the classical
/// distribution, accepted with min(1, P(s')Pc(s) / P(s)Pc(s')). The chain
/// state is recorded every `thinning` steps after `burn_in` steps.
std::vector<OccupationVector> metropolis_sample(const OccupationVector& input_ket,
                                                const Eigen::MatrixXcd& u,
                                                const SampleConfig& cfg);

}  // namespace fockforge

#endif
