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

#ifndef FOCKFORGE_LOSSES_HPP
#define FOCKFORGE_LOSSES_HPP

#include <Eigen/Dense>

#include "fockforge/outcomes.hpp"
#include "fockforge/state.hpp"

namespace fockforge {

/// Unitary dilation of a lossy circuit matrix onto doubled mode space.
/// Physical modes are the first n indices, virtual loss modes the last n.
struct DilatedCircuit {
  Eigen::MatrixXcd u2n;
  int physical_modes = 0;
};

/// Builds the 2n x 2n unitary [[M, K], [K, -M]] with K = R sqrt(I - D^2) V
/// from the singular value decomposition M = R D V. Singular values may
/// exceed one by at most `clamp_tolerance` (clamped); larger values mean an
/// amplifying circuit and raise a NumericalError. The SVD phases are fixed
/// so the diagonal of R is real non-negative where possible, making the
/// dilation deterministic.
DilatedCircuit dilate(const Eigen::MatrixXcd& m, double clamp_tolerance = 1e-10);

/// Extends a physical-mode state with vacuum loss modes.
State pad_with_loss_modes(const State& s, int physical_modes);

/// Marginal outcome probabilities over the physical modes: bins sum
/// |amplitude|^2 over all loss-mode configurations.
ProbabilityBins trace_out_losses(const State& s, const DilatedCircuit& dilated);

/// Density-matrix variant: coherences survive between physical kets that
/// share a loss configuration. Counts one run.
DensityMatrix trace_out_losses_density(const State& s, const DilatedCircuit& dilated);

}  // namespace fockforge

#endif
