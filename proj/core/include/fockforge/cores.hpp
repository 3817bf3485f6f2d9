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

#ifndef FOCKFORGE_CORES_HPP
#define FOCKFORGE_CORES_HPP

#include <Eigen/Dense>
#include <vector>

#include "fockforge/state.hpp"

namespace fockforge {

/// Inner amplitude engine of the simulator. Direct expands the multinomial
/// product of creation-operator rules; Glynn evaluates one permanent per
/// output ket. Both produce identical amplitudes on any shared basis.
enum class CoreKind { Direct, Glynn };

/// Output ensemble selector. Full enumerates every photon-number-conserving
/// ket, Restricted keeps at most one photon per mode, UserList evaluates an
/// explicit ket list only.
struct BasisSpec {
  enum class Kind { Full, Restricted, UserList };
  Kind kind = Kind::Full;
  std::vector<OccupationVector> kets;

  static BasisSpec full() { return {}; }
  static BasisSpec restricted() { return {Kind::Restricted, {}}; }
  static BasisSpec user(std::vector<OccupationVector> list) {
    return {Kind::UserList, std::move(list)};
  }
};

/// All output kets for a photon count under a basis choice, in descending
/// lexicographic occupation order. UserList returns the list unchanged.
std::vector<OccupationVector> enumerate_basis(int nmodes, int nphotons,
                                              const BasisSpec& basis);

/// <out|T|in> through the permanent of the repeated-row/column submatrix,
/// normalized by sqrt(prod n_in! * prod n_out!). Photon-number mismatch
/// yields zero by contract.
Complex transition_amplitude(const OccupationVector& input_ket,
                             const OccupationVector& output_ket,
                             const Eigen::MatrixXcd& u);

/// Transforms one ket by expanding the creation-operator substitution rules
/// (every index sequence of the multinomial product), restricted to the
/// basis. Branches die as soon as a structural zero of U enters the partial
/// product.
State direct_ket_transform(const OccupationVector& ket,
                           const Eigen::MatrixXcd& u, const BasisSpec& basis);

/// Transforms a superposition ket by ket with the selected core, merging
/// duplicate output kets by amplitude sum and dropping zero amplitudes.
State transform(const State& input, const Eigen::MatrixXcd& u, CoreKind core,
                const BasisSpec& basis = BasisSpec::full());

}  // namespace fockforge

#endif
