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

#ifndef FOCKFORGE_QUBIT_ENCODING_HPP
#define FOCKFORGE_QUBIT_ENCODING_HPP

#include <utility>
#include <vector>

#include "fockforge/mode_map.hpp"
#include "fockforge/state.hpp"

namespace fockforge {

/// Channel pair per logical qubit. Occupations (0,1) on a pair encode
/// logical 0 and (1,0) encode logical 1 (dual-rail path encoding).
struct QubitMap {
  std::vector<std::pair<int, int>> pairs;
};

/// A state living on a subset of the original channels (e.g. after
/// post-selection stripped the conditioned ones). `channels` lists the
/// original channel ids that remain, ascending; the state's modes are the
/// sub-modes of exactly those channels, in the original order.
struct ReducedState {
  State state;
  std::vector<int> channels;
};

/// Full-circuit state viewed as a reduction that kept every channel.
ReducedState as_reduced(const State& s, const ModeMap& modes);

/// Translates path-encoded kets to logical qubit values. Each qubit pair
/// must hold exactly one photon; remaining non-qubit channels must carry one
/// agreed occupation pattern across all terms. Violating kets are dropped,
/// or rejected with a ValidationError when `strict` is set.
State encode_qubits(const ReducedState& s, const QubitMap& map,
                    const ModeMap& modes, bool strict = false);

/// Inverse of encode_qubits. `ancilla` gives the occupations of the
/// non-qubit channels, ascending by channel id. Kets of `qubit_state` must
/// be binary.
State decode_qubits(const State& qubit_state, const QubitMap& map,
                    const OccupationVector& ancilla, const ModeMap& modes);

}  // namespace fockforge

#endif
