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

#ifndef FOCKFORGE_SOURCES_HPP
#define FOCKFORGE_SOURCES_HPP

#include <utility>

#include "fockforge/mode_map.hpp"
#include "fockforge/packets.hpp"
#include "fockforge/rng.hpp"
#include "fockforge/state.hpp"

namespace fockforge {

/// Parametrized biexciton-exciton cascade source. Each emission draws the
/// exciton delay dt from an exponential distribution with the X packet's
/// width parameter as mean; dt drives the coherent-emission and
/// cross-dephasing probabilities p_s = exp(-dt/t_ss), p_d = exp(-dt/t_hv)
/// and the fine-structure phase exp(-i S dt) of the entangled branch
/// (natural units, hbar = 1).
struct QDParams {
  int channel_xx = 0;
  int channel_x = 1;
  PacketSpec packet_xx;
  PacketSpec packet_x;
  double fss = 0.0;           // fine-structure splitting S
  double dot_fraction = 1.0;  // k: fraction of photons from the dot
  double t_ss = 1.0;          // coherence characteristic time
  double t_hv = 1.0;          // cross-dephasing characteristic time
};

enum class QdBranch {
  Entangled,
  DephasedHH,
  DephasedVV,
  NoiseHH,
  NoiseHV,
  NoiseVH,
  NoiseVV
};

struct EmittedPair {
  QdBranch branch = QdBranch::Entangled;
  double dt = 0.0;
  Complex phase{1, 0};  // exp(-i S dt), entangled branch only
};

/// (p_s, p_d) at emission delay t. Throws on negative t.
std::pair<double, double> qd_probabilities(const QDParams& params, double t);

/// Draws one branch of the emission tree at fixed probabilities: entangled
/// with k*p_s*p_d, dephased (HH or VV, 1/2 each) with k*p_s*(1-p_d), and one
/// of the four noise polarizations (1/4 each) otherwise.
QdBranch sample_qd_branch(double k, double p_s, double p_d, Rng& rng);

/// Full per-emission draw: dt, branch, and phase.
EmittedPair sample_qd_pair(const QDParams& params, Rng& rng);

/// Two-photon state fragment of an emitted pair on the full mode space.
/// Polarization 0 is H, 1 is V; the packet table indices of the XX and X
/// packets must be resolved by the caller.
State qd_pair_state(const EmittedPair& pair, const QDParams& params,
                    const ModeMap& modes, int packet_index_xx, int packet_index_x);

}  // namespace fockforge

#endif
