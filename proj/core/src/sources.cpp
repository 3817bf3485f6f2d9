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

#include "fockforge/sources.hpp"

#include <cmath>

namespace fockforge {

std::pair<double, double> qd_probabilities(const QDParams& params, double t) {
  if (t < 0) throw ValidationError("qd_probabilities: negative emission time");
  if (params.t_ss <= 0 || params.t_hv <= 0)
    throw ValidationError("qd_probabilities: characteristic times must be positive");
  return {std::exp(-t / params.t_ss), std::exp(-t / params.t_hv)};
}

QdBranch sample_qd_branch(double k, double p_s, double p_d, Rng& rng) {
  if (k < 0 || k > 1) throw ValidationError("qd branch: k outside [0,1]");
  if (rng.uniform() < k * p_s) {
    if (rng.uniform() < p_d) return QdBranch::Entangled;
    return rng.uniform() < 0.5 ? QdBranch::DephasedHH : QdBranch::DephasedVV;
  }
  switch (rng.uniform_below(4)) {
    case 0: return QdBranch::NoiseHH;
    case 1: return QdBranch::NoiseHV;
    case 2: return QdBranch::NoiseVH;
    default: return QdBranch::NoiseVV;
  }
}

EmittedPair sample_qd_pair(const QDParams& params, Rng& rng) {
  EmittedPair out;
  out.dt = rng.exponential(params.packet_x.width);
  const auto [p_s, p_d] = qd_probabilities(params, out.dt);
  out.branch = sample_qd_branch(params.dot_fraction, p_s, p_d, rng);
  if (out.branch == QdBranch::Entangled)
    out.phase = std::exp(Complex{0, -params.fss * out.dt});
  return out;
}

State qd_pair_state(const EmittedPair& pair, const QDParams& params,
                    const ModeMap& modes, int packet_index_xx, int packet_index_x) {
  if (modes.npol() != 2)
    throw ValidationError("qd_pair_state: quantum-dot sources need a polarized circuit");
  State out(modes.nmodes());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  auto pair_ket = [&](int pol_xx, int pol_x) {
    OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
    const int mode_xx = modes.index(params.channel_xx, pol_xx, packet_index_xx);
    const int mode_x = modes.index(params.channel_x, pol_x, packet_index_x);
    ++ket[static_cast<std::size_t>(mode_xx)];
    ++ket[static_cast<std::size_t>(mode_x)];
    return ket;
  };

  switch (pair.branch) {
    case QdBranch::Entangled:
      out.add_term(inv_sqrt2, pair_ket(0, 0));
      out.add_term(inv_sqrt2 * pair.phase, pair_ket(1, 1));
      break;
    case QdBranch::DephasedHH:
    case QdBranch::NoiseHH:
      out.add_term(1.0, pair_ket(0, 0));
      break;
    case QdBranch::DephasedVV:
    case QdBranch::NoiseVV:
      out.add_term(1.0, pair_ket(1, 1));
      break;
    case QdBranch::NoiseHV:
      out.add_term(1.0, pair_ket(0, 1));
      break;
    case QdBranch::NoiseVH:
      out.add_term(1.0, pair_ket(1, 0));
      break;
  }
  return out;
}

}  // namespace fockforge
