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

#include "fockforge/qubit_encoding.hpp"

#include <algorithm>
#include <optional>

namespace fockforge {

namespace {

// Position of `channel` in the kept-channel list, -1 if absent.
int kept_position(const std::vector<int>& kept, int channel) {
  auto it = std::find(kept.begin(), kept.end(), channel);
  return it == kept.end() ? -1 : static_cast<int>(it - kept.begin());
}

// Per-kept-channel totals of a reduced ket. The reduced state's modes are
// the concatenated sub-modes of the kept channels in order.
std::vector<int> kept_channel_totals(const OccupationVector& ket,
                                     std::size_t nkept, int submodes) {
  std::vector<int> totals(nkept, 0);
  for (std::size_t c = 0; c < nkept; ++c)
    for (int m = 0; m < submodes; ++m)
      totals[c] += ket[c * static_cast<std::size_t>(submodes) + m];
  return totals;
}

}  // namespace

ReducedState as_reduced(const State& s, const ModeMap& modes) {
  ReducedState out;
  out.state = s;
  out.channels.resize(static_cast<std::size_t>(modes.nchannels()));
  for (int c = 0; c < modes.nchannels(); ++c) out.channels[static_cast<std::size_t>(c)] = c;
  return out;
}

State encode_qubits(const ReducedState& s, const QubitMap& map,
                    const ModeMap& modes, bool strict) {
  const int submodes = modes.npol() * modes.npackets();
  const std::size_t nkept = s.channels.size();
  if (s.state.nmodes() != static_cast<int>(nkept) * submodes)
    throw ValidationError("encode_qubits: state does not match kept channels");

  std::vector<int> qubit_pos_a, qubit_pos_b;
  std::vector<bool> is_qubit(nkept, false);
  for (const auto& [a, b] : map.pairs) {
    const int pa = kept_position(s.channels, a);
    const int pb = kept_position(s.channels, b);
    if (pa < 0 || pb < 0)
      throw ValidationError("encode_qubits: qubit channel was stripped or unknown");
    qubit_pos_a.push_back(pa);
    qubit_pos_b.push_back(pb);
    is_qubit[static_cast<std::size_t>(pa)] = is_qubit[static_cast<std::size_t>(pb)] = true;
  }

  State out(static_cast<int>(map.pairs.size()), 1);
  std::optional<std::vector<int>> agreed_rest;
  for (const Term& t : s.state.terms()) {
    const std::vector<int> totals = kept_channel_totals(t.ket, nkept, submodes);
    OccupationVector logical(map.pairs.size(), 0);
    bool valid = true;
    for (std::size_t q = 0; q < map.pairs.size(); ++q) {
      const int na = totals[static_cast<std::size_t>(qubit_pos_a[q])];
      const int nb = totals[static_cast<std::size_t>(qubit_pos_b[q])];
      if (na == 1 && nb == 0)
        logical[q] = 1;
      else if (na == 0 && nb == 1)
        logical[q] = 0;
      else
        valid = false;
    }
    if (valid) {
      std::vector<int> rest;
      for (std::size_t c = 0; c < nkept; ++c)
        if (!is_qubit[c]) rest.push_back(totals[c]);
      if (!agreed_rest)
        agreed_rest = rest;
      else if (*agreed_rest != rest)
        valid = false;
    }
    if (!valid) {
      if (strict)
        throw ValidationError("encode_qubits: ket " + format_ket(t.ket) +
                              " violates the one-photon-per-pair encoding");
      continue;
    }
    out.add_term(t.amplitude, logical);
  }
  return out;
}

State decode_qubits(const State& qubit_state, const QubitMap& map,
                    const OccupationVector& ancilla, const ModeMap& modes) {
  const std::size_t nqubits = map.pairs.size();
  if (qubit_state.nmodes() != static_cast<int>(nqubits))
    throw ValidationError("decode_qubits: state size does not match qubit map");

  std::vector<bool> is_qubit_channel(static_cast<std::size_t>(modes.nchannels()), false);
  for (const auto& [a, b] : map.pairs) {
    if (!modes.valid_channel(a) || !modes.valid_channel(b))
      throw ValidationError("decode_qubits: qubit channel out of range");
    is_qubit_channel[static_cast<std::size_t>(a)] = true;
    is_qubit_channel[static_cast<std::size_t>(b)] = true;
  }
  std::vector<int> free_channels;
  for (int c = 0; c < modes.nchannels(); ++c)
    if (!is_qubit_channel[static_cast<std::size_t>(c)]) free_channels.push_back(c);
  if (ancilla.size() != free_channels.size())
    throw ValidationError("decode_qubits: ancilla length does not match non-qubit channels");

  State out(modes.nmodes());
  for (const Term& t : qubit_state.terms()) {
    OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
    for (std::size_t q = 0; q < nqubits; ++q) {
      const int bit = t.ket[q];
      if (bit != 0 && bit != 1)
        throw ValidationError("decode_qubits: non-binary ket entry");
      const auto& [a, b] = map.pairs[q];
      const int occupied = bit == 1 ? a : b;
      ket[static_cast<std::size_t>(modes.index(occupied, 0, 0))] = 1;
    }
    for (std::size_t i = 0; i < free_channels.size(); ++i)
      ket[static_cast<std::size_t>(modes.index(free_channels[i], 0, 0))] = ancilla[i];
    out.add_term(t.amplitude, ket);
  }
  return out;
}

}  // namespace fockforge
