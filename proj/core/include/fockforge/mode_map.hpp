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

#ifndef FOCKFORGE_MODE_MAP_HPP
#define FOCKFORGE_MODE_MAP_HPP

#include <vector>

#include "fockforge/common.hpp"

namespace fockforge {

/// Bijection between flat mode indices and (channel, polarization, packet)
/// triples. Layout: mode = ((channel * npol) + pol) * npackets + packet, so
/// the packet index varies fastest within a channel.
class ModeMap {
 public:
  struct Mode {
    int channel;
    int pol;
    int packet;
  };

  ModeMap() = default;
  ModeMap(int nchannels, int npol, int npackets)
      : nchannels_(nchannels), npol_(npol), npackets_(npackets) {
    if (nchannels < 1 || (npol != 1 && npol != 2) || npackets < 1)
      throw ValidationError("mode map: need channels >= 1, npol in {1,2}, npackets >= 1");
  }

  int nchannels() const { return nchannels_; }
  int npol() const { return npol_; }
  int npackets() const { return npackets_; }
  int nmodes() const { return nchannels_ * npol_ * npackets_; }

  int index(int channel, int pol, int packet) const {
    return (channel * npol_ + pol) * npackets_ + packet;
  }

  Mode mode(int index) const {
    const int packet = index % npackets_;
    const int rest = index / npackets_;
    return Mode{rest / npol_, rest % npol_, packet};
  }

  bool valid_channel(int channel) const { return channel >= 0 && channel < nchannels_; }

  /// Flat mode indices belonging to one channel, ascending.
  std::vector<int> channel_modes(int channel) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(npol_) * npackets_);
    for (int p = 0; p < npol_; ++p)
      for (int k = 0; k < npackets_; ++k) out.push_back(index(channel, p, k));
    return out;
  }

  /// Total photon count of a channel (summed over polarization and packet).
  int channel_total(const std::vector<int>& occupations, int channel) const {
    int total = 0;
    for (int p = 0; p < npol_; ++p)
      for (int k = 0; k < npackets_; ++k)
        total += occupations[static_cast<std::size_t>(index(channel, p, k))];
    return total;
  }

 private:
  int nchannels_ = 1;
  int npol_ = 1;
  int npackets_ = 1;
};

}  // namespace fockforge

#endif
