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

#ifndef FOCKFORGE_PACKETS_HPP
#define FOCKFORGE_PACKETS_HPP

#include <Eigen/Dense>
#include <vector>

#include "fockforge/common.hpp"

namespace fockforge {

enum class PacketShape { Gaussian, Exponential };

/// Single-photon wavepacket description.
///
/// Gaussian packets have central time t, central frequency omega and width
/// parameter `width` = delta-omega; exponential packets have characteristic
/// time t, frequency omega and `width` = decay time tau. Packets in period k
/// live at t + k * period_duration.
struct PacketSpec {
  PacketShape shape = PacketShape::Gaussian;
  double t = 0.0;
  double omega = 0.0;
  double width = 1.0;
  int period = 0;

  double effective_time(double period_duration) const {
    return t + period * period_duration;
  }

  friend bool operator==(const PacketSpec& a, const PacketSpec& b) {
    return a.shape == b.shape && a.t == b.t && a.omega == b.omega &&
           a.width == b.width && a.period == b.period;
  }
};

/// <P_a|P_b> for normalized wavepackets of equal shape. Mixed shapes are
/// unsupported and raise a ValidationError.
Complex packet_overlap(const PacketSpec& a, const PacketSpec& b,
                       double period_duration = 0.0);

/// Hermitian Gram matrix G[i][j] = <P_i|P_j> of a packet table.
Eigen::MatrixXcd overlap_matrix(const std::vector<PacketSpec>& packets,
                                double period_duration = 0.0);

/// Gram-Schmidt coefficients: lower-triangular C with C * C^dagger = G.
/// Row i expresses packet i in the orthonormalized basis (the coefficient of
/// orthonormal packet k is conj(C[i][k])).
struct EmitterMatrix {
  Eigen::MatrixXcd coefficients;
};

/// Orthonormalizes a packet Gram matrix. Throws DegeneratePacketError when a
/// pivot falls below `pivot_tolerance` (linearly dependent packets).
EmitterMatrix gram_schmidt(const Eigen::MatrixXcd& gram,
                           double pivot_tolerance = 1e-10);

/// Declared packets of one circuit, de-duplicated by exact parameter tuple.
class PacketTable {
 public:
  explicit PacketTable(double period_duration = 0.0)
      : period_duration_(period_duration) {}

  double period_duration() const { return period_duration_; }
  std::size_t size() const { return packets_.size(); }
  bool empty() const { return packets_.empty(); }
  const std::vector<PacketSpec>& packets() const { return packets_; }
  const PacketSpec& packet(std::size_t i) const { return packets_[i]; }

  /// Registers a packet (or returns the index of an identical one).
  int add(const PacketSpec& p);

  /// Index of an identical packet, -1 if absent.
  int find(const PacketSpec& p) const;

  /// Index of the packet equal to `index` shifted by `periods`; -1 when the
  /// shifted copy is not in the table.
  int shifted(int index, int periods) const;

  Eigen::MatrixXcd gram() const { return overlap_matrix(packets_, period_duration_); }

 private:
  double period_duration_;
  std::vector<PacketSpec> packets_;
};

}  // namespace fockforge

#endif
