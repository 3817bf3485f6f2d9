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

#include "fockforge/packets.hpp"

#include <algorithm>
#include <cmath>

namespace fockforge {

namespace {

// Overlap of two normalized Gaussian packets
//   phi_i(t) ~ exp(-w_i^2 (t-t_i)^2) exp(-i omega_i (t-t_i)).
// Gaussian integral of exp(-A t^2 + B t + C) over the real line.
Complex gaussian_overlap(double ta, double wa_freq, double da,
                         double tb, double wb_freq, double db) {
  const double a2 = da * da;
  const double b2 = db * db;
  const double big_a = a2 + b2;
  const Complex big_b(2.0 * a2 * ta + 2.0 * b2 * tb, wa_freq - wb_freq);
  const Complex big_c(-(a2 * ta * ta + b2 * tb * tb),
                      -(wa_freq * ta - wb_freq * tb));
  const Complex exponent = big_b * big_b / (4.0 * big_a) + big_c;
  return std::sqrt(2.0 * da * db / big_a) * std::exp(exponent);
}

// Overlap of two normalized exponential packets
//   phi_i(t) ~ Theta(t-t_i) exp(-(t-t_i)/(2 tau_i)) exp(-i omega_i (t-t_i)).
Complex exponential_overlap(double ta, double wa_freq, double tau_a,
                            double tb, double wb_freq, double tau_b) {
  const double t0 = std::max(ta, tb);
  const Complex kappa(0.5 / tau_a + 0.5 / tau_b, wb_freq - wa_freq);
  const Complex exponent(-(t0 - ta) / (2.0 * tau_a) - (t0 - tb) / (2.0 * tau_b),
                         wa_freq * (t0 - ta) - wb_freq * (t0 - tb));
  return std::exp(exponent) / (std::sqrt(tau_a * tau_b) * kappa);
}

}  // namespace

Complex packet_overlap(const PacketSpec& a, const PacketSpec& b,
                       double period_duration) {
  if (a.shape != b.shape)
    throw ValidationError("packet_overlap: mixed Gaussian/exponential overlap is unsupported");
  if (a.width <= 0 || b.width <= 0)
    throw ValidationError("packet_overlap: width/decay parameter must be positive");
  const double ta = a.effective_time(period_duration);
  const double tb = b.effective_time(period_duration);
  Complex g = a.shape == PacketShape::Gaussian
                  ? gaussian_overlap(ta, a.omega, a.width, tb, b.omega, b.width)
                  : exponential_overlap(ta, a.omega, a.width, tb, b.omega, b.width);
  // round-off guard: physical overlaps have magnitude <= 1
  const double mag = std::abs(g);
  if (mag > 1.0) g /= mag;
  return g;
}

Eigen::MatrixXcd overlap_matrix(const std::vector<PacketSpec>& packets,
                                double period_duration) {
  const auto n = static_cast<Eigen::Index>(packets.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = Complex{1, 0};
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex g = packet_overlap(packets[static_cast<std::size_t>(i)],
                                       packets[static_cast<std::size_t>(j)],
                                       period_duration);
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  }
  return gram;
}

EmitterMatrix gram_schmidt(const Eigen::MatrixXcd& gram, double pivot_tolerance) {
  const Eigen::Index n = gram.rows();
  if (gram.cols() != n) throw ValidationError("gram_schmidt: matrix not square");
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      Complex s = gram(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= c(i, k) * std::conj(c(j, k));
      if (j < i) {
        c(i, j) = s / c(j, j);
      } else {
        const double pivot = s.real();
        if (pivot < pivot_tolerance)
          throw DegeneratePacketError(
              static_cast<int>(i),
              "gram_schmidt: packet " + std::to_string(i) +
                  " is linearly dependent on its predecessors");
        c(i, i) = std::sqrt(pivot);
      }
    }
  }
  return EmitterMatrix{std::move(c)};
}

int PacketTable::add(const PacketSpec& p) {
  if (p.width <= 0)
    throw ValidationError("packet table: width/decay parameter must be positive");
  const int existing = find(p);
  if (existing >= 0) return existing;
  packets_.push_back(p);
  return static_cast<int>(packets_.size()) - 1;
}

int PacketTable::find(const PacketSpec& p) const {
  auto it = std::find(packets_.begin(), packets_.end(), p);
  return it == packets_.end() ? -1 : static_cast<int>(it - packets_.begin());
}

int PacketTable::shifted(int index, int periods) const {
  if (index < 0 || index >= static_cast<int>(packets_.size())) return -1;
  PacketSpec target = packets_[static_cast<std::size_t>(index)];
  target.period += periods;
  return find(target);
}

}  // namespace fockforge
