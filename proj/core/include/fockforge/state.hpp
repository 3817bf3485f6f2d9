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

#ifndef FOCKFORGE_STATE_HPP
#define FOCKFORGE_STATE_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "fockforge/common.hpp"

namespace fockforge {

/// Photon occupations per mode. occ[j] = number of photons in mode j.
using OccupationVector = std::vector<int>;

int total_photons(const OccupationVector& ket);

/// Canonical byte key of a ket, used for O(1) duplicate detection.
std::string ket_key(const OccupationVector& ket);

/// "| 1, 0, 2 >"
std::string format_ket(const OccupationVector& ket);

struct Term {
  Complex amplitude;
  OccupationVector ket;
};

/// Sparse superposition of Fock kets.
///
/// Terms are unique by ket (an internal index enforces this; adding an
/// existing ket sums amplitudes). The norm is deliberately not forced to one:
/// post-selected states carry their success probability in the norm.
class State {
 public:
  State() = default;
  explicit State(int nmodes, int max_occupation = kDefaultMaxOccupation);

  int nmodes() const { return nmodes_; }
  int max_occupation() const { return max_occupation_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(std::size_t i) const { return terms_[i]; }

  /// Adds amplitude * |ket>. If the ket is already present the amplitudes
  /// are summed, otherwise the term is appended and indexed.
  void add_term(const Complex& amplitude, const OccupationVector& ket);

  /// this += factor * other (term-wise merge through the ket index).
  void add_scaled(const Complex& factor, const State& other);

  /// Amplitude of a ket, zero if absent.
  Complex amplitude_of(const OccupationVector& ket) const;

  double norm2() const;

  /// Scales to unit norm. Throws NumericalError on a zero state.
  void normalize();

  /// Drops terms with |amplitude| < eps.
  void prune(double eps = kAmplitudeEpsilon);

  /// Sorts terms lexicographically by occupation vector (canonical order for
  /// display and serialization).
  void sort_terms();

  State scaled(const Complex& factor) const;

 private:
  int nmodes_ = 0;
  int max_occupation_ = kDefaultMaxOccupation;
  std::vector<Term> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// <a|b> = sum over shared kets of conj(amp_a) * amp_b.
Complex braket(const State& a, const State& b);

/// Applies a creation operator on `mode`: |..n..> -> sqrt(n+1) |..n+1..>.
State apply_creation(const State& s, int mode);

/// Tensor product; modes of `b` are appended after the modes of `a`.
State tensor(const State& a, const State& b);

}  // namespace fockforge

#endif
