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

#ifndef FOCKFORGE_COMMON_HPP
#define FOCKFORGE_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace fockforge {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Amplitudes below this magnitude are treated as zero when pruning.
inline constexpr double kAmplitudeEpsilon = 1e-14;

/// Default cap on the photon occupation of a single mode.
inline constexpr int kDefaultMaxOccupation = 15;

/// Malformed device descriptions, out-of-domain parameters, schema errors.
/// Mapped to exit code 2 by the CLI.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failures of the numerics themselves (zero-norm state, singular value
/// above one, degenerate packet table). Mapped to exit code 3 by the CLI.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A packet linearly dependent on its predecessors; carries the offending
/// table index.
class DegeneratePacketError : public NumericalError {
 public:
  DegeneratePacketError(int index, const std::string& what)
      : NumericalError(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

inline double deg_to_rad(double degrees) { return degrees * kPi / 180.0; }

}  // namespace fockforge

#endif
