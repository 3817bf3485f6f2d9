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

#ifndef FOCKFORGE_ELEMENTS_HPP
#define FOCKFORGE_ELEMENTS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fockforge/common.hpp"

namespace fockforge {

enum class ElementKind {
  BeamSplitter,           // theta, phi
  PhaseShifter,           // phi
  Dielectric,             // complex t, r
  Mmi2,                   // fixed 50/50 with i on the cross terms
  Rewire,                 // channel swap
  Loss,                   // l in [0,1]
  Delay,                  // periods
  Nsx,                    // phase shifter + three beamsplitter compound
  Rotator,                // theta, phi on (H,V)
  PolarizingBeamSplitter, // pol selects the reflected polarization
  HalfWavePlate,          // alpha
  QuarterWavePlate,       // alpha
  RandomUnitary,          // Haar matrix over all channels, from seed
  Separator               // display marker, no matrix
};

std::string element_kind_name(ElementKind kind);

/// Declarative record of one optical element. Angle parameters are degrees;
/// only the fields relevant to `kind` are read.
struct ElementSpec {
  ElementKind kind = ElementKind::BeamSplitter;
  std::vector<int> channels;
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  double alpha_deg = 0.0;
  Complex transmission{0.0, 0.0};
  Complex reflection{0.0, 0.0};
  double loss = 0.0;
  int periods = 0;
  int pol = 0;
  uint64_t seed = 0;
};

/// Checks parameter domains (loss in [0,1], |t|^2+|r|^2 <= 1, channel counts)
/// independent of any circuit. Throws ValidationError.
void validate_element(const ElementSpec& spec);

/// Local matrix of a channel-level element (BeamSplitter, PhaseShifter,
/// Dielectric, Mmi2, Rewire, Loss, Nsx). Dimension equals the channel count
/// of the element.
Eigen::MatrixXcd element_matrix(const ElementSpec& spec);

/// Jones matrix of a polarization element (Rotator, HalfWavePlate,
/// QuarterWavePlate) on the (H, V) sub-modes of one channel.
Eigen::MatrixXcd jones_matrix(const ElementSpec& spec);

/// Puts a local matrix into an identity of size full_dim at the given mode
/// indices (rows and columns at target_modes carry the local entries).
Eigen::MatrixXcd embed(int full_dim, const Eigen::MatrixXcd& local,
                       const std::vector<int>& target_modes);

/// Haar-random unitary via QR of a complex Gaussian matrix with the phase
/// convention fixed (diagonal of R rotated to be real positive).
Eigen::MatrixXcd haar_unitary(int dim, uint64_t seed);

}  // namespace fockforge

#endif
