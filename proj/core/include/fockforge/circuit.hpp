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

#ifndef FOCKFORGE_CIRCUIT_HPP
#define FOCKFORGE_CIRCUIT_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fockforge/elements.hpp"
#include "fockforge/mode_map.hpp"
#include "fockforge/packets.hpp"

namespace fockforge {

/// Detector attached to one channel. An empty condition accepts anything;
/// a set condition post-selects on the channel's total photon count (summed
/// over polarization and packets). Efficiency below one inserts a loss
/// element on the channel; dead_fraction and dark_rate drive the classical
/// error models of the detection pipeline.
struct DetectorSpec {
  int channel = 0;
  std::optional<int> condition;
  double efficiency = 1.0;
  double dead_fraction = 0.0;
  double dark_rate = 0.0;
};

enum class DetectorKind { Counter, Timed, Full };

/// Linear-optical circuit: a mode map plus the composed transformation
/// matrix, built by embedding each element's local matrix and
/// left-multiplying (U = U_n ... U_2 U_1). Detectors and packets are kept as
/// virtual-element records that drive the simulator.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int nchannels, bool polarized = false, int npackets = 1,
          double period_duration = 0.0);

  const ModeMap& modes() const { return modes_; }
  int nchannels() const { return modes_.nchannels(); }
  bool polarized() const { return modes_.npol() == 2; }

  // -- linear elements (angles in degrees) --
  void beamsplitter(int ch1, int ch2, double theta_deg, double phi_deg);
  void phase_shifter(int ch, double phi_deg);
  void dielectric(int ch1, int ch2, Complex t, Complex r);
  void mmi2(int ch1, int ch2);
  void rewire(int ch1, int ch2);
  void loss(int ch, double l);
  void nsx(int ch1, int ch2, int ch3);
  void delay(int ch, int periods);
  void rotator(int ch, double theta_deg, double phi_deg);
  void pol_beamsplitter(int ch1, int ch2, int reflected_pol);
  void half_waveplate(int ch, double alpha_deg);
  void quarter_waveplate(int ch, double alpha_deg);
  void random_unitary(uint64_t seed);
  void separator();

  /// Applies any declarative element record.
  void apply(const ElementSpec& spec);

  // -- packets / emitter --
  PacketTable& packet_table() { return packets_; }
  const PacketTable& packet_table() const { return packets_; }

  /// Composes the Gram-Schmidt emitter into the circuit (as the first
  /// transformation seen by input states). May be applied at most once.
  void apply_emitter();
  bool emitter_applied() const { return emitter_applied_; }

  // -- detectors --
  void detector(int ch);
  void detector(int ch, int condition);
  void detector(int ch, int condition, double efficiency, double dead_fraction,
                double dark_rate);
  void add_detector(const DetectorSpec& spec);
  void ignore(int ch);
  const std::vector<DetectorSpec>& detectors() const { return detectors_; }
  const std::vector<int>& ignored_channels() const { return ignored_; }

  // -- results --
  /// Product of the applied element matrices (emitter excluded).
  const Eigen::MatrixXcd& element_product() const { return unitary_; }
  /// Emitter factor (identity when not applied).
  Eigen::MatrixXcd emitter_factor() const;
  /// element_product * emitter: the full transformation on physical modes.
  Eigen::MatrixXcd transfer_matrix() const;

  const std::vector<ElementSpec>& element_log() const { return elements_; }
  /// True when a loss element or a power-deficient dielectric was applied.
  bool has_lossy_elements() const { return lossy_; }

 private:
  Eigen::MatrixXcd full_mode_matrix(const ElementSpec& spec) const;

  ModeMap modes_;
  Eigen::MatrixXcd unitary_;
  std::vector<ElementSpec> elements_;
  PacketTable packets_;
  std::vector<DetectorSpec> detectors_;
  std::vector<int> ignored_;
  bool emitter_applied_ = false;
  Eigen::MatrixXcd emitter_;
  bool lossy_ = false;
};

/// Relabeling map of a delay by `periods` on one channel, over the full mode
/// space (Eq.-19-style packet substitution). Labels whose shifted copy is
/// not in the table get a zero column (the photon leaves the simulated
/// window); if no label on the channel can be shifted at all, the packet
/// table does not cover the period range and a ValidationError is raised.
Eigen::MatrixXcd delay_matrix(const Circuit& circuit, int channel, int periods);

/// Full-mode emitter matrix of the circuit's packet table (identity on
/// channel and polarization, Gram-Schmidt coefficients on packet indices).
Eigen::MatrixXcd emitter_matrix(const Circuit& circuit);

}  // namespace fockforge

#endif
