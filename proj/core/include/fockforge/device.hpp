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

#ifndef FOCKFORGE_DEVICE_HPP
#define FOCKFORGE_DEVICE_HPP

#include <optional>
#include <vector>

#include "fockforge/circuit.hpp"
#include "fockforge/measurement.hpp"
#include "fockforge/qubit_encoding.hpp"
#include "fockforge/sources.hpp"

namespace fockforge {

/// Bosonic product of two states on the same mode space: applies the
/// creation operators of each `b` ket on top of each `a` ket, with the
/// sqrt((n+m)! / n! m!) enhancement on shared modes.
State bosonic_product(const State& a, const State& b);

struct PhotonDecl {
  int n = 1;
  int channel = 0;
  int pol = 0;
  PacketSpec packet;
};

struct QdDecl {
  QDParams params;
};

struct CompiledQd {
  QDParams params;
  int packet_index_xx = 0;
  int packet_index_x = 0;
};

/// An immutable, simulation-ready view of a device: the built circuit, the
/// full transfer matrix (emitter composed, loss-dilated when required), the
/// deterministic input and the stochastic sources.
struct CompiledDevice {
  Circuit circuit;
  Eigen::MatrixXcd transfer;  // total_modes x total_modes
  int physical_modes = 0;
  int total_modes = 0;
  bool lossy = false;
  bool loss_extended = false;
  State input;  // deterministic part, physical modes
  std::vector<CompiledQd> qds;
  DetectionSetup detection;

  bool stochastic() const { return !qds.empty(); }

  /// Input of one run: the deterministic photons extended by one draw from
  /// each quantum-dot source, normalized, padded with vacuum loss modes when
  /// the circuit is loss-extended.
  State sample_input(Rng& rng) const;

  /// The deterministic input (padded when loss-extended). Invalid for
  /// stochastic devices.
  State fixed_input() const;
};

/// Builder bundling an input state, a circuit, a packet table and detectors
/// behind a photon-level API. Packets are registered automatically from
/// photon declarations and de-duplicated by exact parameter tuple; the
/// Gram-Schmidt emitter is composed at finalization, before the declared
/// elements.
class Device {
 public:
  explicit Device(int nchannels, bool polarized = false,
                  double period_duration = 0.0);

  int nchannels() const { return nchannels_; }
  bool polarized() const { return polarized_; }

  // -- input --
  Device& add_photons(int n, int channel);
  Device& add_photons(int n, int channel, int pol, double t, double f,
                      double w_or_tau, int period = 0);
  /// Raw input ket by per-channel occupations (scalar devices only).
  Device& add_input_ket(Complex amplitude, const std::vector<int>& channel_occupations);
  /// Path-encoded logical input; non-mapped channels default to zero photons.
  Device& qubits(const std::vector<int>& values, const QubitMap& map);
  Device& add_qd(int ch_xx, int ch_x, double t1, double f1, double w1,
                 double t2, double f2, double w2, double fss, double k,
                 double t_ss, double t_hv);
  Device& packet_shape(PacketShape shape);

  // -- elements (forwarded to the circuit at finalization) --
  Device& beamsplitter(int ch1, int ch2, double theta_deg, double phi_deg);
  Device& phase_shifter(int ch, double phi_deg);
  Device& dielectric(int ch1, int ch2, Complex t, Complex r);
  Device& mmi2(int ch1, int ch2);
  Device& rewire(int ch1, int ch2);
  Device& loss(int ch, double l);
  Device& nsx(int ch1, int ch2, int ch3);
  Device& delay(int ch, int periods);
  Device& rotator(int ch, double theta_deg, double phi_deg);
  Device& pol_beamsplitter(int ch1, int ch2, int reflected_pol);
  Device& half_waveplate(int ch, double alpha_deg);
  Device& quarter_waveplate(int ch, double alpha_deg);
  Device& random_unitary(uint64_t seed);
  Device& separator();
  Device& element(const ElementSpec& spec);

  // -- measurement --
  Device& detector(int ch);
  Device& detector(int ch, int condition);
  Device& detector(int ch, int condition, double efficiency, double dead_fraction,
                   double dark_rate);
  Device& add_detector(const DetectorSpec& spec);
  Device& ignore(int ch);
  Device& noise(double stdev2);
  Device& detector_kind(DetectorKind kind);

  // -- composition --
  Device& open_channel(int ch);
  /// Replays a sub-device's elements, photons and detector conditions on the
  /// given channels (channels[i] receives the sub-device's channel i).
  Device& add_gate(const std::vector<int>& channels, const Device& sub);

  /// Builds the simulation-ready view. Throws ValidationError on an
  /// inconsistent declaration set.
  CompiledDevice compile(bool apply_losses = true) const;

  // declaration access (used by gate composition and serialization)
  const std::vector<PhotonDecl>& photons() const { return photons_; }
  const std::vector<ElementSpec>& elements() const { return elements_; }
  const std::vector<DetectorSpec>& detectors() const { return detectors_; }
  const std::vector<QdDecl>& qd_sources() const { return qd_; }
  const std::vector<int>& ignored_channels() const { return ignored_; }
  const std::vector<int>& open_channels() const { return open_; }
  const std::vector<Term>& input_kets() const { return kets_; }
  double period_duration() const { return period_duration_; }
  double noise_variance() const { return noise_variance_; }
  DetectorKind kind() const { return kind_; }

 private:
  void check_channel(int ch, const char* what) const;

  int nchannels_;
  bool polarized_;
  double period_duration_;
  PacketShape shape_ = PacketShape::Gaussian;
  std::vector<PhotonDecl> photons_;
  std::vector<Term> kets_;  // raw input kets by channel occupation
  std::vector<ElementSpec> elements_;
  std::vector<DetectorSpec> detectors_;
  std::vector<QdDecl> qd_;
  std::vector<int> ignored_;
  std::vector<int> open_;
  double noise_variance_ = 0.0;
  DetectorKind kind_ = DetectorKind::Counter;
};

}  // namespace fockforge

#endif
