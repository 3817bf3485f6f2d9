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

#include "fockforge/circuit.hpp"

#include <cmath>

namespace fockforge {

Circuit::Circuit(int nchannels, bool polarized, int npackets,
                 double period_duration)
    : modes_(nchannels, polarized ? 2 : 1, npackets),
      packets_(period_duration) {
  unitary_ = Eigen::MatrixXcd::Identity(modes_.nmodes(), modes_.nmodes());
}

void Circuit::beamsplitter(int ch1, int ch2, double theta_deg, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::BeamSplitter;
  s.channels = {ch1, ch2};
  s.theta_deg = theta_deg;
  s.phi_deg = phi_deg;
  apply(s);
}

void Circuit::phase_shifter(int ch, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::PhaseShifter;
  s.channels = {ch};
  s.phi_deg = phi_deg;
  apply(s);
}

void Circuit::dielectric(int ch1, int ch2, Complex t, Complex r) {
  ElementSpec s;
  s.kind = ElementKind::Dielectric;
  s.channels = {ch1, ch2};
  s.transmission = t;
  s.reflection = r;
  apply(s);
}

void Circuit::mmi2(int ch1, int ch2) {
  ElementSpec s;
  s.kind = ElementKind::Mmi2;
  s.channels = {ch1, ch2};
  apply(s);
}

void Circuit::rewire(int ch1, int ch2) {
  ElementSpec s;
  s.kind = ElementKind::Rewire;
  s.channels = {ch1, ch2};
  apply(s);
}

void Circuit::loss(int ch, double l) {
  ElementSpec s;
  s.kind = ElementKind::Loss;
  s.channels = {ch};
  s.loss = l;
  apply(s);
}

void Circuit::nsx(int ch1, int ch2, int ch3) {
  ElementSpec s;
  s.kind = ElementKind::Nsx;
  s.channels = {ch1, ch2, ch3};
  apply(s);
}

void Circuit::delay(int ch, int periods) {
  ElementSpec s;
  s.kind = ElementKind::Delay;
  s.channels = {ch};
  s.periods = periods;
  apply(s);
}

void Circuit::rotator(int ch, double theta_deg, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::Rotator;
  s.channels = {ch};
  s.theta_deg = theta_deg;
  s.phi_deg = phi_deg;
  apply(s);
}

void Circuit::pol_beamsplitter(int ch1, int ch2, int reflected_pol) {
  ElementSpec s;
  s.kind = ElementKind::PolarizingBeamSplitter;
  s.channels = {ch1, ch2};
  s.pol = reflected_pol;
  apply(s);
}

void Circuit::half_waveplate(int ch, double alpha_deg) {
  ElementSpec s;
  s.kind = ElementKind::HalfWavePlate;
  s.channels = {ch};
  s.alpha_deg = alpha_deg;
  apply(s);
}

void Circuit::quarter_waveplate(int ch, double alpha_deg) {
  ElementSpec s;
  s.kind = ElementKind::QuarterWavePlate;
  s.channels = {ch};
  s.alpha_deg = alpha_deg;
  apply(s);
}

void Circuit::random_unitary(uint64_t seed) {
  ElementSpec s;
  s.kind = ElementKind::RandomUnitary;
  s.seed = seed;
  apply(s);
}

void Circuit::separator() {
  ElementSpec s;
  s.kind = ElementKind::Separator;
  elements_.push_back(s);
}

void Circuit::apply(const ElementSpec& spec) {
  validate_element(spec);
  for (int ch : spec.channels)
    if (!modes_.valid_channel(ch))
      throw ValidationError(element_kind_name(spec.kind) + ": channel " +
                            std::to_string(ch) + " out of range");
  const bool needs_pol = spec.kind == ElementKind::Rotator ||
                         spec.kind == ElementKind::HalfWavePlate ||
                         spec.kind == ElementKind::QuarterWavePlate ||
                         spec.kind == ElementKind::PolarizingBeamSplitter;
  if (needs_pol && !polarized())
    throw ValidationError(element_kind_name(spec.kind) +
                          ": requires a polarized circuit");
  if (spec.kind == ElementKind::Separator) {
    elements_.push_back(spec);
    return;
  }
  unitary_ = full_mode_matrix(spec) * unitary_;
  elements_.push_back(spec);
  if (spec.kind == ElementKind::Loss && spec.loss > 0.0) lossy_ = true;
  if (spec.kind == ElementKind::Dielectric) {
    // power deficiency or non-orthogonal columns break unitarity
    const Complex t = spec.transmission, r = spec.reflection;
    const double power = std::norm(t) + std::norm(r);
    const double cross = std::abs(t * std::conj(r) + r * std::conj(t));
    if (power < 1.0 - 1e-12 || cross > 1e-12) lossy_ = true;
  }
}

Eigen::MatrixXcd Circuit::full_mode_matrix(const ElementSpec& spec) const {
  const int dim = modes_.nmodes();
  switch (spec.kind) {
    case ElementKind::BeamSplitter:
    case ElementKind::PhaseShifter:
    case ElementKind::Dielectric:
    case ElementKind::Mmi2:
    case ElementKind::Rewire:
    case ElementKind::Loss:
    case ElementKind::Nsx: {
      // channel-level element: identical action on every (pol, packet)
      const Eigen::MatrixXcd local = element_matrix(spec);
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
      for (int p = 0; p < modes_.npol(); ++p) {
        for (int k = 0; k < modes_.npackets(); ++k) {
          for (std::size_t r = 0; r < spec.channels.size(); ++r) {
            for (std::size_t c = 0; c < spec.channels.size(); ++c) {
              full(modes_.index(spec.channels[r], p, k),
                   modes_.index(spec.channels[c], p, k)) =
                  local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
          }
        }
      }
      return full;
    }
    case ElementKind::Rotator:
    case ElementKind::HalfWavePlate:
    case ElementKind::QuarterWavePlate: {
      const Eigen::MatrixXcd local = jones_matrix(spec);
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
      const int ch = spec.channels[0];
      for (int k = 0; k < modes_.npackets(); ++k) {
        const std::vector<int> targets{modes_.index(ch, 0, k), modes_.index(ch, 1, k)};
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) full(targets[r], targets[c]) = local(r, c);
      }
      return full;
    }
    case ElementKind::PolarizingBeamSplitter: {
      // transmitted polarization passes, the selected one swaps channels
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
      const int a = spec.channels[0], b = spec.channels[1];
      for (int k = 0; k < modes_.npackets(); ++k) {
        const int ma = modes_.index(a, spec.pol, k);
        const int mb = modes_.index(b, spec.pol, k);
        full(ma, ma) = 0;
        full(mb, mb) = 0;
        full(ma, mb) = 1;
        full(mb, ma) = 1;
      }
      return full;
    }
    case ElementKind::Delay:
      return delay_matrix(*this, spec.channels[0], spec.periods);
    case ElementKind::RandomUnitary: {
      const Eigen::MatrixXcd local = haar_unitary(modes_.nchannels(), spec.seed);
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
      for (int p = 0; p < modes_.npol(); ++p)
        for (int k = 0; k < modes_.npackets(); ++k)
          for (int r = 0; r < modes_.nchannels(); ++r)
            for (int c = 0; c < modes_.nchannels(); ++c)
              full(modes_.index(r, p, k), modes_.index(c, p, k)) = local(r, c);
      return full;
    }
    default:
      throw ValidationError("apply: element has no matrix");
  }
}

void Circuit::apply_emitter() {
  if (emitter_applied_) throw ValidationError("emitter already applied");
  emitter_ = emitter_matrix(*this);
  emitter_applied_ = true;
}

Eigen::MatrixXcd Circuit::emitter_factor() const {
  if (!emitter_applied_)
    return Eigen::MatrixXcd::Identity(modes_.nmodes(), modes_.nmodes());
  return emitter_;
}

Eigen::MatrixXcd Circuit::transfer_matrix() const {
  if (!emitter_applied_) return unitary_;
  return unitary_ * emitter_;
}

void Circuit::detector(int ch) {
  DetectorSpec s;
  s.channel = ch;
  add_detector(s);
}

void Circuit::detector(int ch, int condition) {
  DetectorSpec s;
  s.channel = ch;
  s.condition = condition;
  add_detector(s);
}

void Circuit::detector(int ch, int condition, double efficiency,
                       double dead_fraction, double dark_rate) {
  DetectorSpec s;
  s.channel = ch;
  s.condition = condition;
  s.efficiency = efficiency;
  s.dead_fraction = dead_fraction;
  s.dark_rate = dark_rate;
  add_detector(s);
}

void Circuit::add_detector(const DetectorSpec& spec) {
  if (!modes_.valid_channel(spec.channel))
    throw ValidationError("detector: channel out of range");
  if (spec.condition && *spec.condition < 0)
    throw ValidationError("detector: negative condition");
  if (spec.efficiency < 0 || spec.efficiency > 1)
    throw ValidationError("detector: efficiency outside [0,1]");
  if (spec.dead_fraction < 0 || spec.dead_fraction > 1)
    throw ValidationError("detector: dead-time fraction outside [0,1]");
  if (spec.dark_rate < 0) throw ValidationError("detector: negative dark rate");
  for (const DetectorSpec& d : detectors_)
    if (d.channel == spec.channel)
      throw ValidationError("detector: channel " + std::to_string(spec.channel) +
                            " already has a detector");
  for (int ch : ignored_)
    if (ch == spec.channel)
      throw ValidationError("detector: channel is flagged as ignored");
  detectors_.push_back(spec);
}

void Circuit::ignore(int ch) {
  if (!modes_.valid_channel(ch)) throw ValidationError("ignore: channel out of range");
  for (const DetectorSpec& d : detectors_)
    if (d.channel == ch)
      throw ValidationError("ignore: channel already has a detector");
  ignored_.push_back(ch);
}

Eigen::MatrixXcd delay_matrix(const Circuit& circuit, int channel, int periods) {
  const ModeMap& modes = circuit.modes();
  if (!modes.valid_channel(channel))
    throw ValidationError("delay: channel out of range");
  const int dim = modes.nmodes();
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
  if (periods == 0) return full;

  const PacketTable& table = circuit.packet_table();
  if (table.empty())
    throw ValidationError("delay: circuit has no packet table");
  int mapped = 0;
  for (int p = 0; p < modes.npol(); ++p) {
    for (int k = 0; k < static_cast<int>(table.size()); ++k) {
      const int from = modes.index(channel, p, k);
      full.col(from).setZero();
      const int target = table.shifted(k, periods);
      if (target >= 0) {
        full(modes.index(channel, p, target), from) = 1;
        ++mapped;
      }
      // An absent shifted copy leaves the column zero: the photon is
      // delayed out of the simulated packet window.
    }
  }
  if (mapped == 0)
    throw ValidationError(
        "delay: packet table has no period-shifted copies for a delay of " +
        std::to_string(periods) + " periods");
  return full;
}

Eigen::MatrixXcd emitter_matrix(const Circuit& circuit) {
  const ModeMap& modes = circuit.modes();
  const int dim = modes.nmodes();
  const PacketTable& table = circuit.packet_table();
  if (table.empty() || table.size() == 1)
    return Eigen::MatrixXcd::Identity(dim, dim);
  if (static_cast<int>(table.size()) > modes.npackets())
    throw ValidationError("emitter: packet table exceeds the mode map's packet count");

  const EmitterMatrix gs = gram_schmidt(table.gram());
  const auto np = static_cast<int>(table.size());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (int ch = 0; ch < modes.nchannels(); ++ch) {
    for (int p = 0; p < modes.npol(); ++p) {
      for (int i = 0; i < modes.npackets(); ++i) {
        if (i >= np) {
          const int m = modes.index(ch, p, i);
          full(m, m) = 1;
          continue;
        }
        // physical packet i feeds orthonormal packets k <= i
        for (int k = 0; k <= i; ++k)
          full(modes.index(ch, p, k), modes.index(ch, p, i)) =
              std::conj(gs.coefficients(i, k));
      }
    }
  }
  return full;
}

}  // namespace fockforge
