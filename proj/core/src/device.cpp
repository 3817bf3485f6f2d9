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

#include "fockforge/device.hpp"

#include <algorithm>
#include <cmath>

#include "fockforge/losses.hpp"

namespace fockforge {

State bosonic_product(const State& a, const State& b) {
  if (a.nmodes() != b.nmodes())
    throw ValidationError("bosonic_product: mode count mismatch");
  const int cap = std::max(a.max_occupation(), b.max_occupation());
  State out(a.nmodes(), cap);
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      OccupationVector ket = ta.ket;
      double enhancement = 1.0;
      for (std::size_t m = 0; m < ket.size(); ++m) {
        const int add = tb.ket[m];
        if (add == 0) continue;
        // sqrt((n+add)! / (n! add!))
        for (int c = 1; c <= add; ++c)
          enhancement *= std::sqrt(static_cast<double>(ket[m] + c) / c);
        ket[m] += add;
      }
      out.add_term(ta.amplitude * tb.amplitude * enhancement, ket);
    }
  }
  return out;
}

State CompiledDevice::sample_input(Rng& rng) const {
  State in = input;
  for (const CompiledQd& qd : qds) {
    const EmittedPair pair = sample_qd_pair(qd.params, rng);
    const State fragment = qd_pair_state(pair, qd.params, circuit.modes(),
                                         qd.packet_index_xx, qd.packet_index_x);
    in = bosonic_product(in, fragment);
  }
  in.normalize();
  if (loss_extended) in = pad_with_loss_modes(in, physical_modes);
  return in;
}

State CompiledDevice::fixed_input() const {
  if (stochastic())
    throw ValidationError("fixed_input: device has stochastic sources");
  if (loss_extended) return pad_with_loss_modes(input, physical_modes);
  return input;
}

Device::Device(int nchannels, bool polarized, double period_duration)
    : nchannels_(nchannels), polarized_(polarized),
      period_duration_(period_duration) {
  if (nchannels < 1) throw ValidationError("device: need at least one channel");
  if (period_duration < 0) throw ValidationError("device: negative period duration");
}

void Device::check_channel(int ch, const char* what) const {
  if (ch < 0 || ch >= nchannels_)
    throw ValidationError(std::string(what) + ": channel " + std::to_string(ch) +
                          " out of range");
}

Device& Device::add_photons(int n, int channel) {
  return add_photons(n, channel, 0, 0.0, 0.0, 1.0, 0);
}

Device& Device::add_photons(int n, int channel, int pol, double t, double f,
                            double w_or_tau, int period) {
  check_channel(channel, "add_photons");
  if (n < 0) throw ValidationError("add_photons: negative photon count");
  if (pol != 0 && pol != 1) throw ValidationError("add_photons: polarization must be 0 or 1");
  if (pol == 1 && !polarized_)
    throw ValidationError("add_photons: vertical polarization on a scalar device");
  PhotonDecl decl;
  decl.n = n;
  decl.channel = channel;
  decl.pol = pol;
  decl.packet = PacketSpec{shape_, t, f, w_or_tau, period};
  photons_.push_back(decl);
  return *this;
}

Device& Device::add_input_ket(Complex amplitude,
                              const std::vector<int>& channel_occupations) {
  if (polarized_)
    throw ValidationError("add_input_ket: raw kets are for scalar devices");
  if (static_cast<int>(channel_occupations.size()) != nchannels_)
    throw ValidationError("add_input_ket: occupation list does not match channel count");
  kets_.push_back(Term{amplitude, channel_occupations});
  return *this;
}

Device& Device::qubits(const std::vector<int>& values, const QubitMap& map) {
  if (values.size() != map.pairs.size())
    throw ValidationError("qubits: value list does not match qubit map");
  std::vector<int> occupations(static_cast<std::size_t>(nchannels_), 0);
  for (std::size_t q = 0; q < values.size(); ++q) {
    const auto& [a, b] = map.pairs[q];
    check_channel(a, "qubits");
    check_channel(b, "qubits");
    if (values[q] != 0 && values[q] != 1)
      throw ValidationError("qubits: logical values must be 0 or 1");
    occupations[static_cast<std::size_t>(values[q] == 1 ? a : b)] = 1;
  }
  return add_input_ket(Complex{1, 0}, occupations);
}

Device& Device::add_qd(int ch_xx, int ch_x, double t1, double f1, double w1,
                       double t2, double f2, double w2, double fss, double k,
                       double t_ss, double t_hv) {
  if (!polarized_) throw ValidationError("add_qd: quantum dots need a polarized device");
  check_channel(ch_xx, "add_qd");
  check_channel(ch_x, "add_qd");
  if (ch_xx == ch_x) throw ValidationError("add_qd: XX and X channels must differ");
  if (k < 0 || k > 1) throw ValidationError("add_qd: k outside [0,1]");
  if (t_ss <= 0 || t_hv <= 0)
    throw ValidationError("add_qd: characteristic times must be positive");
  QdDecl decl;
  decl.params.channel_xx = ch_xx;
  decl.params.channel_x = ch_x;
  decl.params.packet_xx = PacketSpec{shape_, t1, f1, w1, 0};
  decl.params.packet_x = PacketSpec{shape_, t2, f2, w2, 0};
  decl.params.fss = fss;
  decl.params.dot_fraction = k;
  decl.params.t_ss = t_ss;
  decl.params.t_hv = t_hv;
  qd_.push_back(decl);
  return *this;
}

Device& Device::packet_shape(PacketShape shape) {
  shape_ = shape;
  return *this;
}

Device& Device::element(const ElementSpec& spec) {
  validate_element(spec);
  for (int ch : spec.channels) check_channel(ch, element_kind_name(spec.kind).c_str());
  elements_.push_back(spec);
  return *this;
}

Device& Device::beamsplitter(int ch1, int ch2, double theta_deg, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::BeamSplitter;
  s.channels = {ch1, ch2};
  s.theta_deg = theta_deg;
  s.phi_deg = phi_deg;
  return element(s);
}

Device& Device::phase_shifter(int ch, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::PhaseShifter;
  s.channels = {ch};
  s.phi_deg = phi_deg;
  return element(s);
}

Device& Device::dielectric(int ch1, int ch2, Complex t, Complex r) {
  ElementSpec s;
  s.kind = ElementKind::Dielectric;
  s.channels = {ch1, ch2};
  s.transmission = t;
  s.reflection = r;
  return element(s);
}

Device& Device::mmi2(int ch1, int ch2) {
  ElementSpec s;
  s.kind = ElementKind::Mmi2;
  s.channels = {ch1, ch2};
  return element(s);
}

Device& Device::rewire(int ch1, int ch2) {
  ElementSpec s;
  s.kind = ElementKind::Rewire;
  s.channels = {ch1, ch2};
  return element(s);
}

Device& Device::loss(int ch, double l) {
  ElementSpec s;
  s.kind = ElementKind::Loss;
  s.channels = {ch};
  s.loss = l;
  return element(s);
}

Device& Device::nsx(int ch1, int ch2, int ch3) {
  ElementSpec s;
  s.kind = ElementKind::Nsx;
  s.channels = {ch1, ch2, ch3};
  return element(s);
}

Device& Device::delay(int ch, int periods) {
  ElementSpec s;
  s.kind = ElementKind::Delay;
  s.channels = {ch};
  s.periods = periods;
  return element(s);
}

Device& Device::rotator(int ch, double theta_deg, double phi_deg) {
  ElementSpec s;
  s.kind = ElementKind::Rotator;
  s.channels = {ch};
  s.theta_deg = theta_deg;
  s.phi_deg = phi_deg;
  return element(s);
}

Device& Device::pol_beamsplitter(int ch1, int ch2, int reflected_pol) {
  ElementSpec s;
  s.kind = ElementKind::PolarizingBeamSplitter;
  s.channels = {ch1, ch2};
  s.pol = reflected_pol;
  return element(s);
}

Device& Device::half_waveplate(int ch, double alpha_deg) {
  ElementSpec s;
  s.kind = ElementKind::HalfWavePlate;
  s.channels = {ch};
  s.alpha_deg = alpha_deg;
  return element(s);
}

Device& Device::quarter_waveplate(int ch, double alpha_deg) {
  ElementSpec s;
  s.kind = ElementKind::QuarterWavePlate;
  s.channels = {ch};
  s.alpha_deg = alpha_deg;
  return element(s);
}

Device& Device::random_unitary(uint64_t seed) {
  ElementSpec s;
  s.kind = ElementKind::RandomUnitary;
  s.seed = seed;
  elements_.push_back(s);
  return *this;
}

Device& Device::separator() {
  ElementSpec s;
  s.kind = ElementKind::Separator;
  elements_.push_back(s);
  return *this;
}

Device& Device::detector(int ch) {
  DetectorSpec s;
  s.channel = ch;
  check_channel(ch, "detector");
  detectors_.push_back(s);
  return *this;
}

Device& Device::detector(int ch, int condition) {
  DetectorSpec s;
  s.channel = ch;
  s.condition = condition;
  check_channel(ch, "detector");
  detectors_.push_back(s);
  return *this;
}

Device& Device::detector(int ch, int condition, double efficiency,
                         double dead_fraction, double dark_rate) {
  DetectorSpec s;
  s.channel = ch;
  s.condition = condition;
  s.efficiency = efficiency;
  s.dead_fraction = dead_fraction;
  s.dark_rate = dark_rate;
  return add_detector(s);
}

Device& Device::add_detector(const DetectorSpec& spec) {
  check_channel(spec.channel, "detector");
  detectors_.push_back(spec);
  return *this;
}

Device& Device::ignore(int ch) {
  check_channel(ch, "ignore");
  ignored_.push_back(ch);
  return *this;
}

Device& Device::noise(double stdev2) {
  if (stdev2 < 0) throw ValidationError("noise: negative variance");
  noise_variance_ = stdev2;
  return *this;
}

Device& Device::detector_kind(DetectorKind kind) {
  kind_ = kind;
  return *this;
}

Device& Device::open_channel(int ch) {
  check_channel(ch, "open_channel");
  open_.push_back(ch);
  return *this;
}

Device& Device::add_gate(const std::vector<int>& channels, const Device& sub) {
  if (static_cast<int>(channels.size()) != sub.nchannels_)
    throw ValidationError("add_gate: channel list does not match the gate's channel count");
  if (sub.polarized_ != polarized_)
    throw ValidationError("add_gate: polarization layout mismatch");
  if (!sub.qd_.empty())
    throw ValidationError("add_gate: gates with quantum-dot sources are not composable");
  for (int ch : channels) check_channel(ch, "add_gate");

  // open channels of the gate must carry no local state or measurement
  for (int open : sub.open_) {
    for (const PhotonDecl& p : sub.photons_)
      if (p.channel == open && p.n > 0)
        throw ValidationError("add_gate: open channel carries input photons");
    for (const DetectorSpec& d : sub.detectors_)
      if (d.channel == open)
        throw ValidationError("add_gate: open channel carries a detector");
  }

  auto remap = [&](int ch) { return channels[static_cast<std::size_t>(ch)]; };
  for (const ElementSpec& e : sub.elements_) {
    ElementSpec copy = e;
    for (int& ch : copy.channels) ch = remap(ch);
    elements_.push_back(copy);
  }
  for (const PhotonDecl& p : sub.photons_) {
    PhotonDecl copy = p;
    copy.channel = remap(p.channel);
    photons_.push_back(copy);
  }
  for (const DetectorSpec& d : sub.detectors_) {
    DetectorSpec copy = d;
    copy.channel = remap(d.channel);
    detectors_.push_back(copy);
  }
  return *this;
}

CompiledDevice Device::compile(bool apply_losses) const {
  // 1. packet table from photon and quantum-dot declarations
  PacketTable table(period_duration_);
  std::vector<int> photon_packet(photons_.size());
  for (std::size_t i = 0; i < photons_.size(); ++i)
    photon_packet[i] = table.add(photons_[i].packet);
  std::vector<CompiledQd> qds;
  for (const QdDecl& q : qd_) {
    CompiledQd c;
    c.params = q.params;
    c.packet_index_xx = table.add(q.params.packet_xx);
    c.packet_index_x = table.add(q.params.packet_x);
    qds.push_back(c);
  }
  // delays need period-shifted copies of every packet present at that point
  for (const ElementSpec& e : elements_) {
    if (e.kind != ElementKind::Delay || e.periods == 0) continue;
    if (period_duration_ <= 0)
      throw ValidationError("delay: device needs a positive period duration");
    const std::vector<PacketSpec> snapshot = table.packets();
    for (const PacketSpec& p : snapshot) {
      PacketSpec shifted = p;
      shifted.period += e.periods;
      table.add(shifted);
    }
  }

  const int npackets = table.empty() ? 1 : static_cast<int>(table.size());

  // 2. circuit construction and element replay
  CompiledDevice out;
  out.circuit = Circuit(nchannels_, polarized_, npackets, period_duration_);
  out.circuit.packet_table() = table;
  for (const ElementSpec& e : elements_) out.circuit.apply(e);

  // detectors; sub-unit efficiency shows up as a loss element on the channel
  for (const DetectorSpec& d : detectors_) {
    out.circuit.add_detector(d);
    if (d.efficiency < 1.0) out.circuit.loss(d.channel, 1.0 - d.efficiency);
  }
  for (int ch : ignored_) out.circuit.ignore(ch);

  if (!table.empty()) out.circuit.apply_emitter();

  // 3. deterministic input
  const ModeMap& modes = out.circuit.modes();
  out.physical_modes = modes.nmodes();
  int max_occ = kDefaultMaxOccupation;
  for (const PhotonDecl& p : photons_) max_occ = std::max(max_occ, p.n);
  State input(modes.nmodes(), max_occ);
  if (!kets_.empty()) {
    if (!photons_.empty())
      throw ValidationError("device: raw input kets and photon declarations are exclusive");
    for (const Term& t : kets_) {
      OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
      for (int ch = 0; ch < nchannels_; ++ch)
        ket[static_cast<std::size_t>(modes.index(ch, 0, 0))] =
            t.ket[static_cast<std::size_t>(ch)];
      input.add_term(t.amplitude, ket);
    }
  } else {
    OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
    for (std::size_t i = 0; i < photons_.size(); ++i) {
      const PhotonDecl& p = photons_[i];
      ket[static_cast<std::size_t>(modes.index(p.channel, p.pol, photon_packet[i]))] += p.n;
    }
    input.add_term(Complex{1, 0}, ket);
  }
  out.input = std::move(input);
  out.qds = std::move(qds);

  // 4. losses and the final transfer matrix
  out.lossy = out.circuit.has_lossy_elements();
  out.loss_extended = out.lossy && apply_losses;
  if (out.loss_extended) {
    const DilatedCircuit dilated = dilate(out.circuit.element_product());
    const int n = out.physical_modes;
    Eigen::MatrixXcd emitter2n = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    emitter2n.topLeftCorner(n, n) = out.circuit.emitter_factor();
    out.transfer = dilated.u2n * emitter2n;
    out.total_modes = 2 * n;
  } else {
    out.transfer = out.circuit.transfer_matrix();
    out.total_modes = out.physical_modes;
  }

  // 5. detection setup
  out.detection.modes = modes;
  out.detection.detectors = detectors_;
  out.detection.ignored = ignored_;
  out.detection.kind = kind_;
  out.detection.total_modes = out.total_modes;
  out.detection.noise_variance = noise_variance_;
  out.detection.packet_periods.resize(static_cast<std::size_t>(npackets), 0);
  for (std::size_t k = 0; k < table.size(); ++k)
    out.detection.packet_periods[k] = table.packet(k).period;
  return out;
}

}  // namespace fockforge
