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

#include "fockforge/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fockforge {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ValidationError("device file: " + where + ": " + what);
}

double require_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    schema_error(where, std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

double optional_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<double>();
}

ElementKind kind_from_name(const std::string& name, const std::string& where) {
  static const std::pair<const char*, ElementKind> table[] = {
      {"beamsplitter", ElementKind::BeamSplitter},
      {"phase_shifter", ElementKind::PhaseShifter},
      {"dielectric", ElementKind::Dielectric},
      {"mmi2", ElementKind::Mmi2},
      {"rewire", ElementKind::Rewire},
      {"loss", ElementKind::Loss},
      {"delay", ElementKind::Delay},
      {"nsx", ElementKind::Nsx},
      {"rotator", ElementKind::Rotator},
      {"pol_beamsplitter", ElementKind::PolarizingBeamSplitter},
      {"half_waveplate", ElementKind::HalfWavePlate},
      {"quarter_waveplate", ElementKind::QuarterWavePlate},
      {"random_unitary", ElementKind::RandomUnitary},
      {"separator", ElementKind::Separator},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  schema_error(where, "unknown element kind '" + name + "'");
}

Complex complex_from_json(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
    schema_error(where, std::string("field '") + key + "' must be [re, im]");
  return Complex{j[key][0].get<double>(), j[key][1].get<double>()};
}

}  // namespace

Device device_from_json(const json& j) {
  if (!j.is_object()) schema_error("/", "top level must be an object");
  if (!j.contains("channels") || !j["channels"].is_number_integer())
    schema_error("/channels", "missing integer channel count");
  const int channels = j["channels"].get<int>();
  const bool polarized = j.value("polarized", false);
  const double period_duration = j.value("period_duration", 0.0);

  Device device(channels, polarized, period_duration);

  if (j.contains("shape")) {
    const std::string shape = j["shape"].get<std::string>();
    if (shape == "gaussian")
      device.packet_shape(PacketShape::Gaussian);
    else if (shape == "exponential")
      device.packet_shape(PacketShape::Exponential);
    else
      schema_error("/shape", "must be 'gaussian' or 'exponential'");
  }
  if (j.contains("detector_kind")) {
    const std::string kind = j["detector_kind"].get<std::string>();
    if (kind == "counter")
      device.detector_kind(DetectorKind::Counter);
    else if (kind == "timed")
      device.detector_kind(DetectorKind::Timed);
    else if (kind == "full")
      device.detector_kind(DetectorKind::Full);
    else
      schema_error("/detector_kind", "must be 'counter', 'timed' or 'full'");
  }
  if (j.contains("noise")) device.noise(j["noise"].get<double>());

  if (j.contains("photons")) {
    if (!j["photons"].is_array()) schema_error("/photons", "must be an array");
    int i = 0;
    for (const json& p : j["photons"]) {
      const std::string where = "/photons/" + std::to_string(i++);
      const int n = static_cast<int>(require_number(p, "n", where));
      const int ch = static_cast<int>(require_number(p, "ch", where));
      const int pol = static_cast<int>(optional_number(p, "pol", 0));
      const double t = optional_number(p, "t", 0.0);
      const double f = optional_number(p, "f", 0.0);
      const double w = optional_number(p, "w", optional_number(p, "tau", 1.0));
      const int period = static_cast<int>(optional_number(p, "period", 0));
      device.add_photons(n, ch, pol, t, f, w, period);
    }
  }

  if (j.contains("input_state")) {
    if (!j["input_state"].is_array()) schema_error("/input_state", "must be an array");
    int i = 0;
    for (const json& term : j["input_state"]) {
      const std::string where = "/input_state/" + std::to_string(i++);
      if (!term.contains("ket") || !term["ket"].is_array())
        schema_error(where, "missing 'ket' array");
      std::vector<int> ket;
      for (const json& v : term["ket"]) ket.push_back(v.get<int>());
      device.add_input_ket(Complex{optional_number(term, "re", 0.0),
                                   optional_number(term, "im", 0.0)},
                           ket);
    }
  }

  if (j.contains("qd")) {
    if (!j["qd"].is_array()) schema_error("/qd", "must be an array");
    int i = 0;
    for (const json& q : j["qd"]) {
      const std::string where = "/qd/" + std::to_string(i++);
      device.add_qd(static_cast<int>(require_number(q, "ch_xx", where)),
                    static_cast<int>(require_number(q, "ch_x", where)),
                    require_number(q, "t1", where), require_number(q, "f1", where),
                    require_number(q, "w1", where), require_number(q, "t2", where),
                    require_number(q, "f2", where), require_number(q, "w2", where),
                    require_number(q, "S", where), require_number(q, "k", where),
                    require_number(q, "tss", where), require_number(q, "thv", where));
    }
  }

  if (j.contains("elements")) {
    if (!j["elements"].is_array()) schema_error("/elements", "must be an array");
    int i = 0;
    for (const json& e : j["elements"]) {
      const std::string where = "/elements/" + std::to_string(i++);
      if (!e.contains("kind")) schema_error(where, "missing 'kind'");
      ElementSpec spec;
      spec.kind = kind_from_name(e["kind"].get<std::string>(), where);
      if (e.contains("ch")) {
        if (e["ch"].is_array())
          for (const json& c : e["ch"]) spec.channels.push_back(c.get<int>());
        else
          spec.channels.push_back(e["ch"].get<int>());
      }
      const json params = e.value("params", json::object());
      switch (spec.kind) {
        case ElementKind::BeamSplitter:
        case ElementKind::Rotator:
          spec.theta_deg = require_number(params, "theta", where);
          spec.phi_deg = optional_number(params, "phi", 0.0);
          break;
        case ElementKind::PhaseShifter:
          spec.phi_deg = require_number(params, "phi", where);
          break;
        case ElementKind::Dielectric:
          spec.transmission = complex_from_json(params, "t", where);
          spec.reflection = complex_from_json(params, "r", where);
          break;
        case ElementKind::Loss:
          spec.loss = require_number(params, "l", where);
          break;
        case ElementKind::Delay:
          spec.periods = static_cast<int>(optional_number(params, "periods", 1));
          break;
        case ElementKind::PolarizingBeamSplitter:
          spec.pol = static_cast<int>(optional_number(params, "pol", 0));
          break;
        case ElementKind::HalfWavePlate:
        case ElementKind::QuarterWavePlate:
          spec.alpha_deg = require_number(params, "alpha", where);
          break;
        case ElementKind::RandomUnitary:
          spec.seed = static_cast<uint64_t>(optional_number(params, "seed", 0));
          break;
        default:
          break;
      }
      try {
        device.element(spec);
      } catch (const ValidationError& err) {
        schema_error(where, err.what());
      }
    }
  }

  if (j.contains("detectors")) {
    if (!j["detectors"].is_array()) schema_error("/detectors", "must be an array");
    int i = 0;
    for (const json& d : j["detectors"]) {
      const std::string where = "/detectors/" + std::to_string(i++);
      const int ch = static_cast<int>(require_number(d, "ch", where));
      DetectorSpec spec;
      spec.channel = ch;
      if (d.contains("cond")) spec.condition = d["cond"].get<int>();
      spec.efficiency = optional_number(d, "eff", 1.0);
      spec.dead_fraction = optional_number(d, "blnk", 0.0);
      spec.dark_rate = optional_number(d, "gamma", 0.0);
      device.add_detector(spec);
    }
  }

  if (j.contains("ignore")) {
    for (const json& c : j["ignore"]) device.ignore(c.get<int>());
  }
  return device;
}

json device_to_json(const Device& device) {
  json j;
  j["channels"] = device.nchannels();
  j["polarized"] = device.polarized();
  if (device.period_duration() > 0) j["period_duration"] = device.period_duration();
  if (device.noise_variance() > 0) j["noise"] = device.noise_variance();
  switch (device.kind()) {
    case DetectorKind::Counter: j["detector_kind"] = "counter"; break;
    case DetectorKind::Timed: j["detector_kind"] = "timed"; break;
    case DetectorKind::Full: j["detector_kind"] = "full"; break;
  }

  json photons = json::array();
  for (const PhotonDecl& p : device.photons()) {
    json entry;
    entry["n"] = p.n;
    entry["ch"] = p.channel;
    entry["pol"] = p.pol;
    entry["t"] = p.packet.t;
    entry["f"] = p.packet.omega;
    entry["w"] = p.packet.width;
    entry["period"] = p.packet.period;
    photons.push_back(entry);
    if (p.packet.shape == PacketShape::Exponential) j["shape"] = "exponential";
  }
  if (!photons.empty()) j["photons"] = photons;

  json kets = json::array();
  for (const Term& t : device.input_kets()) {
    json entry;
    entry["ket"] = t.ket;
    entry["re"] = t.amplitude.real();
    entry["im"] = t.amplitude.imag();
    kets.push_back(entry);
  }
  if (!kets.empty()) j["input_state"] = kets;

  json qds = json::array();
  for (const QdDecl& q : device.qd_sources()) {
    json entry;
    entry["ch_xx"] = q.params.channel_xx;
    entry["ch_x"] = q.params.channel_x;
    entry["t1"] = q.params.packet_xx.t;
    entry["f1"] = q.params.packet_xx.omega;
    entry["w1"] = q.params.packet_xx.width;
    entry["t2"] = q.params.packet_x.t;
    entry["f2"] = q.params.packet_x.omega;
    entry["w2"] = q.params.packet_x.width;
    entry["S"] = q.params.fss;
    entry["k"] = q.params.dot_fraction;
    entry["tss"] = q.params.t_ss;
    entry["thv"] = q.params.t_hv;
    qds.push_back(entry);
    if (q.params.packet_xx.shape == PacketShape::Exponential) j["shape"] = "exponential";
  }
  if (!qds.empty()) j["qd"] = qds;

  json elements = json::array();
  for (const ElementSpec& e : device.elements()) {
    json entry;
    entry["kind"] = element_kind_name(e.kind);
    if (!e.channels.empty()) entry["ch"] = e.channels;
    json params = json::object();
    switch (e.kind) {
      case ElementKind::BeamSplitter:
      case ElementKind::Rotator:
        params["theta"] = e.theta_deg;
        params["phi"] = e.phi_deg;
        break;
      case ElementKind::PhaseShifter:
        params["phi"] = e.phi_deg;
        break;
      case ElementKind::Dielectric:
        params["t"] = {e.transmission.real(), e.transmission.imag()};
        params["r"] = {e.reflection.real(), e.reflection.imag()};
        break;
      case ElementKind::Loss:
        params["l"] = e.loss;
        break;
      case ElementKind::Delay:
        params["periods"] = e.periods;
        break;
      case ElementKind::PolarizingBeamSplitter:
        params["pol"] = e.pol;
        break;
      case ElementKind::HalfWavePlate:
      case ElementKind::QuarterWavePlate:
        params["alpha"] = e.alpha_deg;
        break;
      case ElementKind::RandomUnitary:
        params["seed"] = e.seed;
        break;
      default:
        break;
    }
    if (!params.empty()) entry["params"] = params;
    elements.push_back(entry);
  }
  if (!elements.empty()) j["elements"] = elements;

  json detectors = json::array();
  for (const DetectorSpec& d : device.detectors()) {
    json entry;
    entry["ch"] = d.channel;
    if (d.condition) entry["cond"] = *d.condition;
    if (d.efficiency != 1.0) entry["eff"] = d.efficiency;
    if (d.dead_fraction != 0.0) entry["blnk"] = d.dead_fraction;
    if (d.dark_rate != 0.0) entry["gamma"] = d.dark_rate;
    detectors.push_back(entry);
  }
  if (!detectors.empty()) j["detectors"] = detectors;
  if (!device.ignored_channels().empty()) j["ignore"] = device.ignored_channels();
  return j;
}

Device load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open device file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ValidationError("device file " + path + ": parse error at byte " +
                          std::to_string(err.byte) + ": " + err.what());
  }
  return device_from_json(j);
}

json state_to_json(const State& s) {
  State sorted = s;
  sorted.prune();
  sorted.sort_terms();
  json out = json::array();
  for (const Term& t : sorted.terms()) {
    json entry;
    entry["ket"] = t.ket;
    entry["re"] = t.amplitude.real();
    entry["im"] = t.amplitude.imag();
    out.push_back(entry);
  }
  return out;
}

State state_from_json(const json& j, int nmodes) {
  if (!j.is_array()) throw ValidationError("state json: expected an array");
  State out(nmodes);
  for (const json& term : j) {
    std::vector<int> ket;
    for (const json& v : term.at("ket")) ket.push_back(v.get<int>());
    out.add_term(Complex{term.value("re", 0.0), term.value("im", 0.0)}, ket);
  }
  return out;
}

std::string format_amplitude(const Complex& a) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(9);
  out << (a.real() < 0 ? "-" : " ") << std::abs(a.real());
  out << (a.imag() < 0 ? " - " : " + ") << std::abs(a.imag()) << " j";
  return out.str();
}

std::string state_to_text(const State& s) {
  State sorted = s;
  sorted.prune();
  sorted.sort_terms();
  std::ostringstream out;
  for (const Term& t : sorted.terms())
    out << format_ket(t.ket) << ": " << format_amplitude(t.amplitude) << "\n";
  return out.str();
}

namespace {

std::string key_field(const std::vector<int>& key) {
  std::ostringstream out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out << ' ';
    out << key[i];
  }
  return out.str();
}

}  // namespace

std::string bins_to_csv(const ProbabilityBins& bins) {
  std::ostringstream out;
  out << "ket,probability\n" << std::fixed << std::setprecision(9);
  for (const auto& [key, p] : bins.bins())
    out << '"' << key_field(key) << "\"," << p << "\n";
  return out.str();
}

std::string sample_counts_to_csv(const std::map<std::vector<int>, long>& counts,
                                 long total) {
  std::ostringstream out;
  out << "ket,count,frequency\n" << std::fixed << std::setprecision(9);
  for (const auto& [key, count] : counts) {
    const double freq = total > 0 ? static_cast<double>(count) / total : 0.0;
    out << '"' << key_field(key) << "\"," << count << ',' << freq << "\n";
  }
  return out.str();
}

std::string density_matrix_to_text(const DensityMatrix& dm, const ModeMap& modes,
                                   const std::vector<int>& kept_channels,
                                   bool normalized) {
  const Eigen::MatrixXcd rho = normalized ? dm.normalized() : dm.averaged();
  const auto labels = dm.sorted_labels();
  const int submodes = modes.npol() * modes.npackets();

  auto label_text = [&](const std::vector<int>& ket) {
    std::ostringstream out;
    out << "| ";
    if (modes.npol() == 1 && modes.npackets() == 1) {
      for (std::size_t i = 0; i < ket.size(); ++i) {
        if (i) out << ", ";
        out << ket[i];
      }
    } else {
      bool first = true;
      for (std::size_t i = 0; i < ket.size(); ++i) {
        const int channel = kept_channels[i / static_cast<std::size_t>(submodes)];
        const int rest = static_cast<int>(i % static_cast<std::size_t>(submodes));
        const int pol = rest / modes.npackets();
        const int packet = rest % modes.npackets();
        for (int c = 0; c < ket[i]; ++c) {
          if (!first) out << ", ";
          first = false;
          if (modes.npol() == 2) out << (pol == 0 ? 'H' : 'V');
          out << '(' << packet << ')' << channel;
        }
      }
      if (first) out << "vacuum";
    }
    out << " >";
    return out.str();
  };

  std::size_t width = 0;
  std::vector<std::string> texts;
  for (const auto& [ket, index] : labels) {
    texts.push_back(label_text(ket));
    width = std::max(width, texts.back().size());
  }

  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    out << texts[r] << std::string(width - texts[r].size() + 2, ' ');
    for (std::size_t c = 0; c < labels.size(); ++c) {
      const Complex value = rho(labels[r].second, labels[c].second);
      out << std::setw(8) << value.real();
      if (std::abs(value.imag()) > 5e-5) out << std::setw(0) << (value.imag() < 0 ? "-" : "+") << std::abs(value.imag()) << "i";
      out << ' ';
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fockforge
