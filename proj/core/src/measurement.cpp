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

#include "fockforge/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace fockforge {

namespace {

std::vector<int> conditioned_channels(const std::vector<DetectorSpec>& detectors) {
  std::vector<int> out;
  for (const DetectorSpec& d : detectors)
    if (d.condition) out.push_back(d.channel);
  std::sort(out.begin(), out.end());
  return out;
}

// Flat mode indices of the given channels, channel-ascending.
std::vector<int> channel_mode_list(const ModeMap& modes, const std::vector<int>& channels) {
  std::vector<int> out;
  for (int ch : channels) {
    const std::vector<int> m = modes.channel_modes(ch);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

void compose_channel(int slot, int nslots, int remaining, OccupationVector& current,
                     std::vector<OccupationVector>& out) {
  if (slot == nslots - 1) {
    current[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(slot)] = k;
    compose_channel(slot + 1, nslots, remaining - k, current, out);
  }
}

}  // namespace

Condition condition_from_detectors(const std::vector<DetectorSpec>& detectors) {
  Condition cond;
  for (const DetectorSpec& d : detectors)
    if (d.condition) cond.required.emplace_back(d.channel, *d.condition);
  std::sort(cond.required.begin(), cond.required.end());
  return cond;
}

std::vector<OccupationVector> enumerate_projectors(const Condition& condition,
                                                   const ModeMap& modes) {
  const int submodes = modes.npol() * modes.npackets();
  std::vector<OccupationVector> result{OccupationVector{}};
  for (const auto& [channel, count] : condition.required) {
    if (!modes.valid_channel(channel))
      throw ValidationError("enumerate_projectors: channel out of range");
    std::vector<OccupationVector> channel_kets;
    OccupationVector current(static_cast<std::size_t>(submodes), 0);
    compose_channel(0, submodes, count, current, channel_kets);
    std::vector<OccupationVector> extended;
    extended.reserve(result.size() * channel_kets.size());
    for (const OccupationVector& prefix : result) {
      for (const OccupationVector& ket : channel_kets) {
        OccupationVector combined = prefix;
        combined.insert(combined.end(), ket.begin(), ket.end());
        extended.push_back(std::move(combined));
      }
    }
    result = std::move(extended);
  }
  return result;
}

namespace {

struct ConditionContext {
  std::vector<int> cond_channels;
  std::vector<int> cond_modes;  // raw modes of conditioned channels
  std::vector<int> kept_modes;  // remaining raw modes
  std::vector<int> kept_channels;
  std::vector<std::pair<int, int>> required;  // aligned with cond_channels
};

ConditionContext make_condition_context(const Circuit& circuit) {
  const ModeMap& modes = circuit.modes();
  ConditionContext ctx;
  ctx.cond_channels = conditioned_channels(circuit.detectors());
  const Condition cond = condition_from_detectors(circuit.detectors());
  ctx.required = cond.required;
  ctx.cond_modes = channel_mode_list(modes, ctx.cond_channels);
  for (int ch = 0; ch < modes.nchannels(); ++ch)
    if (!std::binary_search(ctx.cond_channels.begin(), ctx.cond_channels.end(), ch))
      ctx.kept_channels.push_back(ch);
  ctx.kept_modes = channel_mode_list(modes, ctx.kept_channels);
  return ctx;
}

bool term_passes(const OccupationVector& ket, const ModeMap& modes,
                 const std::vector<std::pair<int, int>>& required) {
  for (const auto& [channel, count] : required)
    if (modes.channel_total(ket, channel) != count) return false;
  return true;
}

OccupationVector gather(const OccupationVector& ket, const std::vector<int>& positions) {
  OccupationVector out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    out[i] = ket[static_cast<std::size_t>(positions[i])];
  return out;
}

}  // namespace

ReducedState apply_condition(const State& raw, const Circuit& circuit) {
  const ModeMap& modes = circuit.modes();
  if (raw.nmodes() != modes.nmodes())
    throw ValidationError(
        "apply_condition: state does not live on the circuit's physical modes "
        "(loss-extended states go through the detection pipeline)");
  const ConditionContext ctx = make_condition_context(circuit);

  ReducedState out;
  out.channels = ctx.kept_channels;
  out.state = State(static_cast<int>(ctx.kept_modes.size()), raw.max_occupation());
  for (const Term& t : raw.terms()) {
    if (!term_passes(t.ket, modes, ctx.required)) continue;
    out.state.add_term(t.amplitude, gather(t.ket, ctx.kept_modes));
  }
  out.state.prune();
  out.state.sort_terms();
  return out;
}

std::vector<State> project_per_projector(const State& raw, const Circuit& circuit) {
  const ModeMap& modes = circuit.modes();
  if (raw.nmodes() != modes.nmodes())
    throw ValidationError("project_per_projector: state does not match circuit modes");
  const ConditionContext ctx = make_condition_context(circuit);

  // group passing terms by the content of the conditioned sub-modes; each
  // occupied projector yields one reduced state
  std::map<OccupationVector, State> groups;
  for (const Term& t : raw.terms()) {
    if (!term_passes(t.ket, modes, ctx.required)) continue;
    OccupationVector projector_ket = gather(t.ket, ctx.cond_modes);
    auto [it, inserted] = groups.try_emplace(
        std::move(projector_ket),
        State(static_cast<int>(ctx.kept_modes.size()), raw.max_occupation()));
    it->second.add_term(t.amplitude, gather(t.ket, ctx.kept_modes));
  }
  std::vector<State> out;
  out.reserve(groups.size());
  for (auto& [ket, state] : groups) {
    state.prune();
    state.sort_terms();
    if (!state.empty()) out.push_back(std::move(state));
  }
  return out;
}

State project_onto_state(const State& raw, const State& projector,
                         const std::vector<int>& measured_modes) {
  if (projector.nmodes() != static_cast<int>(measured_modes.size()))
    throw ValidationError("project_onto_state: projector does not match measured modes");
  std::vector<bool> measured(static_cast<std::size_t>(raw.nmodes()), false);
  for (int m : measured_modes) {
    if (m < 0 || m >= raw.nmodes())
      throw ValidationError("project_onto_state: measured mode out of range");
    measured[static_cast<std::size_t>(m)] = true;
  }
  std::vector<int> rest_modes;
  for (int m = 0; m < raw.nmodes(); ++m)
    if (!measured[static_cast<std::size_t>(m)]) rest_modes.push_back(m);

  State out(static_cast<int>(rest_modes.size()), raw.max_occupation());
  for (const Term& t : raw.terms()) {
    const Complex weight = std::conj(projector.amplitude_of(gather(t.ket, measured_modes)));
    if (weight == Complex{0, 0}) continue;
    out.add_term(weight * t.amplitude, gather(t.ket, rest_modes));
  }
  out.prune();
  out.sort_terms();
  return out;
}

const DetectorSpec* DetectionSetup::detector_for(int channel) const {
  for (const DetectorSpec& d : detectors)
    if (d.channel == channel) return &d;
  return nullptr;
}

bool DetectionSetup::has_stochastic_models() const {
  for (const DetectorSpec& d : detectors)
    if (d.dark_rate > 0 || d.dead_fraction > 0) return true;
  return false;
}

std::vector<int> OutcomeLayout::relabel(const OccupationVector& raw_ket) const {
  std::vector<int> key(entries.size(), 0);
  const std::size_t physical = mode_to_entry.size();
  for (std::size_t m = 0; m < physical && m < raw_ket.size(); ++m) {
    const int e = mode_to_entry[m];
    if (e >= 0) key[static_cast<std::size_t>(e)] += raw_ket[m];
  }
  return key;
}

std::string OutcomeLayout::label(const std::vector<int>& key, bool polarized) const {
  std::ostringstream out;
  out << "| ";
  if (!polarized) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out << ", ";
      out << key[i];
    }
    out << " >";
    return out.str();
  }
  // per-photon listing in the paper's H(packet)channel style
  bool first = true;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const Entry& e = entries[i];
    for (int c = 0; c < key[i]; ++c) {
      if (!first) out << ", ";
      first = false;
      out << (e.pol == 0 ? 'H' : 'V');
      if (e.packet >= 0)
        out << '(' << e.packet << ')';
      else if (e.period >= 0)
        out << '(' << e.period << ')';
      out << e.channel;
    }
  }
  if (first) out << "vacuum";
  out << " >";
  return out.str();
}

OutcomeLayout outcome_layout(const DetectionSetup& setup) {
  const ModeMap& modes = setup.modes;
  std::vector<bool> dropped(static_cast<std::size_t>(modes.nchannels()), false);
  for (const DetectorSpec& d : setup.detectors)
    if (d.condition) dropped[static_cast<std::size_t>(d.channel)] = true;
  for (int ch : setup.ignored) dropped[static_cast<std::size_t>(ch)] = true;

  OutcomeLayout layout;
  layout.mode_to_entry.assign(static_cast<std::size_t>(modes.nmodes()), -1);

  std::map<std::tuple<int, int, int, int>, int> seen;  // (ch,pol,period,packet)->entry
  for (int ch = 0; ch < modes.nchannels(); ++ch) {
    if (dropped[static_cast<std::size_t>(ch)]) continue;
    for (int p = 0; p < modes.npol(); ++p) {
      for (int k = 0; k < modes.npackets(); ++k) {
        int period = -1, packet = -1;
        switch (setup.kind) {
          case DetectorKind::Counter:
            break;
          case DetectorKind::Timed:
            period = k < static_cast<int>(setup.packet_periods.size())
                         ? setup.packet_periods[static_cast<std::size_t>(k)]
                         : 0;
            break;
          case DetectorKind::Full:
            packet = k;
            break;
        }
        const std::tuple<int, int, int, int> slot{ch, p, period, packet};
        auto it = seen.find(slot);
        int entry_index;
        if (it == seen.end()) {
          entry_index = static_cast<int>(layout.entries.size());
          layout.entries.push_back(OutcomeLayout::Entry{ch, p, period, packet});
          seen.emplace(slot, entry_index);
        } else {
          entry_index = it->second;
        }
        layout.mode_to_entry[static_cast<std::size_t>(modes.index(ch, p, k))] = entry_index;
      }
    }
  }
  return layout;
}

ProbabilityBins raw_bins(const State& s) {
  ProbabilityBins bins;
  for (const Term& t : s.terms()) {
    const double p = std::norm(t.amplitude);
    if (p > 0) bins.add(t.ket, p);
  }
  return bins;
}

ProbabilityBins bins_from_state(const State& s, const DetectionSetup& setup) {
  const OutcomeLayout layout = outcome_layout(setup);
  ProbabilityBins out;
  for (const Term& t : s.terms()) {
    const double p = std::norm(t.amplitude);
    if (p > 0) out.add(layout.relabel(t.ket), p);
  }
  return out;
}

namespace {

// One cumulative draw from a bin map (map order keeps this deterministic).
const std::vector<int>* draw_key(const ProbabilityBins& bins, double total, Rng& rng) {
  double target = rng.uniform() * total;
  const std::vector<int>* last = nullptr;
  for (const auto& [key, p] : bins.bins()) {
    last = &key;
    target -= p;
    if (target < 0) break;
  }
  return last;
}

void apply_dark_counts(OccupationVector& ket, const DetectionSetup& setup, Rng& rng) {
  for (const DetectorSpec& d : setup.detectors) {
    if (d.dark_rate <= 0) continue;
    const int extra = rng.poisson(d.dark_rate);
    if (extra > 0)
      ket[static_cast<std::size_t>(setup.modes.index(d.channel, 0, 0))] += extra;
  }
}

void apply_dead_time(OccupationVector& ket, const DetectionSetup& setup, Rng& rng) {
  for (const DetectorSpec& d : setup.detectors) {
    if (d.dead_fraction <= 0) continue;
    for (int m : setup.modes.channel_modes(d.channel)) {
      int kept = 0;
      for (int c = 0; c < ket[static_cast<std::size_t>(m)]; ++c)
        if (!rng.bernoulli(d.dead_fraction)) ++kept;
      ket[static_cast<std::size_t>(m)] = kept;
    }
  }
}

bool passes_conditions(const OccupationVector& ket, const DetectionSetup& setup) {
  for (const DetectorSpec& d : setup.detectors) {
    if (!d.condition) continue;
    if (setup.modes.channel_total(ket, d.channel) != *d.condition) return false;
  }
  return true;
}

}  // namespace

ProbabilityBins dark_counts(const ProbabilityBins& raw, const DetectionSetup& setup,
                            Rng& rng, long runs) {
  if (runs <= 0) throw ValidationError("dark_counts: runs must be positive");
  const double total = raw.total();
  ProbabilityBins out;
  if (total <= 0) return out;
  for (long r = 0; r < runs; ++r) {
    const std::vector<int>* key = draw_key(raw, total, rng);
    if (!key) break;
    OccupationVector ket = *key;
    apply_dark_counts(ket, setup, rng);
    out.add(ket, 1.0);
  }
  out.scale(total / static_cast<double>(runs));
  return out;
}

ProbabilityBins dead_time(const ProbabilityBins& raw, const DetectionSetup& setup,
                          Rng& rng, long runs) {
  if (runs <= 0) throw ValidationError("dead_time: runs must be positive");
  const double total = raw.total();
  ProbabilityBins out;
  if (total <= 0) return out;
  for (long r = 0; r < runs; ++r) {
    const std::vector<int>* key = draw_key(raw, total, rng);
    if (!key) break;
    OccupationVector ket = *key;
    apply_dead_time(ket, setup, rng);
    out.add(ket, 1.0);
  }
  out.scale(total / static_cast<double>(runs));
  return out;
}

ProbabilityBins add_noise(const ProbabilityBins& bins, double variance, Rng& rng) {
  if (variance < 0) throw ValidationError("add_noise: negative variance");
  ProbabilityBins out = bins;
  if (variance == 0) return out;
  const double sigma = std::sqrt(variance);
  for (auto& [key, p] : out.bins()) p = std::max(0.0, p + rng.normal(0, sigma));
  return out;
}

ProbabilityBins detection_pipeline(const State& raw, const DetectionSetup& setup,
                                   const PipelineOptions& options) {
  if (raw.nmodes() != setup.total_modes)
    throw ValidationError("detection_pipeline: state does not match the setup's mode count");
  const OutcomeLayout layout = outcome_layout(setup);
  Rng rng(options.seed);

  // step 1: probability distribution at raw granularity
  const ProbabilityBins raw_probabilities = raw_bins(raw);

  ProbabilityBins out;
  if (!setup.has_stochastic_models()) {
    // steps 2 and 3 are identities; steps 4 and 5 collapse to a filter and a
    // relabeling pass
    for (const auto& [ket, p] : raw_probabilities.bins())
      if (passes_conditions(ket, setup)) out.add(layout.relabel(ket), p);
  } else {
    const double total = raw_probabilities.total();
    if (total > 0) {
      for (long r = 0; r < options.runs; ++r) {
        const std::vector<int>* key = draw_key(raw_probabilities, total, rng);
        if (!key) break;
        OccupationVector ket = *key;
        apply_dark_counts(ket, setup, rng);                       // step 2
        apply_dead_time(ket, setup, rng);                         // step 3
        if (!passes_conditions(ket, setup)) continue;             // step 4
        out.add(layout.relabel(ket), 1.0);                        // step 5
      }
      out.scale(total / static_cast<double>(options.runs));
    }
  }
  // step 6
  return add_noise(out, setup.noise_variance, rng);
}

}  // namespace fockforge
