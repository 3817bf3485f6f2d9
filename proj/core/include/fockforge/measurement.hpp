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

#ifndef FOCKFORGE_MEASUREMENT_HPP
#define FOCKFORGE_MEASUREMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "fockforge/circuit.hpp"
#include "fockforge/outcomes.hpp"
#include "fockforge/qubit_encoding.hpp"
#include "fockforge/rng.hpp"

namespace fockforge {

/// Post-selection condition: required photon totals per conditioned channel
/// (summed over polarization and packet sub-modes). Free channels are
/// unconstrained.
struct Condition {
  std::vector<std::pair<int, int>> required;  // (channel, photons), ascending
};

Condition condition_from_detectors(const std::vector<DetectorSpec>& detectors);

/// All kets on the conditioned channels' sub-modes whose per-channel totals
/// meet the condition. Layout: conditioned channels ascending, each
/// channel's (pol, packet) sub-modes in mode-map order.
std::vector<OccupationVector> enumerate_projectors(const Condition& condition,
                                                   const ModeMap& modes);

/// Projects onto the detector conditions and strips the conditioned
/// channels, summing the per-projector results into one reduced state
/// (valid for classical packet/polarization-blind conditions). The reduced
/// norm^2 is the unnormalized success weight.
ReducedState apply_condition(const State& raw, const Circuit& circuit);

/// Eq.-style per-projector reduction: one reduced state per occupied
/// projector of the condition, for density-matrix accumulation.
std::vector<State> project_per_projector(const State& raw, const Circuit& circuit);

/// Projects the measured modes of `raw` onto an arbitrary normalized state
/// projector |phi><phi| and strips them: sum_i amp_i conj(phi[m_i]) |rest_i>.
/// `measured_modes` lists the raw mode indices of the projector, ascending.
State project_onto_state(const State& raw, const State& projector,
                         const std::vector<int>& measured_modes);

/// Everything the detection pipeline needs to know about a finalized device.
struct DetectionSetup {
  ModeMap modes;  // physical modes
  std::vector<DetectorSpec> detectors;
  std::vector<int> ignored;
  DetectorKind kind = DetectorKind::Counter;
  int total_modes = 0;  // raw state modes (2n when loss-extended)
  double noise_variance = 0.0;
  std::vector<int> packet_periods;  // period of each packet label

  const DetectorSpec* detector_for(int channel) const;
  bool has_stochastic_models() const;
  Condition condition() const { return condition_from_detectors(detectors); }
};

/// Shape of the final outcome keys after degree-of-freedom removal:
/// counters keep one slot per (channel, pol), timed detection one per
/// (channel, pol, period), full detection one per (channel, pol, packet).
/// Conditioned and ignored channels are removed, as are loss modes.
struct OutcomeLayout {
  struct Entry {
    int channel;
    int pol;
    int period;  // -1 unless timed
    int packet;  // -1 unless full
  };
  std::vector<Entry> entries;
  std::vector<int> mode_to_entry;  // physical mode -> entry index or -1

  std::vector<int> relabel(const OccupationVector& raw_ket) const;
  /// "| 1, 0 >" for scalar devices, "| H(0)0, V(2)1 >" per-photon style for
  /// polarized ones.
  std::string label(const std::vector<int>& key, bool polarized) const;
};

OutcomeLayout outcome_layout(const DetectionSetup& setup);

/// Step 1 of the pipeline: |amplitude|^2 per raw ket.
ProbabilityBins raw_bins(const State& s);

/// Kind-dependent relabeling of a raw-granularity state into outcome bins
/// (no condition filtering; conditioned channels are dropped from the key).
ProbabilityBins bins_from_state(const State& s, const DetectionSetup& setup);

/// Classical detector error models. They act on raw-granularity bins by
/// resampling `runs` simulated detection rounds.
ProbabilityBins dark_counts(const ProbabilityBins& raw, const DetectionSetup& setup,
                            Rng& rng, long runs);
ProbabilityBins dead_time(const ProbabilityBins& raw, const DetectionSetup& setup,
                          Rng& rng, long runs);
/// Perturbs every bin by N(0, variance), clamped at zero.
ProbabilityBins add_noise(const ProbabilityBins& bins, double variance, Rng& rng);

struct PipelineOptions {
  uint64_t seed = 1;
  long runs = 100000;  // conditioned-sampling rounds when error models are active
};

/// The fixed six-step detection procedure: (1) probability distribution,
/// (2) dark counts, (3) dead time, (4) post-selection including loss-mode
/// elimination, (5) degree-of-freedom removal per detector kind, (6) noise.
ProbabilityBins detection_pipeline(const State& raw, const DetectionSetup& setup,
                                   const PipelineOptions& options = {});

}  // namespace fockforge

#endif
