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

#include "fockforge/simulator.hpp"

#include <cstdlib>
#include <thread>

namespace fockforge {

int effective_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FOCKFORGE_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

State Simulator::run_state(const State& input, const CompiledDevice& device) const {
  if (input.nmodes() != device.total_modes)
    throw ValidationError("run_state: input does not match the device's mode count");
  return transform(input, device.transfer, options_.core, options_.basis);
}

Simulator::Conditioned Simulator::run_conditioned(const CompiledDevice& device) const {
  const State input = device.fixed_input();
  const double input_norm2 = input.norm2();
  if (input_norm2 <= 0) throw NumericalError("run_conditioned: zero input state");
  const State raw = run_state(input, device);
  Conditioned out;
  out.reduced = apply_condition(raw, device.circuit);
  out.success_probability = out.reduced.state.norm2() / input_norm2;
  return out;
}

ProbabilityBins Simulator::run(const CompiledDevice& device,
                               const PipelineOptions& pipeline) const {
  State input = device.fixed_input();
  input.normalize();
  const State raw = run_state(input, device);
  return detection_pipeline(raw, device.detection, pipeline);
}

DensityMatrix Simulator::ensemble(const CompiledDevice& device, long runs,
                                  uint64_t seed, int threads) const {
  if (runs <= 0) throw ValidationError("ensemble: runs must be positive");

  if (!device.stochastic()) {
    // every run is identical: project once, accumulate N times
    State input = device.fixed_input();
    input.normalize();
    const State raw = run_state(input, device);
    const std::vector<State> projected = project_per_projector(raw, device.circuit);
    DensityMatrix dm;
    for (long r = 0; r < runs; ++r) {
      for (const State& reduced : projected) dm.add_state(reduced);
      dm.add_runs(1);
    }
    return dm;
  }

  auto simulate_run = [&](long run_index, DensityMatrix& dm) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(run_index));
    const State input = device.sample_input(rng);
    const State raw = run_state(input, device);
    for (const State& reduced : project_per_projector(raw, device.circuit))
      dm.add_state(reduced);
    dm.add_runs(1);
  };

  const long nthreads =
      std::min<long>(static_cast<long>(effective_thread_count(threads)), runs);
  if (nthreads <= 1) {
    DensityMatrix dm;
    for (long r = 0; r < runs; ++r) simulate_run(r, dm);
    return dm;
  }

  // fixed chunking keeps the result deterministic for a given thread count
  std::vector<DensityMatrix> partial(static_cast<std::size_t>(nthreads));
  std::vector<std::thread> workers;
  const long chunk = (runs + nthreads - 1) / nthreads;
  for (long t = 0; t < nthreads; ++t) {
    const long begin = t * chunk;
    const long end = std::min(runs, begin + chunk);
    workers.emplace_back([&, t, begin, end]() {
      for (long r = begin; r < end; ++r) simulate_run(r, partial[static_cast<std::size_t>(t)]);
    });
  }
  for (std::thread& w : workers) w.join();
  DensityMatrix dm;
  for (const DensityMatrix& p : partial) dm.merge(p);
  return dm;
}

Simulator::SampleResult Simulator::sample(const CompiledDevice& device,
                                          SamplerMethod method,
                                          const SampleConfig& cfg) const {
  State input = device.fixed_input();
  input.normalize();
  input.prune();
  if (input.size() != 1)
    throw ValidationError("sample: sampling needs a single-configuration input ket");
  const OccupationVector& ket = input.term(0).ket;

  std::vector<OccupationVector> outcomes =
      method == SamplerMethod::Clifford
          ? clifford_a_sample(ket, device.transfer, cfg)
          : metropolis_sample(ket, device.transfer, cfg);

  SampleResult result;
  result.layout = outcome_layout(device.detection);
  result.emitted = static_cast<long>(outcomes.size());
  for (const OccupationVector& outcome : outcomes) {
    bool accept = true;
    for (const DetectorSpec& d : device.detection.detectors) {
      if (!d.condition) continue;
      if (device.detection.modes.channel_total(outcome, d.channel) != *d.condition) {
        accept = false;
        break;
      }
    }
    if (accept) ++result.counts[result.layout.relabel(outcome)];
  }
  return result;
}

}  // namespace fockforge
