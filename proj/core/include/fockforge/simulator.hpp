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

#ifndef FOCKFORGE_SIMULATOR_HPP
#define FOCKFORGE_SIMULATOR_HPP

#include <map>

#include "fockforge/cores.hpp"
#include "fockforge/device.hpp"
#include "fockforge/samplers.hpp"

namespace fockforge {

/// Worker threads used for ensemble runs: FOCKFORGE_THREADS when set,
/// otherwise the hardware concurrency.
int effective_thread_count(int requested = 0);

struct SimOptions {
  CoreKind core = CoreKind::Glynn;
  BasisSpec basis = BasisSpec::full();
};

/// Ties cores, devices and measurement together: transforms input states
/// through the compiled transfer matrix and hands results to the detection
/// stages.
class Simulator {
 public:
  Simulator() = default;
  explicit Simulator(SimOptions options) : options_(std::move(options)) {}

  const SimOptions& options() const { return options_; }

  /// Raw output state on the device's total mode space. The input is taken
  /// as given (no normalization).
  State run_state(const State& input, const CompiledDevice& device) const;

  struct Conditioned {
    ReducedState reduced;
    double success_probability = 0.0;
  };

  /// Runs the deterministic input and applies the detector conditions.
  /// The success probability is norm^2(post-selected) / norm^2(input).
  Conditioned run_conditioned(const CompiledDevice& device) const;

  /// Full detection pipeline on the normalized deterministic input.
  ProbabilityBins run(const CompiledDevice& device,
                      const PipelineOptions& pipeline = {}) const;

  /// Repeated stochastic runs accumulated into a density matrix: every run
  /// draws the source, transforms, reduces per projector and adds the
  /// results. Runs are distributed over worker threads with derived seeds.
  DensityMatrix ensemble(const CompiledDevice& device, long runs, uint64_t seed,
                         int threads = 0) const;

  struct SampleResult {
    std::map<std::vector<int>, long> counts;  // detector-granularity outcomes
    long emitted = 0;                         // total draws incl. rejected
    OutcomeLayout layout;
  };

  /// Boson-sampling outcomes aggregated at detector granularity. The device
  /// input must be a single configuration ket.
  SampleResult sample(const CompiledDevice& device, SamplerMethod method,
                      const SampleConfig& cfg) const;

 private:
  SimOptions options_;
};

}  // namespace fockforge

#endif
