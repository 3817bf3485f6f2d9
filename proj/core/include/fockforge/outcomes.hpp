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

#ifndef FOCKFORGE_OUTCOMES_HPP
#define FOCKFORGE_OUTCOMES_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "fockforge/state.hpp"

namespace fockforge {

/// Diagonal outcome accumulator: probability per outcome key. Keys are
/// occupation-style integer vectors whose meaning (full modes, counter
/// totals, ...) is fixed by the producing stage. Map ordering keeps output
/// deterministic.
class ProbabilityBins {
 public:
  using Map = std::map<std::vector<int>, double>;

  void add(const std::vector<int>& key, double probability);
  double probability(const std::vector<int>& key) const;
  double total() const;
  std::size_t size() const { return bins_.size(); }
  bool empty() const { return bins_.empty(); }
  const Map& bins() const { return bins_; }
  Map& bins() { return bins_; }

  /// Entrywise merge (associative accumulator contract).
  void merge(const ProbabilityBins& other);
  void scale(double factor);

 private:
  Map bins_;
};

/// Dynamically grown outcome x outcome complex matrix accumulating
/// stochastic runs. Row/column labels are created on first appearance;
/// readout normalizes by the run count (or by the trace for display).
class DensityMatrix {
 public:
  /// rho += |psi><psi| over the state's kets (labels grown as needed).
  void add_state(const State& psi);
  void add_runs(long n) { runs_ += n; }
  long runs() const { return runs_; }

  std::size_t dimension() const { return labels_.size(); }
  /// Labels sorted lexicographically with their matrix indices.
  std::vector<std::pair<std::vector<int>, int>> sorted_labels() const;
  const Eigen::MatrixXcd& raw() const { return rho_; }

  /// rho / runs; trace equals the mean accepted norm^2.
  Eigen::MatrixXcd averaged() const;
  /// rho / trace(rho) (unit-trace readout used for display).
  Eigen::MatrixXcd normalized() const;

  Complex entry(const std::vector<int>& row, const std::vector<int>& col) const;

  /// Entrywise sum plus run-count sum (associative merge of partial
  /// accumulators).
  void merge(const DensityMatrix& other);

 private:
  int label_index(const std::vector<int>& ket);

  std::map<std::vector<int>, int> labels_;
  Eigen::MatrixXcd rho_;
  long runs_ = 0;
};

}  // namespace fockforge

#endif
