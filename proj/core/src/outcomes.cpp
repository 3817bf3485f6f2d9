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

#include "fockforge/outcomes.hpp"

namespace fockforge {

void ProbabilityBins::add(const std::vector<int>& key, double probability) {
  bins_[key] += probability;
}

double ProbabilityBins::probability(const std::vector<int>& key) const {
  auto it = bins_.find(key);
  return it == bins_.end() ? 0.0 : it->second;
}

double ProbabilityBins::total() const {
  double sum = 0;
  for (const auto& [key, p] : bins_) sum += p;
  return sum;
}

void ProbabilityBins::merge(const ProbabilityBins& other) {
  for (const auto& [key, p] : other.bins_) bins_[key] += p;
}

void ProbabilityBins::scale(double factor) {
  for (auto& [key, p] : bins_) p *= factor;
}

int DensityMatrix::label_index(const std::vector<int>& ket) {
  auto it = labels_.find(ket);
  if (it != labels_.end()) return it->second;
  const int index = static_cast<int>(labels_.size());
  labels_.emplace(ket, index);
  rho_.conservativeResize(index + 1, index + 1);
  rho_.row(index).setZero();
  rho_.col(index).setZero();
  return index;
}

void DensityMatrix::add_state(const State& psi) {
  if (!labels_.empty()) {
    const int existing_modes = static_cast<int>(labels_.begin()->first.size());
    if (psi.nmodes() != existing_modes)
      throw ValidationError("density matrix: state does not match existing labels");
  }
  std::vector<int> indices(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    indices[i] = label_index(psi.term(i).ket);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex ai = psi.term(i).amplitude;
    for (std::size_t j = 0; j < psi.size(); ++j)
      rho_(indices[i], indices[j]) += ai * std::conj(psi.term(j).amplitude);
  }
}

std::vector<std::pair<std::vector<int>, int>> DensityMatrix::sorted_labels() const {
  std::vector<std::pair<std::vector<int>, int>> out;
  out.reserve(labels_.size());
  for (const auto& [ket, index] : labels_) out.emplace_back(ket, index);
  return out;  // std::map iterates lexicographically already
}

Eigen::MatrixXcd DensityMatrix::averaged() const {
  if (runs_ <= 0) throw NumericalError("density matrix: no runs accumulated");
  return rho_ / static_cast<double>(runs_);
}

Eigen::MatrixXcd DensityMatrix::normalized() const {
  const double trace = rho_.trace().real();
  if (trace <= 0) throw NumericalError("density matrix: zero trace");
  return rho_ / trace;
}

Complex DensityMatrix::entry(const std::vector<int>& row,
                             const std::vector<int>& col) const {
  auto r = labels_.find(row);
  auto c = labels_.find(col);
  if (r == labels_.end() || c == labels_.end()) return {0, 0};
  return rho_(r->second, c->second);
}

void DensityMatrix::merge(const DensityMatrix& other) {
  for (const auto& [ket, index] : other.labels_) label_index(ket);
  for (const auto& [rket, rindex] : other.labels_)
    for (const auto& [cket, cindex] : other.labels_)
      rho_(labels_.at(rket), labels_.at(cket)) += other.rho_(rindex, cindex);
  runs_ += other.runs_;
}

}  // namespace fockforge
