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

#include "fockforge/losses.hpp"

#include <cmath>
#include <map>

namespace fockforge {

DilatedCircuit dilate(const Eigen::MatrixXcd& m, double clamp_tolerance) {
  if (m.rows() != m.cols()) throw ValidationError("dilate: matrix not square");
  const Eigen::Index n = m.rows();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd r = svd.matrixU();
  Eigen::MatrixXcd v = svd.matrixV().adjoint();
  Eigen::VectorXd d = svd.singularValues();

  for (Eigen::Index k = 0; k < n; ++k) {
    if (d(k) > 1.0 + clamp_tolerance)
      throw NumericalError("dilate: singular value " + std::to_string(d(k)) +
                           " exceeds one (amplifying circuit unsupported)");
    if (d(k) > 1.0) d(k) = 1.0;
    // rotate the phase into V so diag(R) is real non-negative
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0) {
      const Complex phase = diag / mag;
      r.col(k) *= std::conj(phase);
      v.row(k) *= phase;
    }
  }

  Eigen::VectorXd off(n);
  for (Eigen::Index k = 0; k < n; ++k) off(k) = std::sqrt(std::max(0.0, 1.0 - d(k) * d(k)));
  const Eigen::MatrixXcd coupling = r * off.asDiagonal() * v;

  DilatedCircuit out;
  out.physical_modes = static_cast<int>(n);
  out.u2n = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  out.u2n.topLeftCorner(n, n) = m;
  out.u2n.topRightCorner(n, n) = coupling;
  out.u2n.bottomLeftCorner(n, n) = coupling;
  out.u2n.bottomRightCorner(n, n) = -m;
  return out;
}

State pad_with_loss_modes(const State& s, int physical_modes) {
  if (s.nmodes() != physical_modes)
    throw ValidationError("pad_with_loss_modes: state does not match physical mode count");
  State out(2 * physical_modes, s.max_occupation());
  for (const Term& t : s.terms()) {
    OccupationVector ket = t.ket;
    ket.resize(static_cast<std::size_t>(2 * physical_modes), 0);
    out.add_term(t.amplitude, ket);
  }
  return out;
}

namespace {

void split_ket(const OccupationVector& ket, int physical_modes,
               OccupationVector& physical, OccupationVector& loss) {
  physical.assign(ket.begin(), ket.begin() + physical_modes);
  loss.assign(ket.begin() + physical_modes, ket.end());
}

}  // namespace

ProbabilityBins trace_out_losses(const State& s, const DilatedCircuit& dilated) {
  if (s.nmodes() != 2 * dilated.physical_modes)
    throw ValidationError("trace_out_losses: state is not on the doubled mode space");
  ProbabilityBins bins;
  OccupationVector physical, loss;
  for (const Term& t : s.terms()) {
    split_ket(t.ket, dilated.physical_modes, physical, loss);
    bins.add(physical, std::norm(t.amplitude));
  }
  return bins;
}

DensityMatrix trace_out_losses_density(const State& s, const DilatedCircuit& dilated) {
  if (s.nmodes() != 2 * dilated.physical_modes)
    throw ValidationError("trace_out_losses: state is not on the doubled mode space");
  // group terms by loss configuration; each group is a conditional pure state
  std::map<OccupationVector, State> by_loss_config;
  OccupationVector physical, loss;
  for (const Term& t : s.terms()) {
    split_ket(t.ket, dilated.physical_modes, physical, loss);
    auto [it, inserted] = by_loss_config.try_emplace(
        loss, State(dilated.physical_modes, s.max_occupation()));
    it->second.add_term(t.amplitude, physical);
  }
  DensityMatrix dm;
  for (const auto& [config, conditional] : by_loss_config) dm.add_state(conditional);
  dm.add_runs(1);
  return dm;
}

}  // namespace fockforge
