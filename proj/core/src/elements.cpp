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

#include "fockforge/elements.hpp"

#include <cmath>
#include <set>

#include "fockforge/rng.hpp"

namespace fockforge {

namespace {

// Columns are input modes, rows output modes: a_k^dag -> sum_j U(j,k) a_j^dag.
Eigen::MatrixXcd beamsplitter_matrix(double theta_deg, double phi_deg) {
  const double theta = deg_to_rad(theta_deg);
  const double phi = deg_to_rad(phi_deg);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd u(2, 2);
  u(0, 0) = c;
  u(0, 1) = -std::exp(Complex{0, phi}) * s;
  u(1, 0) = std::exp(Complex{0, -phi}) * s;
  u(1, 1) = c;
  return u;
}

std::size_t expected_channel_count(ElementKind kind) {
  switch (kind) {
    case ElementKind::BeamSplitter:
    case ElementKind::Dielectric:
    case ElementKind::Mmi2:
    case ElementKind::Rewire:
    case ElementKind::PolarizingBeamSplitter:
      return 2;
    case ElementKind::Nsx:
      return 3;
    case ElementKind::RandomUnitary:
    case ElementKind::Separator:
      return 0;
    default:
      return 1;
  }
}

}  // namespace

std::string element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::BeamSplitter: return "beamsplitter";
    case ElementKind::PhaseShifter: return "phase_shifter";
    case ElementKind::Dielectric: return "dielectric";
    case ElementKind::Mmi2: return "mmi2";
    case ElementKind::Rewire: return "rewire";
    case ElementKind::Loss: return "loss";
    case ElementKind::Delay: return "delay";
    case ElementKind::Nsx: return "nsx";
    case ElementKind::Rotator: return "rotator";
    case ElementKind::PolarizingBeamSplitter: return "pol_beamsplitter";
    case ElementKind::HalfWavePlate: return "half_waveplate";
    case ElementKind::QuarterWavePlate: return "quarter_waveplate";
    case ElementKind::RandomUnitary: return "random_unitary";
    case ElementKind::Separator: return "separator";
  }
  return "unknown";
}

void validate_element(const ElementSpec& spec) {
  const std::size_t expected = expected_channel_count(spec.kind);
  if (expected > 0 && spec.channels.size() != expected)
    throw ValidationError(element_kind_name(spec.kind) + ": expected " +
                          std::to_string(expected) + " channels, got " +
                          std::to_string(spec.channels.size()));
  std::set<int> unique(spec.channels.begin(), spec.channels.end());
  if (unique.size() != spec.channels.size())
    throw ValidationError(element_kind_name(spec.kind) + ": duplicate channel");
  for (int ch : spec.channels)
    if (ch < 0) throw ValidationError(element_kind_name(spec.kind) + ": negative channel");

  switch (spec.kind) {
    case ElementKind::Loss:
      if (spec.loss < 0.0 || spec.loss > 1.0)
        throw ValidationError("loss: parameter must lie in [0,1]");
      break;
    case ElementKind::Dielectric: {
      const double power = std::norm(spec.transmission) + std::norm(spec.reflection);
      if (power > 1.0 + 1e-12)
        throw ValidationError("dielectric: |t|^2 + |r|^2 exceeds 1");
      break;
    }
    case ElementKind::PolarizingBeamSplitter:
      if (spec.pol != 0 && spec.pol != 1)
        throw ValidationError("pol_beamsplitter: polarization must be 0 or 1");
      break;
    default:
      break;
  }
}

Eigen::MatrixXcd element_matrix(const ElementSpec& spec) {
  validate_element(spec);
  switch (spec.kind) {
    case ElementKind::BeamSplitter:
      return beamsplitter_matrix(spec.theta_deg, spec.phi_deg);
    case ElementKind::PhaseShifter: {
      Eigen::MatrixXcd u(1, 1);
      u(0, 0) = std::exp(Complex{0, deg_to_rad(spec.phi_deg)});
      return u;
    }
    case ElementKind::Dielectric: {
      Eigen::MatrixXcd u(2, 2);
      u(0, 0) = spec.transmission;
      u(0, 1) = spec.reflection;
      u(1, 0) = spec.reflection;
      u(1, 1) = spec.transmission;
      return u;
    }
    case ElementKind::Mmi2: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      Eigen::MatrixXcd u(2, 2);
      u(0, 0) = inv_sqrt2;
      u(0, 1) = Complex{0, inv_sqrt2};
      u(1, 0) = Complex{0, inv_sqrt2};
      u(1, 1) = inv_sqrt2;
      return u;
    }
    case ElementKind::Rewire: {
      Eigen::MatrixXcd u(2, 2);
      u << 0, 1, 1, 0;
      return u;
    }
    case ElementKind::Loss: {
      Eigen::MatrixXcd u(1, 1);
      u(0, 0) = std::sqrt(1.0 - spec.loss);
      return u;
    }
    case ElementKind::Nsx: {
      // phase shifter and three beamsplitters on local channels (0,1,2)
      auto embed3 = [](const Eigen::MatrixXcd& local, std::vector<int> modes) {
        return embed(3, local, modes);
      };
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
      Eigen::MatrixXcd ps(1, 1);
      ps(0, 0) = std::exp(Complex{0, deg_to_rad(180.0)});
      u = embed3(ps, {0}) * u;
      u = embed3(beamsplitter_matrix(22.5, 0.0), {1, 2}) * u;
      u = embed3(beamsplitter_matrix(65.5302, 0.0), {0, 1}) * u;
      u = embed3(beamsplitter_matrix(-22.5, 0.0), {1, 2}) * u;
      return u;
    }
    default:
      throw ValidationError("element_matrix: " + element_kind_name(spec.kind) +
                            " has no channel-level matrix");
  }
}

Eigen::MatrixXcd jones_matrix(const ElementSpec& spec) {
  validate_element(spec);
  Eigen::MatrixXcd u(2, 2);
  switch (spec.kind) {
    case ElementKind::Rotator:
      return beamsplitter_matrix(spec.theta_deg, spec.phi_deg);
    case ElementKind::HalfWavePlate: {
      const double a = deg_to_rad(spec.alpha_deg);
      u(0, 0) = std::cos(2 * a);
      u(0, 1) = std::sin(2 * a);
      u(1, 0) = std::sin(2 * a);
      u(1, 1) = -std::cos(2 * a);
      return u;
    }
    case ElementKind::QuarterWavePlate: {
      const double a = deg_to_rad(spec.alpha_deg);
      const double c = std::cos(a), s = std::sin(a);
      const Complex phase = std::exp(Complex{0, -kPi / 4});
      u(0, 0) = phase * Complex{c * c, s * s};
      u(0, 1) = phase * Complex{s * c, -s * c};
      u(1, 0) = phase * Complex{s * c, -s * c};
      u(1, 1) = phase * Complex{s * s, c * c};
      return u;
    }
    default:
      throw ValidationError("jones_matrix: " + element_kind_name(spec.kind) +
                            " is not a polarization element");
  }
}

Eigen::MatrixXcd embed(int full_dim, const Eigen::MatrixXcd& local,
                       const std::vector<int>& target_modes) {
  if (local.rows() != local.cols())
    throw ValidationError("embed: local matrix must be square");
  if (static_cast<std::size_t>(local.rows()) != target_modes.size())
    throw ValidationError("embed: local size does not match target modes");
  std::set<int> unique(target_modes.begin(), target_modes.end());
  if (unique.size() != target_modes.size())
    throw ValidationError("embed: duplicate target mode");
  for (int m : target_modes)
    if (m < 0 || m >= full_dim) throw ValidationError("embed: target mode out of range");

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(full_dim, full_dim);
  for (std::size_t r = 0; r < target_modes.size(); ++r)
    for (std::size_t c = 0; c < target_modes.size(); ++c)
      out(target_modes[r], target_modes[c]) =
          local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

Eigen::MatrixXcd haar_unitary(int dim, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = Complex{rng.normal(0, 1), rng.normal(0, 1)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0 ? d / mag : Complex{1, 0};
  }
  return q;
}

}  // namespace fockforge
