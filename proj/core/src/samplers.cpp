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

#include "fockforge/samplers.hpp"

#include <bit>
#include <cmath>

#include "fockforge/cores.hpp"
#include "fockforge/permanent.hpp"

namespace fockforge {

namespace {

constexpr int kMaxChainPhotons = 24;

std::vector<int> expand_photon_modes(const OccupationVector& ket) {
  std::vector<int> modes;
  for (std::size_t j = 0; j < ket.size(); ++j)
    for (int c = 0; c < ket[j]; ++c) modes.push_back(static_cast<int>(j));
  return modes;
}

// |U(k,j)|^2 with columns normalized; throws on a zero column norm for a
// column that actually carries photons.
Eigen::MatrixXd normalized_classical_matrix(const OccupationVector& input_ket,
                                            const Eigen::MatrixXcd& u) {
  const Eigen::Index l = u.rows();
  Eigen::MatrixXd q(l, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    double norm = 0;
    for (Eigen::Index k = 0; k < l; ++k) {
      q(k, j) = std::norm(u(k, j));
      norm += q(k, j);
    }
    if (norm <= 0) {
      if (input_ket[static_cast<std::size_t>(j)] > 0)
        throw NumericalError("classical model: zero column norm for an occupied mode");
      continue;
    }
    q.col(j) /= norm;
  }
  return q;
}

void check_dims(const OccupationVector& input_ket, const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw ValidationError("sampler: matrix not square");
  if (static_cast<Eigen::Index>(input_ket.size()) != u.cols())
    throw ValidationError("sampler: input ket does not match matrix dimension");
}

// Shared machinery of the chain sampler: incremental permanent table over
// column subsets. perms[mask] holds the permanent of the submatrix with the
// rows drawn so far and the columns of `mask`; extending by one row updates
// masks of the next popcount through a Laplace expansion along the new row.
struct ChainState {
  const Eigen::MatrixXcd* a = nullptr;  // l x n column-selected matrix
  int nphotons = 0;
  int nmodes = 0;
  std::vector<std::vector<uint32_t>> masks_by_count;
  std::vector<Complex> perms;
  std::vector<double> weights;

  void init(const Eigen::MatrixXcd& columns, int n, int l) {
    a = &columns;
    nphotons = n;
    nmodes = l;
    masks_by_count.assign(static_cast<std::size_t>(n) + 1, {});
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask)
      masks_by_count[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    perms.assign(std::size_t{1} << n, Complex{0, 0});
    perms[0] = Complex{1, 0};
    weights.assign(static_cast<std::size_t>(l), 0.0);
  }

  // Unnormalized marginal weights of the k-th detection (1-based) given the
  // rows fixed so far.
  void step_weights(int k) {
    for (int r = 0; r < nmodes; ++r) {
      double w = 0;
      for (uint32_t mask : masks_by_count[static_cast<std::size_t>(k)]) {
        Complex inner{0, 0};
        uint32_t rest = mask;
        while (rest) {
          const int c = std::countr_zero(rest);
          rest &= rest - 1;
          inner += (*a)(r, c) * perms[mask ^ (uint32_t{1} << c)];
        }
        w += std::norm(inner);
      }
      weights[static_cast<std::size_t>(r)] = w;
    }
  }

  // Fixes row r as the k-th detection and advances the permanent table.
  void commit_row(int k, int r) {
    for (uint32_t mask : masks_by_count[static_cast<std::size_t>(k)]) {
      Complex inner{0, 0};
      uint32_t rest = mask;
      while (rest) {
        const int c = std::countr_zero(rest);
        rest &= rest - 1;
        inner += (*a)(r, c) * perms[mask ^ (uint32_t{1} << c)];
      }
      perms[mask] = inner;
    }
  }
};

}  // namespace

OccupationVector classical_sample(const OccupationVector& input_ket,
                                  const Eigen::MatrixXcd& u, Rng& rng) {
  check_dims(input_ket, u);
  const Eigen::MatrixXd q = normalized_classical_matrix(input_ket, u);
  const Eigen::Index l = u.rows();
  OccupationVector out(input_ket.size(), 0);
  std::vector<double> column(static_cast<std::size_t>(l));
  for (std::size_t j = 0; j < input_ket.size(); ++j) {
    if (input_ket[j] == 0) continue;
    for (Eigen::Index k = 0; k < l; ++k)
       column[static_cast<std::size_t>(k)] = q(k, static_cast<Eigen::Index>(j));
    for (int c = 0; c < input_ket[j]; ++c)
      ++out[rng.discrete(column)];
  }
  return out;
}

double classical_probability(const OccupationVector& input_ket,
                             const OccupationVector& output_ket,
                             const Eigen::MatrixXcd& u) {
  check_dims(input_ket, u);
  if (total_photons(input_ket) != total_photons(output_ket)) return 0.0;
  const Eigen::MatrixXd q = normalized_classical_matrix(input_ket, u);
  const Eigen::MatrixXd sub = repeated_submatrix(q, input_ket, output_ket);
  double denom = 1;
  for (int m : output_ket)
    for (int c = 2; c <= m; ++c) denom *= c;
  return glynn_permanent(sub) / denom;
}

std::vector<OccupationVector> clifford_a_sample(const OccupationVector& input_ket,
                                                const Eigen::MatrixXcd& u,
                                                const SampleConfig& cfg) {
  check_dims(input_ket, u);
  if (cfg.nsamples <= 0) throw ValidationError("sampler: nsamples must be positive");
  const std::vector<int> photon_modes = expand_photon_modes(input_ket);
  const int n = static_cast<int>(photon_modes.size());
  const int l = static_cast<int>(u.rows());
  if (n > kMaxChainPhotons)
    throw ValidationError("clifford sampler: photon count exceeds supported range");

  std::vector<OccupationVector> samples;
  samples.reserve(static_cast<std::size_t>(cfg.nsamples));
  if (n == 0) {
    samples.assign(static_cast<std::size_t>(cfg.nsamples),
                   OccupationVector(input_ket.size(), 0));
    return samples;
  }

  Eigen::MatrixXcd columns(l, n);
  for (int p = 0; p < n; ++p) columns.col(p) = u.col(photon_modes[static_cast<std::size_t>(p)]);

  Rng rng(cfg.seed);
  ChainState chain;
  for (long s = 0; s < cfg.nsamples; ++s) {
    chain.init(columns, n, l);
    OccupationVector outcome(input_ket.size(), 0);
    for (int k = 1; k <= n; ++k) {
      chain.step_weights(k);
      const int r = static_cast<int>(rng.discrete(chain.weights));
      chain.commit_row(k, r);
      ++outcome[static_cast<std::size_t>(r)];
    }
    samples.push_back(std::move(outcome));
  }
  return samples;
}

double clifford_ordered_probability(const OccupationVector& input_ket,
                                    const Eigen::MatrixXcd& u,
                                    const std::vector<int>& ordered_modes) {
  check_dims(input_ket, u);
  const std::vector<int> photon_modes = expand_photon_modes(input_ket);
  const int n = static_cast<int>(photon_modes.size());
  const int l = static_cast<int>(u.rows());
  if (static_cast<int>(ordered_modes.size()) != n)
    throw ValidationError("clifford_ordered_probability: sequence length mismatch");
  if (n > kMaxChainPhotons)
    throw ValidationError("clifford sampler: photon count exceeds supported range");

  Eigen::MatrixXcd columns(l, n);
  for (int p = 0; p < n; ++p) columns.col(p) = u.col(photon_modes[static_cast<std::size_t>(p)]);

  ChainState chain;
  chain.init(columns, n, l);
  double probability = 1.0;
  for (int k = 1; k <= n; ++k) {
    chain.step_weights(k);
    double total = 0;
    for (double w : chain.weights) total += w;
    if (total <= 0) throw NumericalError("clifford sampler: zero total probability");
    const int r = ordered_modes[static_cast<std::size_t>(k - 1)];
    probability *= chain.weights[static_cast<std::size_t>(r)] / total;
    chain.commit_row(k, r);
  }
  return probability;
}

std::vector<OccupationVector> metropolis_sample(const OccupationVector& input_ket,
                                                const Eigen::MatrixXcd& u,
                                                const SampleConfig& cfg) {
  check_dims(input_ket, u);
  if (cfg.nsamples <= 0) throw ValidationError("sampler: nsamples must be positive");
  if (cfg.thinning < 1) throw ValidationError("sampler: thinning must be >= 1");

  Rng rng(cfg.seed);
  std::vector<OccupationVector> samples;
  samples.reserve(static_cast<std::size_t>(cfg.nsamples));
  if (total_photons(input_ket) == 0) {
    samples.assign(static_cast<std::size_t>(cfg.nsamples),
                   OccupationVector(input_ket.size(), 0));
    return samples;
  }

  auto quantum_prob = [&](const OccupationVector& s) {
    return std::norm(transition_amplitude(input_ket, s, u));
  };

  // start from a classical draw with non-vanishing target probability
  OccupationVector current;
  double p_current = 0, pc_current = 0;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    current = classical_sample(input_ket, u, rng);
    p_current = quantum_prob(current);
    if (p_current > 0) {
      pc_current = classical_probability(input_ket, current, u);
      break;
    }
  }
  if (p_current <= 0)
    throw NumericalError("metropolis sampler: could not find a starting state");

  long step = 0;
  while (samples.size() < static_cast<std::size_t>(cfg.nsamples)) {
    const OccupationVector proposal = classical_sample(input_ket, u, rng);
    const double p_new = quantum_prob(proposal);
    if (p_new > 0) {
      const double pc_new = classical_probability(input_ket, proposal, u);
      const double ratio = (p_new * pc_current) / (p_current * pc_new);
      if (ratio >= 1.0 || rng.uniform() < ratio) {
        current = proposal;
        p_current = p_new;
        pc_current = pc_new;
      }
    }
    ++step;
    if (step > cfg.burn_in && (step - cfg.burn_in) % cfg.thinning == 0)
      samples.push_back(current);
  }
  return samples;
}

}  // namespace fockforge
