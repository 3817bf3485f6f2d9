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

#include "fockforge/cores.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fockforge/permanent.hpp"

namespace fockforge {

namespace {

void compose_descending(int mode, int nmodes, int remaining, int cap,
                        OccupationVector& current,
                        std::vector<OccupationVector>& out) {
  if (mode == nmodes - 1) {
    if (remaining <= cap) {
      current[static_cast<std::size_t>(mode)] = remaining;
      out.push_back(current);
    }
    return;
  }
  for (int k = std::min(remaining, cap); k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    compose_descending(mode + 1, nmodes, remaining - k, cap, current, out);
  }
}

double sqrt_factorial(int n) {
  double value = 1.0;
  for (int k = 2; k <= n; ++k) value *= static_cast<double>(k);
  return std::sqrt(value);
}

double input_normalization(const OccupationVector& ket) {
  double value = 1.0;
  for (int n : ket) value *= sqrt_factorial(n);
  return value;
}

struct DirectContext {
  const Eigen::MatrixXcd* u;
  int nmodes;
  const std::vector<int>* photon_modes;  // input mode of each photon
  const std::vector<int>* caps;          // per-mode occupation caps
  const std::unordered_set<std::string>* allowed;  // UserList membership
  OccupationVector occupation;
  State* out;
};

void direct_dfs(DirectContext& ctx, std::size_t photon, const Complex& partial) {
  if (photon == ctx.photon_modes->size()) {
    if (ctx.allowed && ctx.allowed->find(ket_key(ctx.occupation)) == ctx.allowed->end())
      return;
    ctx.out->add_term(partial, ctx.occupation);
    return;
  }
  const int column = (*ctx.photon_modes)[photon];
  for (int j = 0; j < ctx.nmodes; ++j) {
    const Complex entry = (*ctx.u)(j, column);
    if (entry == Complex{0, 0}) continue;  // structural zero, prune the branch
    auto& occ = ctx.occupation[static_cast<std::size_t>(j)];
    if (occ >= (*ctx.caps)[static_cast<std::size_t>(j)]) continue;
    const double boson = std::sqrt(static_cast<double>(occ + 1));
    ++occ;
    direct_dfs(ctx, photon + 1, partial * entry * boson);
    --occ;
  }
}

}  // namespace

std::vector<OccupationVector> enumerate_basis(int nmodes, int nphotons,
                                              const BasisSpec& basis) {
  if (nphotons < 0) throw ValidationError("enumerate_basis: negative photon count");
  if (basis.kind == BasisSpec::Kind::UserList) return basis.kets;
  std::vector<OccupationVector> out;
  if (nmodes == 0) return out;
  const int cap = basis.kind == BasisSpec::Kind::Restricted ? 1 : nphotons;
  if (basis.kind == BasisSpec::Kind::Restricted && nphotons > nmodes) return out;
  OccupationVector current(static_cast<std::size_t>(nmodes), 0);
  compose_descending(0, nmodes, nphotons, cap, current, out);
  return out;
}

Complex transition_amplitude(const OccupationVector& input_ket,
                             const OccupationVector& output_ket,
                             const Eigen::MatrixXcd& u) {
  if (static_cast<Eigen::Index>(input_ket.size()) != u.cols() ||
      static_cast<Eigen::Index>(output_ket.size()) != u.rows())
    throw ValidationError("transition_amplitude: ket length does not match matrix");
  if (total_photons(input_ket) != total_photons(output_ket)) return {0, 0};
  const Eigen::MatrixXcd sub = repeated_submatrix(u, input_ket, output_ket);
  const Complex perm = glynn_permanent(sub);
  return perm / (input_normalization(input_ket) * input_normalization(output_ket));
}

State direct_ket_transform(const OccupationVector& ket,
                           const Eigen::MatrixXcd& u, const BasisSpec& basis) {
  const int nmodes = static_cast<int>(ket.size());
  if (u.rows() != nmodes || u.cols() != nmodes)
    throw ValidationError("direct_ket_transform: matrix does not match ket length");
  const int nphotons = total_photons(ket);

  std::vector<int> photon_modes;
  photon_modes.reserve(static_cast<std::size_t>(nphotons));
  for (int j = 0; j < nmodes; ++j)
    for (int c = 0; c < ket[static_cast<std::size_t>(j)]; ++c) photon_modes.push_back(j);

  std::vector<int> caps(static_cast<std::size_t>(nmodes), nphotons);
  std::unordered_set<std::string> allowed;
  const std::unordered_set<std::string>* allowed_ptr = nullptr;
  if (basis.kind == BasisSpec::Kind::Restricted) {
    std::fill(caps.begin(), caps.end(), 1);
  } else if (basis.kind == BasisSpec::Kind::UserList) {
    std::fill(caps.begin(), caps.end(), 0);
    for (const OccupationVector& k : basis.kets) {
      if (static_cast<int>(k.size()) != nmodes)
        throw ValidationError("basis: user ket length mismatch");
      if (total_photons(k) != nphotons)
        throw ValidationError("basis: user ket photon count mismatch");
      allowed.insert(ket_key(k));
      for (int j = 0; j < nmodes; ++j)
        caps[static_cast<std::size_t>(j)] =
            std::max(caps[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)]);
    }
    allowed_ptr = &allowed;
  }

  State out(nmodes, std::max(nphotons, kDefaultMaxOccupation));
  DirectContext ctx{&u,
                    nmodes,
                    &photon_modes,
                    &caps,
                    allowed_ptr,
                    OccupationVector(static_cast<std::size_t>(nmodes), 0),
                    &out};
  direct_dfs(ctx, 0, Complex{1.0 / input_normalization(ket), 0});
  out.prune();
  return out;
}

namespace {

State glynn_ket_transform(const OccupationVector& ket, const Eigen::MatrixXcd& u,
                          const BasisSpec& basis) {
  const int nmodes = static_cast<int>(ket.size());
  const int nphotons = total_photons(ket);
  State out(nmodes, std::max(nphotons, kDefaultMaxOccupation));
  for (const OccupationVector& target : enumerate_basis(nmodes, nphotons, basis)) {
    if (static_cast<int>(target.size()) != nmodes)
      throw ValidationError("basis: user ket length mismatch");
    if (total_photons(target) != nphotons)
      throw ValidationError("basis: user ket photon count mismatch");
    const Complex beta = transition_amplitude(ket, target, u);
    if (beta != Complex{0, 0}) out.add_term(beta, target);
  }
  out.prune();
  return out;
}

}  // namespace

State transform(const State& input, const Eigen::MatrixXcd& u, CoreKind core,
                const BasisSpec& basis) {
  if (u.rows() != u.cols()) throw ValidationError("transform: matrix not square");
  if (input.nmodes() != u.cols())
    throw ValidationError("transform: state does not match matrix dimension");
  int max_photons = 0;
  for (const Term& t : input.terms())
    max_photons = std::max(max_photons, total_photons(t.ket));
  State out(input.nmodes(), std::max(max_photons, kDefaultMaxOccupation));
  for (const Term& t : input.terms()) {
    const State aux = core == CoreKind::Direct
                          ? direct_ket_transform(t.ket, u, basis)
                          : glynn_ket_transform(t.ket, u, basis);
    out.add_scaled(t.amplitude, aux);
  }
  out.prune();
  out.sort_terms();
  return out;
}

}  // namespace fockforge
