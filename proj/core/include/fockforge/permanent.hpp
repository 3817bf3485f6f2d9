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

#ifndef FOCKFORGE_PERMANENT_HPP
#define FOCKFORGE_PERMANENT_HPP

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <vector>

#include "fockforge/common.hpp"

namespace fockforge {

/// Balasubramanian-Bax-Franklin-Glynn permanent in gray code: running
/// delta-weighted column sums are updated by one row flip per step, so each
/// of the 2^(n-1) sign vectors costs O(n). perm of the 0x0 matrix is 1.
template <typename Derived>
typename Derived::Scalar glynn_permanent(const Eigen::MatrixBase<Derived>& a_expr) {
  using Scalar = typename Derived::Scalar;
  const auto& a = a_expr.derived();
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ValidationError("permanent: matrix not square");
  if (n == 0) return Scalar(1);
  if (n == 1) return a(0, 0);

  std::vector<Scalar> sums(static_cast<std::size_t>(n), Scalar(0));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) sums[static_cast<std::size_t>(j)] += a(i, j);

  Scalar total = sums[0];
  for (Eigen::Index j = 1; j < n; ++j) total *= sums[static_cast<std::size_t>(j)];

  std::vector<double> delta(static_cast<std::size_t>(n), 1.0);
  const uint64_t steps = uint64_t{1} << (n - 1);
  double sign = 1.0;
  for (uint64_t t = 1; t < steps; ++t) {
    // delta_0 stays +1; gray code flips one of the remaining rows per step
    const auto flip = static_cast<Eigen::Index>(std::countr_zero(t) + 1);
    auto& d = delta[static_cast<std::size_t>(flip)];
    d = -d;
    const double step = 2.0 * d;
    for (Eigen::Index j = 0; j < n; ++j)
      sums[static_cast<std::size_t>(j)] += step * a(flip, j);
    sign = -sign;
    Scalar product = sums[0] * sign;
    for (Eigen::Index j = 1; j < n; ++j) product *= sums[static_cast<std::size_t>(j)];
    total += product;
  }
  return total / Scalar(std::ldexp(1.0, static_cast<int>(n - 1)));
}

/// Builds the repeated-row/column matrix of a transition: column j of
/// `matrix` appears once per photon in input mode j, row i once per photon
/// in output mode i.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> repeated_submatrix(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& matrix,
    const std::vector<int>& input_occupations,
    const std::vector<int>& output_occupations) {
  std::vector<Eigen::Index> cols, rows;
  for (std::size_t j = 0; j < input_occupations.size(); ++j)
    for (int c = 0; c < input_occupations[j]; ++c) cols.push_back(static_cast<Eigen::Index>(j));
  for (std::size_t i = 0; i < output_occupations.size(); ++i)
    for (int c = 0; c < output_occupations[i]; ++c) rows.push_back(static_cast<Eigen::Index>(i));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sub(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = matrix(rows[r], cols[c]);
  return sub;
}

}  // namespace fockforge

#endif
