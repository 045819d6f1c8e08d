// Copyright 2026 The dks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DKS_PROX_HPP_
#define DKS_PROX_HPP_

// Proximal maps and projections used by the ADMM sweep.

#include <cmath>
#include <string>

#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/linalg.hpp"

namespace dks {

/// Entrywise shrinkage toward zero by phi; the prox of phi * |.|_1.
template <class Derived>
auto soft_threshold(const Eigen::DenseBase<Derived>& x, double phi) {
  if (phi < 0.0 || std::isnan(phi))
    throw DomainError("soft_threshold needs phi >= 0, got " + std::to_string(phi));
  using Plain = typename Derived::PlainObject;
  Plain out = x;
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const double v = out(i, j);
      out(i, j) = v > phi ? v - phi : (v < -phi ? v + phi : 0.0);
    }
  return out;
}

inline double soft_threshold(double x, double phi) {
  if (phi < 0.0 || std::isnan(phi))
    throw DomainError("soft_threshold needs phi >= 0, got " + std::to_string(phi));
  return x > phi ? x - phi : (x < -phi ? x + phi : 0.0);
}

/// Projection onto {W : e^T W e = target}: shifts every entry by
/// (target - e^T W e) / (rows * cols).
inline Matrix project_sum(const Matrix& w, double target) {
  const double beta = (target - w.sum()) / static_cast<double>(w.size());
  return (w.array() + beta).matrix();
}

/// Entrywise clamp to [0, 1].
inline Matrix clamp_box(const Matrix& m) {
  return m.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace dks

#endif  // DKS_PROX_HPP_
