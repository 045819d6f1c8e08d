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

#ifndef DKS_CERTIFICATE_HPP_
#define DKS_CERTIFICATE_HPP_

// Dual certificate for the planted solution (v v^T, -P(v v^T)).
//
// The optimality conditions ask for W, F, lambda >= 0 and M >= 0 with
//   X/k + W - lambda e e^T - gamma (Y + F) + M = 0,
//   W v = W^T v = 0,  |W| <= 1,  |F|_inf <= 1,
//   F = 0 on edges, the diagonal and the planted nonedges,
//   M = 0 outside the planted block.
// The construction below makes the first line hold entry by entry and the
// row sums W v vanish; the norm bounds are what remains to be checked.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/linalg.hpp"
#include "dks/planted.hpp"
#include "dks/rng.hpp"

namespace dks {

struct Multipliers {
  Matrix W;
  Matrix F;
  Matrix M;
  double lambda = 0.0;
  double lambda_tilde = 0.0;  // lambda - 1/k
  double gamma = 0.0;
  double epsilon_slack = 0.0;
  Vector y;  // indexed like planted.members()
};

struct CertificateReport {
  double stationarity_residual = 0.0;
  double Wv_residual = 0.0;
  double W_spectral_norm = 0.0;
  double F_inf_norm = 0.0;
  double min_M_on_block = 0.0;
  double atol = 1e-8;
  bool valid_strict = false;

  // Structural conditions; they hold by construction and are reported so a
  // hand-built certificate can be checked too.
  bool F_support_ok = false;
  bool M_support_ok = false;

  double W_margin() const { return 1.0 - W_spectral_norm; }
  double F_margin() const { return 1.0 - F_inf_norm; }
  double M_margin() const { return min_M_on_block; }
};

/// Slack (1 - p - q) / 3.
inline double default_epsilon(double p, double q) {
  if (!(p + q < 1.0))
    throw DomainError("default_epsilon needs p + q < 1, got " + std::to_string(p + q));
  return (1.0 - p - q) / 3.0;
}

/// lambda = gamma (epsilon + q) + 1/k.
inline double certificate_lambda(int k, double q, double gamma, double epsilon) {
  return gamma * (epsilon + q) + 1.0 / k;
}

/// Closed form of (k I + e e^T) y = k lt e - gamma ((k-1) e - n):
///   y = (k lt - (k-1) gamma) e / (2k) + (gamma/k) (n - (n^T e / 2k) e).
inline Vector certificate_y(const Vector& inside_degrees, double lambda_tilde,
                            double gamma) {
  const double k = static_cast<double>(inside_degrees.size());
  const double base = (k * lambda_tilde - (k - 1) * gamma) / (2 * k);
  const double mean_shift = inside_degrees.sum() / (2 * k);
  return (base + (gamma / k) * (inside_degrees.array() - mean_shift)).matrix();
}

inline Multipliers build_multipliers(const Graph& g, const NodeSubset& planted,
                                     double p, double q, double gamma,
                                     double epsilon) {
  const int n = g.n(), k = planted.size();
  if (planted.host_size() != n) throw DimensionError("planted set does not match graph");
  if (k < 1) throw DomainError("certificate needs a nonempty planted set");
  if (!(p >= 0.0 && p < 1.0))
    throw DomainError("certificate needs 0 <= p < 1, got p=" + std::to_string(p));
  if (!(gamma > 0.0)) throw DomainError("certificate needs gamma > 0");

  const std::vector<int> nbrs = degree_profile(g, planted);
  std::vector<bool> inside(static_cast<std::size_t>(n), false);
  for (int i : planted.members()) inside[static_cast<std::size_t>(i)] = true;
  for (int j = 0; j < n; ++j)
    if (!inside[static_cast<std::size_t>(j)] && nbrs[static_cast<std::size_t>(j)] >= k)
      throw CertificateInfeasible(
          "outside node " + std::to_string(j) + " is adjacent to all " +
              std::to_string(k) + " planted nodes",
          j);

  Multipliers mu;
  mu.gamma = gamma;
  mu.epsilon_slack = epsilon;
  mu.lambda = certificate_lambda(k, q, gamma, epsilon);
  mu.lambda_tilde = mu.lambda - 1.0 / k;
  const double lambda = mu.lambda;

  Vector inside_deg(k);
  for (int a = 0; a < k; ++a)
    inside_deg(a) = nbrs[static_cast<std::size_t>(planted.members()[static_cast<std::size_t>(a)])];
  mu.y = certificate_y(inside_deg, mu.lambda_tilde, gamma);

  // Position of each planted node inside planted.members(), -1 outside.
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < k; ++a) slot[static_cast<std::size_t>(planted.members()[static_cast<std::size_t>(a)])] = a;

  mu.W = Matrix::Zero(n, n);
  mu.F = Matrix::Zero(n, n);
  mu.M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int si = slot[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const int sj = slot[static_cast<std::size_t>(j)];
      const bool adjacent = i == j || g.has_edge(i, j);
      if (si >= 0 && sj >= 0) {
        const double m = mu.y(si) + mu.y(sj);
        mu.M(i, j) = m;
        mu.W(i, j) = adjacent ? mu.lambda_tilde - m : mu.lambda_tilde - gamma - m;
      } else if (adjacent) {
        mu.W(i, j) = lambda;
      } else if (si < 0 && sj < 0) {
        mu.W(i, j) = -lambda * p / (1.0 - p);
        mu.F(i, j) = -lambda / (gamma * (1.0 - p));
      } else {
        const double nj = nbrs[static_cast<std::size_t>(si >= 0 ? j : i)];
        mu.W(i, j) = -lambda * nj / (k - nj);
        mu.F(i, j) = -(lambda / gamma) * k / (k - nj);
      }
    }
  }
  return mu;
}

/// Uses the generating p, q recorded with the instance.
inline Multipliers build_multipliers(const PlantedInstance& inst, double gamma,
                                     double epsilon) {
  return build_multipliers(inst.graph, inst.planted, inst.params.p, inst.params.q,
                           gamma, epsilon);
}

struct EdgeFrequencies {
  double p;  // fraction of present pairs outside the planted block
  double q;  // fraction of missing pairs inside the planted block
};

/// Empirical p, q for graphs that come without generating parameters.
inline EdgeFrequencies estimate_pq(const Graph& g, const NodeSubset& planted) {
  const double n = g.n(), k = planted.size();
  const double inside_pairs = k * (k - 1) / 2;
  const double outside_pairs = n * (n - 1) / 2 - inside_pairs;
  const auto inside_edges = static_cast<double>(induced_edge_count(g, planted));
  const double outside_edges = static_cast<double>(g.edge_count()) - inside_edges;
  return {outside_pairs > 0 ? outside_edges / outside_pairs : 0.0,
          inside_pairs > 0 ? 1.0 - inside_edges / inside_pairs : 0.0};
}

inline CertificateReport verify(const Multipliers& mu, const Graph& g,
                                const NodeSubset& planted, double atol = 1e-8) {
  const int n = g.n(), k = planted.size();
  for (const Matrix* m : {&mu.W, &mu.F, &mu.M})
    if (m->rows() != n || m->cols() != n)
      throw DimensionError("multiplier is " + detail::dims(*m) + ", graph has " +
                           std::to_string(n) + " nodes");

  const auto sol = proposed_solution(g, planted);
  const Matrix residual = sol.X / k + mu.W - Matrix::Constant(n, n, mu.lambda) -
                          mu.gamma * (sol.Y + mu.F) + mu.M;
  const Vector v = planted.characteristic();

  CertificateReport r;
  r.atol = atol;
  r.stationarity_residual = residual.cwiseAbs().maxCoeff();
  r.Wv_residual = std::max((mu.W * v).cwiseAbs().maxCoeff(),
                           (mu.W.transpose() * v).cwiseAbs().maxCoeff());
  r.W_spectral_norm = operator_norm(mu.W);
  r.F_inf_norm = mu.F.cwiseAbs().maxCoeff();

  r.min_M_on_block = std::numeric_limits<double>::infinity();
  r.F_support_ok = true;
  r.M_support_ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool block = planted.contains(i) && planted.contains(j);
      if (block)
        r.min_M_on_block = std::min(r.min_M_on_block, mu.M(i, j));
      else if (mu.M(i, j) != 0.0)
        r.M_support_ok = false;
      const bool f_zero_required = i == j || g.has_edge(i, j) || block;
      if (f_zero_required && mu.F(i, j) != 0.0) r.F_support_ok = false;
    }

  r.valid_strict = r.stationarity_residual <= atol && r.Wv_residual <= atol &&
                   r.W_spectral_norm < 1.0 && r.F_inf_norm < 1.0 &&
                   r.min_M_on_block >= 0.0;
  return r;
}

inline CertificateReport verify(const Multipliers& mu, const PlantedInstance& inst,
                                double atol = 1e-8) {
  return verify(mu, inst.graph, inst.planted, atol);
}

/// Largest singular value by power iteration on M^T M, started from e/sqrt(n).
/// Stops once the Rayleigh residual |B x - mu x| drops below rtol * mu; a
/// converged estimate is re-checked from a perturbed start so that a start
/// vector orthogonal to the top singular space cannot stall it.
inline double spectral_norm(const Matrix& m, double rtol = 1e-8) {
  detail::require_finite(m, "spectral_norm");
  const Eigen::Index n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  const double scale = m.cwiseAbs().maxCoeff();
  const Matrix a = m / scale;
  CounterRng rng(0x5eed5eedULL);
  Vector x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double best = 0.0;
  bool rechecked = false;
  constexpr int kMaxIter = 100000;

  for (int it = 0; it < kMaxIter; ++it) {
    Vector bx = a.transpose() * (a * x);
    const double mu = x.dot(bx);
    const double resid = (bx - mu * x).norm();
    const double bnorm = bx.norm();

    const bool stalled = bnorm <= 1e-300;
    if (!stalled && resid <= rtol * mu) {
      if (rechecked && mu <= best * (1.0 + rtol)) return scale * std::sqrt(std::max(mu, best));
      best = std::max(best, mu);
      rechecked = true;
      // Perturb and keep iterating; a dominant component that was missing
      // from x now grows.
      for (Eigen::Index i = 0; i < n; ++i) bx(i) += 1e-3 * bnorm * (rng.uniform() - 0.5);
    } else if (stalled) {
      for (Eigen::Index i = 0; i < n; ++i) bx(i) = rng.uniform() - 0.5;
    }
    x = bx.normalized();
  }
  throw NumericalError("spectral_norm: power iteration did not converge in " +
                       std::to_string(kMaxIter) + " iterations on " +
                       detail::dims(m) + " matrix");
}

/// Lower bound on the entries of y that holds with high probability:
///   gamma (eps/2 - 12 max{ sqrt(q(1-q) log k / k), log k / k }).
inline double y_lower_bound(int k, double q, double gamma, double epsilon) {
  const double lk = std::log(static_cast<double>(k));
  const double dev = std::max(std::sqrt(q * (1 - q) * lk / k), lk / k);
  return gamma * (epsilon / 2 - 12 * dev);
}

/// Reports whether min_i y_i clears y_lower_bound. A w.h.p. statement, so a
/// false here is an observation, not an error.
inline bool check_y_bound(const PlantedInstance& inst, const Multipliers& mu) {
  return mu.y.minCoeff() >= y_lower_bound(inst.k(), inst.params.q, mu.gamma, mu.epsilon_slack);
}

/// Binomial deviation bound 6 max{ sqrt(p(1-p) m log m), log m }.
inline double binomial_deviation_bound(long long m, double p) {
  const double lm = std::log(static_cast<double>(m));
  return 6.0 * std::max(std::sqrt(p * (1 - p) * m * lm), lm);
}

/// Fraction of `draws` Binomial(m, p) samples with |s - p m| above
/// binomial_deviation_bound(m, p).
inline double check_scalar_bernstein(long long m, double p, int draws,
                                     std::uint64_t seed = 1) {
  if (m < 1 || draws < 1) throw DomainError("check_scalar_bernstein needs m, draws >= 1");
  const double bound = binomial_deviation_bound(m, p);
  CounterRng rng(derive_key(seed, {0x62696eULL}));
  int violations = 0;
  for (int d = 0; d < draws; ++d) {
    long long s = 0;
    for (long long i = 0; i < m; ++i) s += rng.bernoulli(p);
    violations += std::abs(static_cast<double>(s) - p * m) > bound;
  }
  return static_cast<double>(violations) / draws;
}

/// Matrix deviation bound 6 max{ sigma sqrt(n log n), B log^2 n }.
inline double matrix_deviation_bound(int n, double sigma, double bound) {
  const double ln = std::log(static_cast<double>(n));
  return 6.0 * std::max(sigma * std::sqrt(n * ln), bound * ln * ln);
}

/// Fraction of `trials` random symmetric n x n matrices, i.i.d. entries +-sigma
/// with equal probability (mean 0, variance sigma^2, |a_ij| <= B), whose
/// spectral norm exceeds matrix_deviation_bound(n, sigma, B).
inline double check_matrix_bernstein(int n, double sigma, double bound, int trials,
                                     std::uint64_t seed = 1) {
  if (n < 1 || trials < 1) throw DomainError("check_matrix_bernstein needs n, trials >= 1");
  if (sigma < 0 || sigma > bound)
    throw DomainError("two-point entries need 0 <= sigma <= B");
  const double limit = matrix_deviation_bound(n, sigma, bound);
  CounterRng rng(derive_key(seed, {0x6d6174ULL}));
  int violations = 0;
  Matrix a(n, n);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a(i, j) = a(j, i) = rng.bernoulli(0.5) ? sigma : -sigma;
    const Vector w = symmetric_eigenvalues(a);
    const double norm = std::max(std::abs(w(0)), std::abs(w(n - 1)));
    violations += norm > limit;
  }
  return static_cast<double>(violations) / trials;
}

}  // namespace dks

#endif  // DKS_CERTIFICATE_HPP_
