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

#ifndef DKS_ADMM_HPP_
#define DKS_ADMM_HPP_

// ADMM for   min |X|_* + gamma |Y|_1
//            s.t. e^T X e = target,  X + Y = 0 on the nonedge set,  X in [0,1]
// split as X + Y = Q, X = W, X = Z with Q vanishing on nonedges, W on the
// sum hyperplane and Z in the box. One sweep updates Q, X, Y, W, Z and then
// the multipliers of the three coupling constraints.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/linalg.hpp"
#include "dks/prox.hpp"

namespace dks {

enum class UpdateMode {
  /// The update formulas exactly as printed with the published algorithm:
  /// Xt = Q + 2X - Z - W - Lw, SVT threshold tau, Y <- S_{tau gamma}(Y - tau Q),
  /// Q <- P_nonedge(.), Lq kept on the edge set.
  paper,
  /// Block-exact minimizers of the augmented Lagrangian with multipliers
  /// scaled by tau.
  derived,
};

inline const char* to_string(UpdateMode m) {
  return m == UpdateMode::paper ? "paper" : "derived";
}

inline UpdateMode parse_mode(const std::string& s) {
  if (s == "paper") return UpdateMode::paper;
  if (s == "derived") return UpdateMode::derived;
  throw DomainError("unknown solver mode '" + s + "' (expected paper|derived)");
}

struct SolverConfig {
  double gamma = 0.0;  // l1 weight, must be set (see default_gamma)
  double tau = 0.35;
  double tol = 1e-4;
  int max_iter = 5000;
  UpdateMode mode = UpdateMode::derived;
  bool keep_history = true;

  void validate() const {
    if (!(gamma > 0.0)) throw DomainError("gamma must be > 0");
    if (!(tau > 0.0)) throw DomainError("tau must be > 0");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  }
};

enum class SolverStatus { converged, max_iterations, diverged };

inline const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::max_iterations: return "max_iterations";
    case SolverStatus::diverged: return "diverged";
  }
  return "unknown";
}

struct ResidualPair {
  double primal;
  double dual;
};

struct SolverResult {
  Matrix X;
  Matrix Y;
  int iterations = 0;
  bool converged = false;
  SolverStatus status = SolverStatus::max_iterations;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;  // |X|_* + gamma |Y|_1
  std::vector<ResidualPair> residual_history;
  std::string message;
};

/// 6 / k, admissible when p + q <= 1/2.
inline double default_gamma(int k) {
  if (k < 1) throw DomainError("default_gamma needs k >= 1");
  return 6.0 / k;
}

/// 6 / sqrt(k1 k2) for the bipartite relaxation.
inline double default_gamma(int k1, int k2) {
  if (k1 < 1 || k2 < 1) throw DomainError("default_gamma needs k1, k2 >= 1");
  return 6.0 / std::sqrt(static_cast<double>(k1) * k2);
}

namespace detail {

/// Iterates larger than this cannot come from a convergent run on a problem
/// whose feasible X lies in [0,1].
inline constexpr double kDivergenceBound = 1e12;

inline SolverResult run_admm(const Mask& nonedge, double target,
                             double init_value, const SolverConfig& cfg) {
  const Eigen::Index rows = nonedge.rows(), cols = nonedge.cols();
  const double gamma = cfg.gamma, tau = cfg.tau;
  const bool paper = cfg.mode == UpdateMode::paper;
  const Mask edge_side = !nonedge;

  Matrix X = Matrix::Constant(rows, cols, init_value);
  Matrix W = X, Z = X, Y = -X;
  Matrix Q = Matrix::Zero(rows, cols);
  Matrix Lq = Q, Lw = Q, Lz = Q;

  SolverResult res;
  if (cfg.keep_history) res.residual_history.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 10000)));

  for (int it = 1; it <= cfg.max_iter; ++it) {
    Matrix Xt, Xn, Yn, Wn, Zn, Lqn;
    Q = paper ? project(nonedge, X + Y - Lq) : project(edge_side, X + Y + Lq / tau);
    Xt = paper ? Matrix(Q + 2 * X - Z - W - Lw)
               : Matrix(((Q - Y - Lq / tau) + (W - Lw / tau) + (Z - Lz / tau)) / 3.0);

    if (!Xt.allFinite() || Xt.cwiseAbs().maxCoeff() > kDivergenceBound) {
      res.status = SolverStatus::diverged;
      res.message = "iterate left the finite range at iteration " + std::to_string(it);
      res.iterations = it - 1;
      break;
    }
    try {
      Xn = svt(Xt, paper ? tau : 1.0 / (3.0 * tau));
    } catch (const NumericalError& e) {
      res.status = SolverStatus::diverged;
      res.message = e.what();
      res.iterations = it - 1;
      break;
    }

    if (paper) {
      Yn = soft_threshold(Y - tau * Q, tau * gamma);
      Wn = project_sum(Xn - Lw, target);
      Zn = clamp_box(Xn - Lz);
      Lz -= Xn - Zn;
      Lw -= Xn - Wn;
      Lqn = project(edge_side, Lq - (Xn + Yn));
    } else {
      Yn = soft_threshold(Q - Xn - Lq / tau, gamma / tau);
      Wn = project_sum(Xn + Lw / tau, target);
      Zn = clamp_box(Xn + Lz / tau);
      Lqn = Lq + tau * (Xn + Yn - Q);
      Lw += tau * (Xn - Wn);
      Lz += tau * (Xn - Zn);
    }

    const double rp = std::max({(Xn - Wn).norm(), (Xn - Zn).norm(), (Xn + Yn - Q).norm()});
    const double rd = std::max({(Wn - W).norm(), (Zn - Z).norm(), (Lqn - Lq).norm()});
    X = std::move(Xn);
    Y = std::move(Yn);
    W = std::move(Wn);
    Z = std::move(Zn);
    Lq = std::move(Lqn);

    res.iterations = it;
    res.primal_residual = rp;
    res.dual_residual = rd;
    if (cfg.keep_history) res.residual_history.push_back({rp, rd});
    if (std::max(rp, rd) < cfg.tol) {
      res.status = SolverStatus::converged;
      res.converged = true;
      break;
    }
  }

  res.objective = (X.allFinite() && Y.allFinite())
                      ? nuclear_norm(X) + gamma * Y.cwiseAbs().sum()
                      : std::numeric_limits<double>::quiet_NaN();
  res.X = std::move(X);
  res.Y = std::move(Y);
  return res;
}

}  // namespace detail

/// Densest k-subgraph relaxation on g.
inline SolverResult solve_dks(const Graph& g, int k, const SolverConfig& cfg) {
  if (k < 1 || k > g.n())
    throw DomainError("solve_dks needs 1 <= k <= n, got k=" + std::to_string(k) +
                      " n=" + std::to_string(g.n()));
  cfg.validate();
  const double ratio = static_cast<double>(k) / g.n();
  return detail::run_admm(complement_edges(g), static_cast<double>(k) * k,
                          ratio * ratio, cfg);
}

/// Densest (k1,k2)-subgraph relaxation on the biadjacency of g.
inline SolverResult solve_dkb(const BipartiteGraph& g, int k1, int k2,
                              const SolverConfig& cfg) {
  if (k1 < 1 || k1 > g.n1() || k2 < 1 || k2 > g.n2())
    throw DomainError("solve_dkb needs 1 <= k1 <= n1 and 1 <= k2 <= n2");
  cfg.validate();
  const double target = static_cast<double>(k1) * k2;
  return detail::run_admm(complement_edges(g), target,
                          target / (static_cast<double>(g.n1()) * g.n2()), cfg);
}

/// |X - X0|_F / |X0|_F for X0 = v v^T.
inline double relative_error(const Matrix& x, const NodeSubset& planted) {
  const Vector v = planted.characteristic();
  if (x.rows() != v.size() || x.cols() != v.size())
    throw DimensionError("relative_error: X is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", planted host is " +
                         std::to_string(v.size()));
  return (x - v * v.transpose()).norm() / planted.size();
}

/// |X - u v^T|_F / |u v^T|_F.
inline double relative_error(const Matrix& x, const NodeSubset& pu, const NodeSubset& pv) {
  if (x.rows() != pu.host_size() || x.cols() != pv.host_size())
    throw DimensionError("relative_error: X does not match the bipartite parts");
  return (x - pu.characteristic() * pv.characteristic().transpose()).norm() /
         std::sqrt(static_cast<double>(pu.size()) * pv.size());
}

inline bool recovery_check(const Matrix& x, const NodeSubset& planted, double tol = 1e-3) {
  return relative_error(x, planted) < tol;
}

inline bool recovery_check(const Matrix& x, const NodeSubset& pu, const NodeSubset& pv,
                           double tol = 1e-3) {
  return relative_error(x, pu, pv) < tol;
}

namespace detail {

inline std::vector<int> top_k_indices(const Vector& score, int k) {
  std::vector<int> idx(static_cast<std::size_t>(score.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&score](int a, int b) { return score(a) > score(b); });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace detail

/// The k largest entries of the dominant singular vector of X, ties to the
/// lowest index. X = 0 yields {0, ..., k-1}.
inline NodeSubset round_to_subset(const Matrix& x, int k) {
  if (x.rows() != x.cols()) throw DimensionError("round_to_subset needs a square X");
  const int n = static_cast<int>(x.rows());
  if (k < 1 || k > n) throw DomainError("round_to_subset needs 1 <= k <= n");
  const auto t = top_singular_triplet(x);
  const Vector score = t.sigma > 0 ? t.u : Vector::Zero(n);
  return NodeSubset(n, detail::top_k_indices(score, k));
}

inline SubsetPair round_to_subsets(const Matrix& x, int k1, int k2) {
  const int n1 = static_cast<int>(x.rows()), n2 = static_cast<int>(x.cols());
  if (k1 < 1 || k1 > n1 || k2 < 1 || k2 > n2)
    throw DomainError("round_to_subsets needs 1 <= k1 <= n1 and 1 <= k2 <= n2");
  const auto t = top_singular_triplet(x);
  const Vector su = t.sigma > 0 ? t.u : Vector::Zero(n1);
  const Vector sv = t.sigma > 0 ? t.v : Vector::Zero(n2);
  return {NodeSubset(n1, detail::top_k_indices(su, k1)),
          NodeSubset(n2, detail::top_k_indices(sv, k2))};
}

}  // namespace dks

#endif  // DKS_ADMM_HPP_
