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

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "dks/admm.hpp"
#include "dks/certificate.hpp"
#include "support.hpp"

namespace dks {
namespace {

// Dense solve of (k I + e e^T) y = k lt e - gamma ((k-1) e - n).
Vector y_by_dense_solve(const Vector& inside_deg, double lt, double gamma) {
  const auto k = inside_deg.size();
  const Matrix a = k * Matrix::Identity(k, k) + Matrix::Ones(k, k);
  const Vector rhs = (k * lt - gamma * (k - 1.0)) * Vector::Ones(k) + gamma * inside_deg;
  return a.ldlt().solve(rhs);
}

Vector inside_degrees(const PlantedInstance& inst) {
  const auto prof = degree_profile(inst);
  Vector d(inst.k());
  for (int a = 0; a < inst.k(); ++a) d(a) = prof[inst.planted.members()[a]];
  return d;
}

TEST(CertificateLambda, Example) {
  EXPECT_NEAR(certificate_lambda(100, 0.1, 0.06, 0.2), 0.028, 1e-15);
}

TEST(DefaultEpsilon, Examples) {
  EXPECT_NEAR(default_epsilon(0.05, 0.25), 0.7 / 3, 1e-15);
  EXPECT_NEAR(default_epsilon(0.0, 0.0), 1.0 / 3, 1e-15);
  EXPECT_NEAR(default_epsilon(0.3, 0.3), 0.4 / 3, 1e-15);
  EXPECT_THROW(default_epsilon(0.5, 0.5), DomainError);
  EXPECT_THROW(default_epsilon(0.7, 0.6), DomainError);
}

TEST(BuildMultipliers, CleanCliqueHasConstantY) {
  const auto inst = sample_dks({60, 20, 0.0, 0.0, 1});
  const double gamma = default_gamma(20), eps = default_epsilon(0, 0);
  const auto mu = build_multipliers(inst, gamma, eps);
  EXPECT_LE(mu.y.maxCoeff() - mu.y.minCoeff(), 1e-15);
  EXPECT_NEAR(mu.y(0), gamma * (20 * eps) / 40, 1e-14);
  EXPECT_LE((mu.y - y_by_dense_solve(inside_degrees(inst), mu.lambda_tilde, gamma)).norm(),
            1e-12);
}

TEST(BuildMultipliers, ClosedFormYMatchesDenseSolve) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = sample_dks({80, 10 + static_cast<int>(seed), 0.1, 0.3, seed});
    const double gamma = default_gamma(inst.k());
    const auto mu = build_multipliers(inst, gamma, default_epsilon(0.1, 0.3));
    const Vector ref = y_by_dense_solve(inside_degrees(inst), mu.lambda_tilde, gamma);
    EXPECT_LE((mu.y - ref).cwiseAbs().maxCoeff(), 1e-13 * std::max(1.0, ref.norm()));
  }
}

TEST(BuildMultipliers, NoOutsideEdgesGivesZeroW) {
  const auto inst = sample_dks({50, 15, 0.0, 0.3, 2});
  const double gamma = default_gamma(15);
  const auto mu = build_multipliers(inst, gamma, default_epsilon(0, 0.3));
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      if (inst.planted.contains(i) && inst.planted.contains(j)) continue;
      if (i == j || inst.graph.has_edge(i, j)) continue;
      EXPECT_EQ(mu.W(i, j), 0.0);
      EXPECT_NEAR(mu.F(i, j), -mu.lambda / gamma, 1e-15);
    }
}

TEST(BuildMultipliers, Errors) {
  // Node 5 sees the whole planted set {0..4}.
  Mask a = testing::clique_on(8, {0, 1, 2, 3, 4}).adjacency();
  for (int i = 0; i < 5; ++i) a(5, i) = a(i, 5) = true;
  const Graph g = Graph::from_adjacency(a);
  try {
    build_multipliers(g, NodeSubset::range(8, 5), 0.1, 0.0, 1.0, 0.3);
    FAIL() << "expected CertificateInfeasible";
  } catch (const CertificateInfeasible& e) {
    EXPECT_EQ(e.node(), 5);
    EXPECT_NE(std::string(e.what()).find('5'), std::string::npos);
  }
  const auto inst = sample_dks({20, 5, 0.0, 0.0, 1});
  EXPECT_THROW(build_multipliers(inst.graph, inst.planted, 1.0, 0.0, 1.0, 0.3), DomainError);
}

TEST(Verify, ExactByConstructionAndSupports) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> prob(0.0, 0.45);
  int built = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 20 + static_cast<int>(gen() % 80);
    const int k = 3 + static_cast<int>(gen() % (n / 2));
    const double p = prob(gen), q = prob(gen);
    const auto inst = sample_dks({n, k, p, q, gen()});
    std::uniform_real_distribution<double> gam(0.01, 2.0), ep(0.0, 0.5);
    const double gamma = gam(gen), eps = ep(gen);
    Multipliers mu;
    try {
      mu = build_multipliers(inst, gamma, eps);
    } catch (const CertificateInfeasible&) {
      continue;
    }
    ++built;
    const auto r = verify(mu, inst);
    EXPECT_LE(r.stationarity_residual, 1e-10 * (1 + mu.lambda * n + gamma));
    EXPECT_LE(r.Wv_residual, 1e-10 * std::max(1.0, mu.lambda * n));
    EXPECT_TRUE(r.F_support_ok);
    EXPECT_TRUE(r.M_support_ok);
    EXPECT_TRUE(mu.W.isApprox(mu.W.transpose(), 1e-14) || mu.W.norm() == 0);
    EXPECT_EQ(mu.F, mu.F.transpose());
    EXPECT_EQ(mu.M, mu.M.transpose());

    const auto& g = inst.graph;
    double max_f4 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const bool in_i = inst.planted.contains(i), in_j = inst.planted.contains(j);
        if (i == j || g.has_edge(i, j) || (in_i && in_j)) {
          ASSERT_EQ(mu.F(i, j), 0.0);
        }
        if (!(in_i && in_j)) {
          ASSERT_EQ(mu.M(i, j), 0.0);
        }
        if (!in_i && !in_j && i != j && !g.has_edge(i, j))
          max_f4 = std::max(max_f4, std::abs(mu.F(i, j)));
      }
    // Outside nonedge entries satisfy |F| <= 1 exactly when
    // 1/(gamma k) + eps + p + q <= 1 (away from the boundary).
    if (max_f4 > 0) {
      const double lhs = 1 / (gamma * k) + eps + p + q;
      if (std::abs(lhs - 1) > 1e-12) {
        EXPECT_EQ(max_f4 <= 1.0, lhs <= 1.0);
      }
    }
    EXPECT_EQ(r.valid_strict, r.stationarity_residual <= r.atol && r.Wv_residual <= r.atol &&
                                  r.W_spectral_norm < 1 && r.F_inf_norm < 1 &&
                                  r.min_M_on_block >= 0);
  }
  EXPECT_GT(built, 60);
}

TEST(Verify, DimensionMismatch) {
  const auto inst = sample_dks({20, 5, 0.0, 0.0, 1});
  auto mu = build_multipliers(inst, 1.0, 0.3);
  mu.W = Matrix::Zero(19, 19);
  EXPECT_THROW(verify(mu, inst), DimensionError);
}

TEST(Verify, ValidInRegime) {
  int valid = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = sample_dks({500, 120, 0.05, 0.1, seed});
    const auto mu = build_multipliers(inst, default_gamma(120), default_epsilon(0.05, 0.1));
    valid += verify(mu, inst).valid_strict;
  }
  EXPECT_GE(valid, 9);
}

TEST(Verify, InvalidFarOutsideRegime) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = sample_dks({100, 5, 0.45, 0.45, seed});
    try {
      const auto mu = build_multipliers(inst, default_gamma(5), default_epsilon(0.45, 0.45));
      const auto r = verify(mu, inst);
      EXPECT_FALSE(r.valid_strict) << "seed " << seed;
      EXPECT_GE(r.W_spectral_norm, 1.0) << "seed " << seed;
      ++checked;
    } catch (const CertificateInfeasible&) {
    }
  }
  EXPECT_GT(checked, 0);
}

// A valid certificate pins the optimum of the relaxation.
TEST(Verify, SolverReachesCertifiedObjective) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = sample_dks({200, 48, 0.05, 0.1, seed});
    const double gamma = default_gamma(48);
    const auto mu = build_multipliers(inst, gamma, default_epsilon(0.05, 0.1));
    if (!verify(mu, inst).valid_strict) continue;
    SolverConfig c;
    c.gamma = gamma;
    const auto r = solve_dks(inst.graph, 48, c);
    ASSERT_TRUE(r.converged);
    const auto star = proposed_solution(inst.graph, inst.planted);
    EXPECT_NEAR(r.objective, 48 + gamma * star.Y.cwiseAbs().sum(), 10 * c.tol);
  }
}

TEST(SpectralNorm, Examples) {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  EXPECT_NEAR(spectral_norm(d), 3.0, 3e-8);
  EXPECT_NEAR(spectral_norm(Matrix::Ones(9, 9)), 9.0, 9e-8);
  EXPECT_EQ(spectral_norm(Matrix::Zero(4, 4)), 0.0);
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = testing::random_matrix(8, 8, gen);
    const double ref = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
    EXPECT_NEAR(spectral_norm(m), ref, 1e-8 * ref);
  }
}

TEST(SpectralNorm, StartVectorOrthogonalToTopDirection) {
  // Top singular vector (1,-1)/sqrt 2 is orthogonal to the start e/sqrt n.
  Matrix m(2, 2);
  m << 3, -1, -1, 3;
  EXPECT_NEAR(spectral_norm(m), 4.0, 4e-8);
  Vector u = Vector::Zero(6);
  u << 1, -1, 1, -1, 1, -1;
  const Matrix big = 10 * u * u.transpose() / 6 + Matrix::Ones(6, 6) / 6;
  EXPECT_NEAR(spectral_norm(big), 10.0, 1e-7);
}

TEST(SpectralNorm, NonFiniteInput) {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(spectral_norm(m), NumericalError);
}

TEST(CheckYBound, CleanCliqueHolds) {
  const auto inst = sample_dks({100, 40, 0.0, 0.0, 1});
  const double gamma = default_gamma(40), eps = default_epsilon(0, 0);
  const auto mu = build_multipliers(inst, gamma, eps);
  EXPECT_GE(mu.y.minCoeff(), gamma * eps / 2);
  EXPECT_TRUE(check_y_bound(inst, mu));
}

TEST(CheckYBound, HoldsWithHighProbability) {
  int holds = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = sample_dks({260, 200, 0.0, 0.1, seed});
    const auto mu = build_multipliers(inst, default_gamma(200), 0.3);
    holds += check_y_bound(inst, mu);
  }
  EXPECT_GE(holds, 95);
}

TEST(CheckYBound, DegenerateSizeStillAnswers) {
  const auto inst = sample_dks({10, 2, 0.1, 0.5, 3});
  const auto mu = build_multipliers(inst, default_gamma(2), 0.1);
  const bool answer = check_y_bound(inst, mu);
  EXPECT_TRUE(answer || !answer);
}

TEST(Concentration, ScalarAndMatrixChecks) {
  EXPECT_EQ(check_scalar_bernstein(100, 0.3, 10000), 0.0);
  EXPECT_EQ(check_matrix_bernstein(50, 1.0, 1.0, 200), 0.0);
  EXPECT_EQ(check_matrix_bernstein(2, 1.0, 1.0, 50), 0.0);
  EXPECT_EQ(check_matrix_bernstein(30, 0.0, 1.0, 10), 0.0);
  EXPECT_THROW(check_matrix_bernstein(10, 2.0, 1.0, 1), DomainError);
}

}  // namespace
}  // namespace dks
