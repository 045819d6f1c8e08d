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
#include <random>

#include <gtest/gtest.h>

#include "dks/admm.hpp"
#include "dks/planted.hpp"
#include "support.hpp"

namespace dks {
namespace {

SolverConfig config(double gamma, UpdateMode mode = UpdateMode::derived) {
  SolverConfig c;
  c.gamma = gamma;
  c.mode = mode;
  return c;
}

TEST(DefaultGamma, Examples) {
  EXPECT_DOUBLE_EQ(default_gamma(100), 0.06);
  EXPECT_DOUBLE_EQ(default_gamma(6), 1.0);
  EXPECT_NEAR(default_gamma(36, 36), 1.0 / 6.0, 1e-15);
  EXPECT_THROW(default_gamma(0), DomainError);
}

TEST(ParseMode, RoundTrip) {
  EXPECT_EQ(parse_mode("paper"), UpdateMode::paper);
  EXPECT_EQ(parse_mode(to_string(UpdateMode::derived)), UpdateMode::derived);
  EXPECT_THROW(parse_mode("other"), DomainError);
}

TEST(RecoveryCheck, Examples) {
  const NodeSubset s(100, {3, 9, 10, 11, 20, 21, 30, 31, 32, 40, 41, 50, 51, 60, 61, 70, 71, 80,
                           81, 99});
  ASSERT_EQ(s.size(), 20);
  const Vector v = s.characteristic();
  const Matrix x0 = v * v.transpose();
  EXPECT_TRUE(recovery_check(x0, s));
  EXPECT_FALSE(recovery_check(Matrix::Zero(100, 100), s));
  EXPECT_DOUBLE_EQ(relative_error(Matrix::Zero(100, 100), s), 1.0);

  std::mt19937_64 gen(1);
  Matrix sign(100, 100);
  for (int i = 0; i < sign.size(); ++i) sign(i) = gen() % 2 ? 1.0 : -1.0;
  const Matrix x = x0 + 1e-5 * sign;
  EXPECT_NEAR(relative_error(x, s), 5e-5, 1e-12);
  EXPECT_TRUE(recovery_check(x, s));
  EXPECT_THROW(relative_error(Matrix::Zero(5, 5), s), DimensionError);
}

TEST(RoundToSubset, Examples) {
  const NodeSubset s(12, {1, 4, 5, 9});
  const Vector v = s.characteristic();
  EXPECT_EQ(round_to_subset(v * v.transpose(), 4), s);

  Vector w = Vector::Zero(12);
  w(0) = w(2) = w(3) = 1;
  EXPECT_EQ(round_to_subset(v * v.transpose() + 0.01 * w * w.transpose(), 4), s);
  EXPECT_EQ(round_to_subset(Matrix::Zero(12, 12), 5), NodeSubset::range(12, 5));
}

TEST(SolveDks, RejectsInvalidInput) {
  const Graph g = testing::cycle_graph(6);
  EXPECT_THROW(solve_dks(g, 0, config(1.0)), DomainError);
  EXPECT_THROW(solve_dks(g, 7, config(1.0)), DomainError);
  EXPECT_THROW(solve_dks(g, 3, config(0.0)), DomainError);
  auto c = config(1.0);
  c.tau = -1;
  EXPECT_THROW(solve_dks(g, 3, c), DomainError);
}

TEST(SolveDks, IterationCapIsNotAnError) {
  const auto inst = sample_dks({30, 10, 0.1, 0.2, 1});
  auto c = config(default_gamma(10));
  c.max_iter = 3;
  const auto r = solve_dks(inst.graph, 10, c);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, SolverStatus::max_iterations);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.residual_history.size(), 3u);
}

TEST(SolveDks, DerivedModeRecoversCleanClique) {
  const auto inst = sample_dks({50, 20, 0.0, 0.0, 3});
  const auto r = solve_dks(inst.graph, 20, config(default_gamma(20)));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(relative_error(r.X, inst.planted), 1e-3);
}

TEST(SolveDks, PaperModeRecoversCleanClique) {
  const auto inst = sample_dks({50, 20, 0.0, 0.0, 3});
  const auto r = solve_dks(inst.graph, 20, config(default_gamma(20), UpdateMode::paper));
  EXPECT_TRUE(r.converged) << to_string(r.status) << ": " << r.message;
  EXPECT_LT(relative_error(r.X, inst.planted), 1e-3);
}

TEST(SolveDks, CompleteGraphObjectiveAtMostK) {
  const Graph g = testing::complete_graph(12);
  for (int k : {1, 3, 5, 12}) {
    const auto c = config(default_gamma(k));
    const auto r = solve_dks(g, k, c);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.objective, k + c.tol);
    EXPECT_LE(r.Y.cwiseAbs().maxCoeff(), 1e-12);
  }
}

// Feasibility of converged iterates, on several random instances.
TEST(SolveDks, ConvergedIteratesAreNearlyFeasible) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 40 + 10 * static_cast<int>(seed), k = n / 3;
    const auto inst = sample_dks({n, k, 0.05 * (seed % 3), 0.1, seed});
    const auto c = config(default_gamma(k));
    const auto r = solve_dks(inst.graph, k, c);
    ASSERT_TRUE(r.converged) << "seed " << seed;
    EXPECT_LT(std::max(r.primal_residual, r.dual_residual), c.tol);
    EXPECT_LE(project_complement(inst.graph, r.X + r.Y).norm(), 10 * c.tol);
    EXPECT_LE(std::abs(r.X.sum() - static_cast<double>(k) * k), 10 * c.tol * n);
    EXPECT_GE(r.X.minCoeff(), -10 * c.tol);
    EXPECT_LE(r.X.maxCoeff(), 1 + 10 * c.tol);
    EXPECT_NEAR(r.objective, nuclear_norm(r.X) + c.gamma * r.Y.cwiseAbs().sum(), 1e-9);
  }
}

TEST(SolveDks, Deterministic) {
  const auto inst = sample_dks({60, 20, 0.1, 0.2, 9});
  for (auto mode : {UpdateMode::derived, UpdateMode::paper}) {
    const auto c = config(default_gamma(20), mode);
    const auto a = solve_dks(inst.graph, 20, c), b = solve_dks(inst.graph, 20, c);
    ASSERT_EQ(a.residual_history.size(), b.residual_history.size());
    for (std::size_t i = 0; i < a.residual_history.size(); ++i) {
      ASSERT_EQ(a.residual_history[i].primal, b.residual_history[i].primal);
      ASSERT_EQ(a.residual_history[i].dual, b.residual_history[i].dual);
    }
    EXPECT_EQ(a.X, b.X);
  }
}

TEST(SolveDks, DivergenceIsReportedNotThrown) {
  const auto inst = sample_dks({30, 10, 0.0, 0.0, 1});
  auto c = config(default_gamma(10), UpdateMode::paper);
  SolverResult r;
  ASSERT_NO_THROW(r = solve_dks(inst.graph, 10, c));
  if (r.status == SolverStatus::diverged) {
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.message.empty());
  }
}

TEST(SolveDkb, RecoversCleanBiclique) {
  const auto inst = sample_dkb({40, 40, 15, 15, 0.0, 0.0, 3});
  const auto r = solve_dkb(inst.graph, 15, 15, config(default_gamma(15, 15)));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(relative_error(r.X, inst.planted_u, inst.planted_v), 1e-3);
  const auto pair = round_to_subsets(r.X, 15, 15);
  EXPECT_EQ(pair.u, inst.planted_u);
  EXPECT_EQ(pair.v, inst.planted_v);
}

TEST(SolveDkb, CompleteBipartite) {
  const BipartiteGraph g = BipartiteGraph::from_biadjacency(Mask::Constant(10, 8, true));
  const auto c = config(default_gamma(4, 3));
  const auto r = solve_dkb(g, 4, 3, c);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.objective, std::sqrt(12.0) + c.tol);
  EXPECT_LE(r.Y.cwiseAbs().maxCoeff(), 1e-12);

  const auto full = solve_dkb(g, 10, 8, c);
  ASSERT_TRUE(full.converged);
  EXPECT_LT((full.X - Matrix::Ones(10, 8)).norm() / std::sqrt(80.0), 1e-3);
}

TEST(SolveDkb, RejectsInvalidSizes) {
  const BipartiteGraph g(5, 4);
  EXPECT_THROW(solve_dkb(g, 6, 1, config(1.0)), DomainError);
  EXPECT_THROW(solve_dkb(g, 1, 0, config(1.0)), DomainError);
}

}  // namespace
}  // namespace dks
