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

#ifndef DKS_TESTS_SUPPORT_HPP_
#define DKS_TESTS_SUPPORT_HPP_

#include <random>
#include <vector>

#include "dks/graph.hpp"

namespace dks::testing {

// Test-side randomness deliberately avoids the library's own generator.
inline Matrix random_matrix(int rows, int cols, std::mt19937_64& gen,
                            double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = u(gen);
  return m;
}

inline Matrix random_symmetric(int n, std::mt19937_64& gen) {
  Matrix a = random_matrix(n, n, gen);
  return (a + a.transpose()) / 2;
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph random_graph(int n, double p, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(gen)) e.push_back({i, j});
  return Graph(n, e);
}

/// Graph on n nodes whose only edges form a clique on `members`.
inline Graph clique_on(int n, const std::vector<int>& members) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      e.push_back({std::min(members[a], members[b]), std::max(members[a], members[b])});
  return Graph(n, e);
}

}  // namespace dks::testing

#endif  // DKS_TESTS_SUPPORT_HPP_
