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

#ifndef DKS_ORACLE_HPP_
#define DKS_ORACLE_HPP_

// Exhaustive densest-subgraph search for small instances.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dks/errors.hpp"
#include "dks/graph.hpp"

namespace dks {

inline constexpr double kOracleGuard = 1e7;

struct OracleResult {
  long long best_edge_count = 0;
  std::vector<NodeSubset> optimal_subsets;  // lexicographic order
  bool unique = false;
};

struct BipartiteOracleResult {
  long long best_edge_count = 0;
  std::vector<SubsetPair> optimal_subsets;
  bool unique = false;
};

/// C(n, k) as a double; exact while it stays below 2^53.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

namespace detail {

inline void guard_enumeration(double count, const char* who) {
  if (count > kOracleGuard)
    throw SizeError(std::string(who) + ": " + std::to_string(count) +
                        " candidate subsets exceed the enumeration limit",
                    count);
}

/// Depth-first walk over k-combinations in lexicographic order. `visit`
/// receives the current combination; `weight(j, chosen)` is the gain of
/// appending j given the bitset of already chosen nodes.
template <class Gain, class Visit>
void enumerate_combinations(int n, int k, Gain&& gain, Visit&& visit) {
  std::vector<int> combo;
  combo.reserve(static_cast<std::size_t>(k));
  std::vector<std::uint64_t> chosen(static_cast<std::size_t>((n + 63) / 64), 0);
  auto rec = [&](auto&& self, int start, long long acc) -> void {
    if (static_cast<int>(combo.size()) == k) {
      visit(combo, acc);
      return;
    }
    const int remaining = k - static_cast<int>(combo.size());
    for (int j = start; j <= n - remaining; ++j) {
      const long long add = gain(j, chosen);
      combo.push_back(j);
      chosen[static_cast<std::size_t>(j >> 6)] |= 1ULL << (j & 63);
      self(self, j + 1, acc + add);
      chosen[static_cast<std::size_t>(j >> 6)] &= ~(1ULL << (j & 63));
      combo.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline int intersect_count(std::span<const std::uint64_t> a,
                           const std::vector<std::uint64_t>& b) {
  int c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

}  // namespace detail

/// All k-subsets of maximum induced edge count.
inline OracleResult brute_force_dks(const Graph& g, int k) {
  const int n = g.n();
  if (k < 1 || k > n) throw DomainError("brute_force_dks needs 1 <= k <= n");
  detail::guard_enumeration(binomial(n, k), "brute_force_dks");

  OracleResult res;
  res.best_edge_count = -1;
  detail::enumerate_combinations(
      n, k,
      [&g](int j, const std::vector<std::uint64_t>& chosen) {
        return static_cast<long long>(detail::intersect_count(g.row_bits(j), chosen));
      },
      [&](const std::vector<int>& combo, long long edges) {
        if (edges > res.best_edge_count) {
          res.best_edge_count = edges;
          res.optimal_subsets.clear();
        }
        if (edges == res.best_edge_count) res.optimal_subsets.emplace_back(n, combo);
      });
  res.unique = res.optimal_subsets.size() == 1;
  return res;
}

/// All (k1,k2) subset pairs of maximum edge count.
inline BipartiteOracleResult brute_force_dkb(const BipartiteGraph& g, int k1, int k2) {
  const int n1 = g.n1(), n2 = g.n2();
  if (k1 < 1 || k1 > n1 || k2 < 1 || k2 > n2)
    throw DomainError("brute_force_dkb needs 1 <= k1 <= n1 and 1 <= k2 <= n2");
  detail::guard_enumeration(binomial(n1, k1) * binomial(n2, k2), "brute_force_dkb");

  BipartiteOracleResult res;
  res.best_edge_count = -1;
  std::vector<long long> hits(static_cast<std::size_t>(n2));
  detail::enumerate_combinations(
      n1, k1, [](int, const std::vector<std::uint64_t>&) { return 0LL; },
      [&](const std::vector<int>& us, long long) {
        // Edges from the chosen U side into each v.
        std::fill(hits.begin(), hits.end(), 0);
        for (int u : us)
          for (int v = 0; v < n2; ++v) hits[static_cast<std::size_t>(v)] += g.has_edge(u, v);
        detail::enumerate_combinations(
            n2, k2,
            [&hits](int v, const std::vector<std::uint64_t>&) {
              return hits[static_cast<std::size_t>(v)];
            },
            [&](const std::vector<int>& vs, long long edges) {
              if (edges > res.best_edge_count) {
                res.best_edge_count = edges;
                res.optimal_subsets.clear();
              }
              if (edges == res.best_edge_count)
                res.optimal_subsets.push_back({NodeSubset(n1, us), NodeSubset(n2, vs)});
            });
      });
  res.unique = res.optimal_subsets.size() == 1;
  return res;
}

struct RelaxationValue {
  double value = 0.0;
  std::vector<NodeSubset> argmin;
};

/// Minimum of |X|_* + gamma |Y|_1 = k + gamma |Y|_1 over the integral
/// candidates (v v^T, -P(v v^T)), one per k-subset. |Y|_1 is counted
/// directly as ordered nonadjacent pairs inside the subset.
inline RelaxationValue restricted_relaxation_value(const Graph& g, int k, double gamma) {
  const int n = g.n();
  if (k < 1 || k > n) throw DomainError("restricted_relaxation_value needs 1 <= k <= n");
  if (!(gamma > 0.0)) throw DomainError("restricted_relaxation_value needs gamma > 0");
  detail::guard_enumeration(binomial(n, k), "restricted_relaxation_value");

  RelaxationValue out;
  out.value = std::numeric_limits<double>::infinity();
  // Plain successor walk over index vectors, independent of the DFS above.
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    long long ordered_nonedges = 0;
    for (int a : c)
      for (int b : c)
        if (a != b && !g.has_edge(a, b)) ++ordered_nonedges;
    const double value = k + gamma * static_cast<double>(ordered_nonedges);
    if (value < out.value) {
      out.value = value;
      out.argmin.clear();
    }
    if (value == out.value) out.argmin.emplace_back(n, c);

    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace dks

#endif  // DKS_ORACLE_HPP_
