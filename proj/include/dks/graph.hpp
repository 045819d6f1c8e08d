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

#ifndef DKS_GRAPH_HPP_
#define DKS_GRAPH_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dks/errors.hpp"

namespace dks {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// Entrywise support pattern; true marks a member of the set.
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Edge {
  int u;
  int v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

namespace detail {

/// Row-major bit matrix, one 64-bit word per 64 columns.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(static_cast<std::size_t>(rows) * words_, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_; }

  bool get(int i, int j) const {
    return (bits_[index(i, j)] >> (j & 63)) & 1ULL;
  }
  void set(int i, int j, bool value) {
    const std::uint64_t bit = 1ULL << (j & 63);
    if (value)
      bits_[index(i, j)] |= bit;
    else
      bits_[index(i, j)] &= ~bit;
  }
  std::span<const std::uint64_t> row(int i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_,
            static_cast<std::size_t>(words_)};
  }
  int row_count(int i) const {
    int c = 0;
    for (std::uint64_t w : row(i)) c += std::popcount(w);
    return c;
  }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * words_ + (j >> 6);
  }

  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// Simple undirected graph on nodes {0, ..., n-1}. No loops, no multi-edges.
/// Immutable once built.
class Graph {
 public:
  explicit Graph(int n) : adj_(check_order(n), n) {}

  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (const Edge& e : edges) insert(e.u, e.v);
  }

  /// Builds from a square boolean pattern. The pattern must be symmetric;
  /// its diagonal is ignored.
  static Graph from_adjacency(const Mask& a) {
    if (a.rows() != a.cols())
      throw DimensionError("adjacency pattern must be square");
    Graph g(static_cast<int>(a.rows()));
    for (int i = 0; i < g.n(); ++i)
      for (int j = i + 1; j < g.n(); ++j) {
        if (a(i, j) != a(j, i))
          throw DomainError("adjacency pattern is not symmetric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        if (a(i, j)) g.insert(i, j);
      }
    return g;
  }

  int n() const { return adj_.rows(); }
  long long edge_count() const { return m_; }

  bool has_edge(int i, int j) const { return i != j && adj_.get(i, j); }

  int degree(int i) const { return adj_.row_count(i); }

  std::span<const std::uint64_t> row_bits(int i) const { return adj_.row(i); }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (adj_.get(i, j)) out.push_back({i, j});
    return out;
  }

  Mask adjacency() const {
    Mask a(n(), n());
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) a(i, j) = adj_.get(i, j);
    return a;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_ == b.adj_;
  }

 private:
  static int check_order(int n) {
    if (n < 1) throw DomainError("graph needs at least one node");
    return n;
  }

  void insert(int u, int v) {
    if (u < 0 || v < 0 || u >= n() || v >= n())
      throw DomainError("edge endpoint out of range: " + std::to_string(u) +
                        " " + std::to_string(v));
    if (u == v) throw DomainError("self-loop at node " + std::to_string(u));
    if (adj_.get(u, v)) return;
    adj_.set(u, v, true);
    adj_.set(v, u, true);
    ++m_;
  }

  detail::BitMatrix adj_;
  long long m_ = 0;
};

/// Bipartite graph with parts U = {0..n1-1} and V = {0..n2-1}; edges are
/// stored as the n1 x n2 biadjacency pattern.
class BipartiteGraph {
 public:
  BipartiteGraph(int n1, int n2)
      : biadj_(check_part(n1), check_part(n2)) {}

  BipartiteGraph(int n1, int n2, std::span<const Edge> edges)
      : BipartiteGraph(n1, n2) {
    for (const Edge& e : edges) insert(e.u, e.v);
  }

  static BipartiteGraph from_biadjacency(const Mask& b) {
    BipartiteGraph g(static_cast<int>(b.rows()), static_cast<int>(b.cols()));
    for (int i = 0; i < g.n1(); ++i)
      for (int j = 0; j < g.n2(); ++j)
        if (b(i, j)) g.insert(i, j);
    return g;
  }

  int n1() const { return biadj_.rows(); }
  int n2() const { return biadj_.cols(); }
  long long edge_count() const { return m_; }
  bool has_edge(int u, int v) const { return biadj_.get(u, v); }
  std::span<const std::uint64_t> row_bits(int u) const { return biadj_.row(u); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < n1(); ++i)
      for (int j = 0; j < n2(); ++j)
        if (biadj_.get(i, j)) out.push_back({i, j});
    return out;
  }

  Mask biadjacency() const {
    Mask b(n1(), n2());
    for (int i = 0; i < n1(); ++i)
      for (int j = 0; j < n2(); ++j) b(i, j) = biadj_.get(i, j);
    return b;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.biadj_ == b.biadj_;
  }

 private:
  static int check_part(int n) {
    if (n < 1) throw DomainError("bipartite part needs at least one node");
    return n;
  }

  void insert(int u, int v) {
    if (u < 0 || v < 0 || u >= n1() || v >= n2())
      throw DomainError("bipartite edge endpoint out of range: " +
                        std::to_string(u) + " " + std::to_string(v));
    if (biadj_.get(u, v)) return;
    biadj_.set(u, v, true);
    ++m_;
  }

  detail::BitMatrix biadj_;
  long long m_ = 0;
};

/// Sorted set of node indices inside a host of size n.
class NodeSubset {
 public:
  NodeSubset() = default;

  NodeSubset(int host_size, std::vector<int> members)
      : n_(host_size), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
    if (!members_.empty() && (members_.front() < 0 || members_.back() >= n_))
      throw DomainError("subset member outside host range [0," +
                        std::to_string(n_) + ")");
  }

  /// {first, ..., first + size - 1}.
  static NodeSubset range(int host_size, int size, int first = 0) {
    std::vector<int> m(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) m[static_cast<std::size_t>(i)] = first + i;
    return NodeSubset(host_size, std::move(m));
  }

  int host_size() const { return n_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }

  bool contains(int i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  Vector characteristic() const {
    Vector v = Vector::Zero(n_);
    for (int i : members_) v(i) = 1.0;
    return v;
  }

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;

 private:
  int n_ = 0;
  std::vector<int> members_;
};

/// Planted or candidate sets on the two sides of a bipartite graph.
struct SubsetPair {
  NodeSubset u;
  NodeSubset v;
  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
};

/// Average degree |E| / |V|.
inline double density(const Graph& g) {
  return static_cast<double>(g.edge_count()) / g.n();
}

inline long long induced_edge_count(const Graph& g, const NodeSubset& s) {
  long long m = 0;
  const auto& mem = s.members();
  for (std::size_t a = 0; a < mem.size(); ++a)
    for (std::size_t b = a + 1; b < mem.size(); ++b)
      m += g.has_edge(mem[a], mem[b]);
  return m;
}

inline long long induced_edge_count(const BipartiteGraph& g,
                                    const NodeSubset& su,
                                    const NodeSubset& sv) {
  long long m = 0;
  for (int u : su.members())
    for (int v : sv.members()) m += g.has_edge(u, v);
  return m;
}

inline double subgraph_density(const Graph& g, const NodeSubset& s) {
  if (s.empty()) throw DomainError("subgraph_density of an empty subset");
  if (s.host_size() != g.n())
    throw DimensionError("subset host size does not match graph order");
  return static_cast<double>(induced_edge_count(g, s)) / s.size();
}

/// Pattern of the nonedge set: ordered pairs (i, j), i != j, not adjacent.
inline Mask complement_edges(const Graph& g) {
  Mask m(g.n(), g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) m(i, j) = i != j && !g.has_edge(i, j);
  return m;
}

/// Bipartite nonedge set (U x V) - E.
inline Mask complement_edges(const BipartiteGraph& g) {
  return !g.biadjacency();
}

/// Keeps the entries of `a` on `support` and zeroes the rest.
inline Matrix project(const Mask& support, const Matrix& a) {
  if (support.rows() != a.rows() || support.cols() != a.cols())
    throw DimensionError("projection support is " +
                         std::to_string(support.rows()) + "x" +
                         std::to_string(support.cols()) + ", matrix is " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  return support.select(a, 0.0).matrix();
}

inline Matrix project_complement(const Graph& g, const Matrix& a) {
  return project(complement_edges(g), a);
}

inline Matrix project_complement(const BipartiteGraph& g, const Matrix& a) {
  return project(complement_edges(g), a);
}

/// Number of nonzero entries.
inline long long l0_norm(const Matrix& a) {
  return static_cast<long long>((a.array() != 0.0).count());
}

struct ProposedSolution {
  Matrix X;
  Matrix Y;
};

/// X = v v^T for the characteristic vector v of s, and the correction
/// Y = -P(X) that cancels X on nonedges.
inline ProposedSolution proposed_solution(const Graph& g, const NodeSubset& s) {
  if (s.empty()) throw DomainError("proposed_solution needs k >= 1");
  if (s.host_size() != g.n())
    throw DimensionError("subset host size does not match graph order");
  const Vector v = s.characteristic();
  Matrix x = v * v.transpose();
  Matrix y = -project_complement(g, x);
  return {std::move(x), std::move(y)};
}

inline ProposedSolution proposed_solution(const BipartiteGraph& g,
                                          const NodeSubset& su,
                                          const NodeSubset& sv) {
  if (su.empty() || sv.empty())
    throw DomainError("proposed_solution needs k1, k2 >= 1");
  if (su.host_size() != g.n1() || sv.host_size() != g.n2())
    throw DimensionError("subset host sizes do not match the bipartite parts");
  Matrix x = su.characteristic() * sv.characteristic().transpose();
  Matrix y = -project_complement(g, x);
  return {std::move(x), std::move(y)};
}

struct DensityIdentity {
  double lhs;
  double rhs;
};

/// Subgraph density computed directly and through the support size of the
/// correction matrix, (k(k-1) - |Y|_0) / (2k).
inline DensityIdentity density_identity_check(const Graph& g,
                                              const NodeSubset& s) {
  const auto sol = proposed_solution(g, s);
  const double k = s.size();
  return {subgraph_density(g, s),
          (k * (k - 1) - static_cast<double>(l0_norm(sol.Y))) / (2 * k)};
}

}  // namespace dks

#endif  // DKS_GRAPH_HPP_
