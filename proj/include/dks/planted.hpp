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

#ifndef DKS_PLANTED_HPP_
#define DKS_PLANTED_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/rng.hpp"

namespace dks {

/// Planted dense k-subgraph model: pairs inside the planted k-set are edges
/// with probability 1 - q, every other pair with probability p.
struct PlantedDksParams {
  int n = 0;
  int k = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  bool permute = true;  // scatter the planted nodes over random labels
};

struct PlantedDkbParams {
  int n1 = 0;
  int n2 = 0;
  int k1 = 0;
  int k2 = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  bool permute = true;
};

/// Deterministic corruption of a planted clique: at most `s` deletions inside
/// the planted block and at most `r` planted-to-outside additions.
struct AdversarialParams {
  long long r = 0;
  long long s = 0;
  double delta1 = 0.0;  // per-node inside-deletion fraction
  double delta2 = 0.0;  // per-outside-node attachment fraction
};

struct BipartiteAdversarialParams {
  long long r = 0;
  long long s = 0;
  double alpha1 = 0.0;  // each planted V node keeps >= (1 - alpha1) k1 U* nbrs
  double alpha2 = 0.0;  // each planted U node keeps >= (1 - alpha2) k2 V* nbrs
  double beta1 = 0.0;   // each outside V node has <= beta1 k1 U* nbrs
  double beta2 = 0.0;   // each outside U node has <= beta2 k2 V* nbrs
};

struct PlantedInstance {
  Graph graph;
  NodeSubset planted;
  PlantedDksParams params;
  std::optional<AdversarialParams> adversarial;
  std::uint64_t adversarial_seed = 0;

  int k() const { return planted.size(); }
};

struct PlantedBipartiteInstance {
  BipartiteGraph graph;
  NodeSubset planted_u;
  NodeSubset planted_v;
  PlantedDkbParams params;
  std::optional<BipartiteAdversarialParams> adversarial;
  std::uint64_t adversarial_seed = 0;
};

inline void to_json(nlohmann::json& j, const PlantedDksParams& p) {
  j = {{"model", "dks"}, {"n", p.n},       {"k", p.k},
       {"p", p.p},       {"q", p.q},       {"seed", p.seed},
       {"permute", p.permute}};
}

inline void from_json(const nlohmann::json& j, PlantedDksParams& p) {
  p.n = j.at("n").get<int>();
  p.k = j.at("k").get<int>();
  p.p = j.value("p", 0.0);
  p.q = j.value("q", 0.0);
  p.seed = j.value("seed", std::uint64_t{0});
  p.permute = j.value("permute", true);
}

inline void to_json(nlohmann::json& j, const PlantedDkbParams& p) {
  j = {{"model", "dkb"}, {"n1", p.n1}, {"n2", p.n2},     {"k1", p.k1},
       {"k2", p.k2},     {"p", p.p},   {"q", p.q},       {"seed", p.seed},
       {"permute", p.permute}};
}

inline void from_json(const nlohmann::json& j, PlantedDkbParams& p) {
  p.n1 = j.at("n1").get<int>();
  p.n2 = j.at("n2").get<int>();
  p.k1 = j.at("k1").get<int>();
  p.k2 = j.at("k2").get<int>();
  p.p = j.value("p", 0.0);
  p.q = j.value("q", 0.0);
  p.seed = j.value("seed", std::uint64_t{0});
  p.permute = j.value("permute", true);
}

inline void to_json(nlohmann::json& j, const AdversarialParams& a) {
  j = {{"r", a.r}, {"s", a.s}, {"delta1", a.delta1}, {"delta2", a.delta2}};
}

inline void to_json(nlohmann::json& j, const BipartiteAdversarialParams& a) {
  j = {{"r", a.r},           {"s", a.s},           {"alpha1", a.alpha1},
       {"alpha2", a.alpha2}, {"beta1", a.beta1},   {"beta2", a.beta2}};
}

/// Parameter record stored in ground-truth sidecars.
inline nlohmann::json params_json(const PlantedInstance& inst) {
  nlohmann::json j = inst.params;
  if (inst.adversarial) {
    j["adversarial"] = *inst.adversarial;
    j["adversarial_seed"] = inst.adversarial_seed;
  }
  return j;
}

inline nlohmann::json params_json(const PlantedBipartiteInstance& inst) {
  nlohmann::json j = inst.params;
  if (inst.adversarial) {
    j["adversarial"] = *inst.adversarial;
    j["adversarial_seed"] = inst.adversarial_seed;
  }
  return j;
}

namespace detail {

inline void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " +
                      std::to_string(x));
}

inline void check_fraction(double x, const char* name) {
  if (!(x >= 0.0 && x < 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1), got " +
                      std::to_string(x));
}

/// floor(fraction * k), robust to products such as 0.3 * 10 = 2.9999...
inline long long degree_cap(double fraction, int k) {
  return static_cast<long long>(std::floor(fraction * k + 1e-9));
}

inline std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

template <class T>
void shuffle(std::vector<T>& v, CounterRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace detail

inline PlantedInstance sample_dks(const PlantedDksParams& params) {
  const int n = params.n, k = params.k;
  if (n < 1 || k < 1 || k > n)
    throw DomainError("sample_dks needs 1 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  detail::check_probability(params.p, "p");
  detail::check_probability(params.q, "q");

  // Coin flips are drawn in a fixed pair order on the unpermuted labels so
  // the edge pattern does not depend on the permutation flag.
  CounterRng coins(derive_key(params.seed, {0}));
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  if (params.permute) {
    CounterRng perm_rng(derive_key(params.seed, {1}));
    label = detail::random_permutation(n, perm_rng);
  }

  Mask a = Mask::Constant(n, n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool inside = j < k;
      const bool present = inside ? coins.bernoulli(1.0 - params.q)
                                  : coins.bernoulli(params.p);
      if (present) {
        const int u = label[static_cast<std::size_t>(i)];
        const int v = label[static_cast<std::size_t>(j)];
        a(u, v) = a(v, u) = true;
      }
    }
  std::vector<int> planted(label.begin(), label.begin() + k);
  return {Graph::from_adjacency(a), NodeSubset(n, std::move(planted)), params,
          std::nullopt, 0};
}

inline PlantedBipartiteInstance sample_dkb(const PlantedDkbParams& params) {
  const int n1 = params.n1, n2 = params.n2, k1 = params.k1, k2 = params.k2;
  if (n1 < 1 || n2 < 1 || k1 < 1 || k2 < 1 || k1 > n1 || k2 > n2)
    throw DomainError("sample_dkb needs 1 <= k1 <= n1 and 1 <= k2 <= n2");
  detail::check_probability(params.p, "p");
  detail::check_probability(params.q, "q");

  CounterRng coins(derive_key(params.seed, {0}));
  std::vector<int> lu(static_cast<std::size_t>(n1)), lv(static_cast<std::size_t>(n2));
  std::iota(lu.begin(), lu.end(), 0);
  std::iota(lv.begin(), lv.end(), 0);
  if (params.permute) {
    CounterRng ru(derive_key(params.seed, {1}));
    CounterRng rv(derive_key(params.seed, {3}));
    lu = detail::random_permutation(n1, ru);
    lv = detail::random_permutation(n2, rv);
  }

  Mask b = Mask::Constant(n1, n2, false);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const bool inside = i < k1 && j < k2;
      const bool present = inside ? coins.bernoulli(1.0 - params.q)
                                  : coins.bernoulli(params.p);
      if (present)
        b(lu[static_cast<std::size_t>(i)], lv[static_cast<std::size_t>(j)]) = true;
    }
  return {BipartiteGraph::from_biadjacency(b),
          NodeSubset(n1, std::vector<int>(lu.begin(), lu.begin() + k1)),
          NodeSubset(n2, std::vector<int>(lv.begin(), lv.begin() + k2)),
          params,
          std::nullopt,
          0};
}

/// For every node j, the number of its neighbours inside `planted`
/// (for planted j, excluding j itself).
inline std::vector<int> degree_profile(const Graph& g, const NodeSubset& planted) {
  if (planted.host_size() != g.n())
    throw DimensionError("planted set host size does not match graph order");
  std::vector<int> counts(static_cast<std::size_t>(g.n()), 0);
  for (int j = 0; j < g.n(); ++j)
    for (int i : planted.members()) counts[static_cast<std::size_t>(j)] += g.has_edge(i, j);
  return counts;
}

inline std::vector<int> degree_profile(const PlantedInstance& inst) {
  return degree_profile(inst.graph, inst.planted);
}

/// Largest deletion budget for which every planted node loses at most
/// floor(delta1 k) planted neighbours.
inline long long max_adversarial_deletions(int k, double delta1) {
  return static_cast<long long>(k) * detail::degree_cap(delta1, k) / 2;
}

/// Corrupts a planted clique (p = q = 0 instance) by round-robin deletions
/// inside the planted block and round-robin planted-to-outside additions.
///
/// Every planted node loses at most floor(delta1 k) planted neighbours, so it
/// stays adjacent to at least (1 - delta1) k planted nodes counting itself
/// (the loop of A + I); every outside node gains at most floor(delta2 k)
/// planted neighbours. Throws BudgetError when s or r exceeds those caps.
inline PlantedInstance corrupt_adversarial(const PlantedInstance& clean,
                                          const AdversarialParams& adv,
                                          std::uint64_t seed) {
  const Graph& g = clean.graph;
  const int n = g.n(), k = clean.k();
  const auto& vstar = clean.planted.members();
  if (g.edge_count() != static_cast<long long>(k) * (k - 1) / 2 ||
      induced_edge_count(g, clean.planted) != g.edge_count())
    throw DomainError("corrupt_adversarial expects a bare planted clique");
  detail::check_fraction(adv.delta1, "delta1");
  detail::check_fraction(adv.delta2, "delta2");
  if (adv.r < 0 || adv.s < 0) throw DomainError("budgets r, s must be >= 0");

  const long long del_cap = detail::degree_cap(adv.delta1, k);
  const long long max_s = max_adversarial_deletions(k, adv.delta1);
  if (adv.s > max_s)
    throw BudgetError("s=" + std::to_string(adv.s) +
                      " deletions exceed the per-node cap allowance " +
                      std::to_string(max_s));
  const long long att_cap = detail::degree_cap(adv.delta2, k);
  const long long max_r = static_cast<long long>(n - k) * att_cap;
  if (adv.r > max_r)
    throw BudgetError("r=" + std::to_string(adv.r) +
                      " additions exceed the attachment capacity " +
                      std::to_string(max_r));

  CounterRng rng(derive_key(seed, {2}));
  std::vector<int> order(vstar.begin(), vstar.end());
  detail::shuffle(order, rng);
  std::vector<int> outside;
  for (int j = 0; j < n; ++j)
    if (!clean.planted.contains(j)) outside.push_back(j);
  detail::shuffle(outside, rng);

  Mask a = g.adjacency();
  auto at = [&order](long long i) { return order[static_cast<std::size_t>(i)]; };

  // Circulant deletions: offset d removes (i, i+d) for every position i,
  // adding 2 to every node's deletion degree; an odd cap finishes with a
  // matching. Every prefix respects the cap.
  std::vector<Edge> deletions;
  for (long long d = 1; d <= del_cap / 2; ++d)
    for (long long i = 0; i < k; ++i) deletions.push_back({at(i), at((i + d) % k)});
  if (del_cap % 2 == 1) {
    if (k % 2 == 0) {
      for (long long i = 0; i < k / 2; ++i) deletions.push_back({at(i), at(i + k / 2)});
    } else {
      // Offset (k-1)/2 traces a Hamiltonian cycle; take every other edge.
      const long long m = (k - 1) / 2;
      for (long long t = 0; t + 1 < k; t += 2)
        deletions.push_back({at(t * m % k), at((t + 1) * m % k)});
    }
  }
  for (long long i = 0; i < adv.s; ++i) {
    const Edge& e = deletions[static_cast<std::size_t>(i)];
    a(e.u, e.v) = a(e.v, e.u) = false;
  }

  // Round t attaches every outside node to its t-th planted target.
  long long added = 0;
  for (long long t = 0; t < att_cap && added < adv.r; ++t)
    for (std::size_t o = 0; o < outside.size() && added < adv.r; ++o) {
      const int u = outside[o];
      const int v = at((static_cast<long long>(o) * att_cap + t) % k);
      a(u, v) = a(v, u) = true;
      ++added;
    }

  PlantedInstance out{Graph::from_adjacency(a), clean.planted, clean.params,
                      adv, seed};
  return out;
}

/// Bipartite analogue of corrupt_adversarial on a planted biclique.
/// Deletions walk the diagonals of the planted block under both per-side caps;
/// additions attach outside nodes round-robin under the beta caps.
inline PlantedBipartiteInstance corrupt_adversarial_bipartite(
    const PlantedBipartiteInstance& clean, const BipartiteAdversarialParams& adv,
    std::uint64_t seed) {
  const BipartiteGraph& g = clean.graph;
  const int k1 = clean.planted_u.size(), k2 = clean.planted_v.size();
  if (g.edge_count() != static_cast<long long>(k1) * k2 ||
      induced_edge_count(g, clean.planted_u, clean.planted_v) != g.edge_count())
    throw DomainError("corrupt_adversarial_bipartite expects a bare biclique");
  for (double f : {adv.alpha1, adv.alpha2, adv.beta1, adv.beta2})
    detail::check_fraction(f, "alpha/beta");
  if (adv.r < 0 || adv.s < 0) throw DomainError("budgets r, s must be >= 0");

  CounterRng rng(derive_key(seed, {2}));
  std::vector<int> us = clean.planted_u.members(), vs = clean.planted_v.members();
  detail::shuffle(us, rng);
  detail::shuffle(vs, rng);

  const long long cap_v = detail::degree_cap(adv.alpha1, k1);  // losses per V* node
  const long long cap_u = detail::degree_cap(adv.alpha2, k2);  // losses per U* node
  std::vector<long long> lost_u(static_cast<std::size_t>(k1), 0),
      lost_v(static_cast<std::size_t>(k2), 0);
  std::vector<Edge> deletions;
  for (int d = 0; d < k2; ++d)
    for (int i = 0; i < k1; ++i) {
      const int j = (i + d) % k2;
      auto& lu = lost_u[static_cast<std::size_t>(i)];
      auto& lv = lost_v[static_cast<std::size_t>(j)];
      if (lu < cap_u && lv < cap_v) {
        deletions.push_back({us[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]});
        ++lu;
        ++lv;
      }
    }
  if (adv.s > static_cast<long long>(deletions.size()))
    throw BudgetError("s=" + std::to_string(adv.s) +
                      " deletions exceed the per-node cap allowance " +
                      std::to_string(deletions.size()));

  std::vector<int> out_u, out_v;
  for (int u = 0; u < g.n1(); ++u)
    if (!clean.planted_u.contains(u)) out_u.push_back(u);
  for (int v = 0; v < g.n2(); ++v)
    if (!clean.planted_v.contains(v)) out_v.push_back(v);
  detail::shuffle(out_u, rng);
  detail::shuffle(out_v, rng);
  const long long att_v = detail::degree_cap(adv.beta1, k1);
  const long long att_u = detail::degree_cap(adv.beta2, k2);
  const long long max_r = static_cast<long long>(out_v.size()) * att_v +
                          static_cast<long long>(out_u.size()) * att_u;
  if (adv.r > max_r)
    throw BudgetError("r=" + std::to_string(adv.r) +
                      " additions exceed the attachment capacity " +
                      std::to_string(max_r));

  Mask b = g.biadjacency();
  for (long long i = 0; i < adv.s; ++i) {
    const Edge& e = deletions[static_cast<std::size_t>(i)];
    b(e.u, e.v) = false;
  }
  long long added = 0;
  for (long long t = 0; added < adv.r && (t < att_v || t < att_u); ++t) {
    for (std::size_t o = 0; t < att_v && o < out_v.size() && added < adv.r; ++o, ++added)
      b(us[static_cast<std::size_t>((static_cast<long long>(o) * att_v + t) % k1)],
        out_v[o]) = true;
    for (std::size_t o = 0; t < att_u && o < out_u.size() && added < adv.r; ++o, ++added)
      b(out_u[o],
        vs[static_cast<std::size_t>((static_cast<long long>(o) * att_u + t) % k2)]) = true;
  }
  return {BipartiteGraph::from_biadjacency(b), clean.planted_u, clean.planted_v,
          clean.params, adv, seed};
}

}  // namespace dks

#endif  // DKS_PLANTED_HPP_
