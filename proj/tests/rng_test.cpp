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

#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "dks/rng.hpp"

namespace dks {
namespace {

TEST(CounterRng, SameKeySameStream) {
  CounterRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(CounterRng, CounterAddressesTheStream) {
  CounterRng a(7);
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 20; ++i) first.push_back(a());
  CounterRng b(7, 13);
  EXPECT_EQ(b(), first[13]);
}

TEST(DeriveKey, DistinctPathsGiveDistinctKeys) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t p = 0; p < 5; ++p)
    for (std::uint64_t k = 0; k < 7; ++k)
      for (std::uint64_t t = 0; t < 10; ++t) keys.insert(derive_key(1, {p, k, t}));
  EXPECT_EQ(keys.size(), 5u * 7u * 10u);
  EXPECT_NE(derive_key(1, {0, 1}), derive_key(1, {1, 0}));
  EXPECT_NE(derive_key(1, {0}), derive_key(2, {0}));
  EXPECT_EQ(derive_key(9, {3, 4}), derive_key(9, {3, 4}));
}

TEST(CounterRng, UniformMomentsAndRange) {
  CounterRng g(123);
  const int draws = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double u = g.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  // Standard errors are about 6.5e-4 for the mean and 6.7e-4 for E[u^2].
  EXPECT_NEAR(sum / draws, 0.5, 4e-3);
  EXPECT_NEAR(sq / draws, 1.0 / 3.0, 4e-3);
}

TEST(CounterRng, BelowIsUniform) {
  CounterRng g(99);
  const int bins = 7, draws = 70000;
  std::vector<int> count(bins, 0);
  for (int i = 0; i < draws; ++i) {
    const auto x = g.below(bins);
    ASSERT_LT(x, static_cast<std::uint64_t>(bins));
    ++count[x];
  }
  double chi2 = 0.0;
  const double expect = static_cast<double>(draws) / bins;
  for (int c : count) chi2 += (c - expect) * (c - expect) / expect;
  // 6 degrees of freedom; P(chi2 > 22.5) < 1e-3.
  EXPECT_LT(chi2, 22.5);
}

TEST(CounterRng, BernoulliEdgeCases) {
  CounterRng g(5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(g.bernoulli(0.0));
    EXPECT_TRUE(g.bernoulli(1.0));
  }
}

}  // namespace
}  // namespace dks
