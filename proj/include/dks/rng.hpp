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

#ifndef DKS_RNG_HPP_
#define DKS_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace dks {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream key from a master seed and a list of indices, e.g.
/// (master_seed, p_index, k_index, trial_index) for one phase-grid trial.
/// Distinct index tuples give unrelated keys.
inline std::uint64_t derive_key(std::uint64_t master,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(master);
  for (std::uint64_t idx : path) key = mix64(key ^ mix64(idx + 0x632be59bd9b4e019ULL));
  return key;
}

/// Counter-based 64-bit generator: the i-th output of stream `key` is
/// mix64(key + i * golden), so any output is addressable without replaying
/// the stream and two keys never share state.
///
/// Streams used by the generators (index appended to the instance seed):
///   0 - edge coin flips, 1 - node permutation (U side for bipartite),
///   2 - adversarial ordering, 3 - V-side permutation.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace dks

#endif  // DKS_RNG_HPP_
