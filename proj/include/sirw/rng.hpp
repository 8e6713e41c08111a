// Copyright 2026 The sirw Authors.
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

#ifndef SIRW_RNG_HPP_
#define SIRW_RNG_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace sirw {

// SplitMix64 finaliser (Steele, Lea & Flood 2014). Used for seeding and
// for hashing (master_seed, index...) paths into independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Seed for the stream identified by `path` under `master`. Equal inputs give
// equal seeds on every platform.
std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> path) noexcept;
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) noexcept {
  return derive_seed(master, std::span<const std::uint64_t>(path.begin(), path.size()));
}

// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
//
// Satisfies UniformRandomBitGenerator. Continuous variates are produced by
// this class directly; discrete ones go through Boost.Random distribution
// objects, whose algorithms live in headers and therefore do not vary with
// the standard library in use.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Exp(1) by inversion.
  double exponential() noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

  // Uniform integer in [0, bound). bound must be positive.
  std::int64_t index(std::int64_t bound);

  // Binomial(trials, p); p is clamped to [0, 1].
  std::int64_t binomial(std::int64_t trials, double p);

  // Poisson(mean); mean <= 0 gives 0.
  std::int64_t poisson(double mean);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace sirw

#endif  // SIRW_RNG_HPP_
