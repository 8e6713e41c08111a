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

#include "sirw/rng.hpp"

#include <cmath>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace sirw {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> path) noexcept {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  for (const auto component : path) {
    state = h ^ (component + 0x632be59bd9b4e019ULL);
    h = splitmix64(state);
  }
  return h;
}

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

double Rng::exponential() noexcept {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  return -std::log(1.0 - uniform());
}

std::int64_t Rng::index(std::int64_t bound) {
  boost::random::uniform_int_distribution<std::int64_t> dist(0, bound - 1);
  return dist(*this);
}

std::int64_t Rng::binomial(std::int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  boost::random::binomial_distribution<std::int64_t, double> dist(trials, p);
  return dist(*this);
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  boost::random::poisson_distribution<std::int64_t, double> dist(mean);
  return dist(*this);
}

}  // namespace sirw
