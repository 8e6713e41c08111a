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

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "references.hpp"
#include "sirw/rng.hpp"
#include "sirw/stats.hpp"

TEST_CASE("xoshiro256** reproduces for equal seeds and differs otherwise") {
  sirw::Rng a(42), b(42), c(43);
  for (int k = 0; k < 1000; ++k) {
    const auto x = a();
    CHECK(x == b());
    (void)c();
  }
  sirw::Rng d(42), e(43);
  CHECK(d() != e());
}

TEST_CASE("stream seeds are distinct across paths and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t v = 0; v < 3; ++v) {
    for (std::uint64_t g = 0; g < 20; ++g) {
      for (std::uint64_t r = 0; r < 50; ++r) seen.insert(sirw::derive_seed(7, {v, g, r}));
    }
  }
  CHECK(seen.size() == 3 * 20 * 50);
  CHECK(sirw::derive_seed(7, {1, 2}) == sirw::derive_seed(7, {1, 2}));
  CHECK(sirw::derive_seed(7, {1, 2}) != sirw::derive_seed(7, {2, 1}));
  CHECK(sirw::derive_seed(7, {}) != sirw::derive_seed(8, {}));
}

TEST_CASE("uniform lies in [0, 1) with the right mean") {
  sirw::Rng rng(1);
  std::vector<double> xs;
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    xs.push_back(u);
  }
  CHECK(std::abs(sirw::mean(xs) - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / 1e5) + 1e-3);
}

TEST_CASE("sampler edge cases") {
  sirw::Rng rng(3);
  CHECK(rng.binomial(10, 0.0) == 0);
  CHECK(rng.binomial(10, 1.0) == 10);
  CHECK(rng.binomial(10, 2.0) == 10);
  CHECK(rng.binomial(0, 0.5) == 0);
  CHECK(rng.poisson(0.0) == 0);
  CHECK(rng.poisson(-1.0) == 0);
  for (int k = 0; k < 100; ++k) CHECK(rng.index(1) == 0);
}

TEST_CASE("binomial and poisson sample means") {
  sirw::Rng rng(11);
  const int draws = 20000;
  std::vector<double> b, p;
  for (int k = 0; k < draws; ++k) {
    b.push_back(static_cast<double>(rng.binomial(1000, 0.004)));
    p.push_back(static_cast<double>(rng.poisson(2.5)));
  }
  CHECK(std::abs(sirw::mean(b) - 4.0) < 4.0 * std::sqrt(1000 * 0.004 * 0.996 / draws));
  CHECK(std::abs(sirw::mean(p) - 2.5) < 4.0 * std::sqrt(2.5 / draws));
  CHECK(std::abs(sirw::sample_variance(p) - 2.5) < 0.15);
}

TEST_CASE("exponential mean is one") {
  sirw::Rng rng(5);
  std::vector<double> xs;
  for (int k = 0; k < 50000; ++k) xs.push_back(rng.exponential());
  CHECK(std::abs(sirw::mean(xs) - 1.0) < 4.0 / std::sqrt(50000.0));
}

TEST_CASE("summary statistics agree with naive formulas") {
  sirw::Rng rng(9);
  std::vector<double> xs;
  for (int k = 0; k < 1001; ++k) xs.push_back(rng.uniform() * 3.0 - 1.0);
  CHECK(sirw::mean(xs) == doctest::Approx(sirw_test::naive_mean(xs)).epsilon(1e-14));
  CHECK(sirw::sample_variance(xs) ==
        doctest::Approx(sirw_test::naive_variance(xs)).epsilon(1e-12));
  CHECK(sirw::standard_error(xs) ==
        doctest::Approx(std::sqrt(sirw_test::naive_variance(xs) / 1001.0)).epsilon(1e-12));
  CHECK(sirw::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(sirw::median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(sirw::sample_variance(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("pairwise sum is exact on integers and order-stable") {
  std::vector<double> xs;
  for (int k = 1; k <= 10000; ++k) xs.push_back(static_cast<double>(k));
  CHECK(sirw::pairwise_sum(xs) == 50005000.0);
  CHECK(sirw::pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("KS statistic matches brute force, including ties") {
  sirw::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a, b;
    const int na = 30 + trial, nb = 45 - trial;
    for (int k = 0; k < na; ++k) a.push_back(static_cast<double>(rng.index(8)));
    for (int k = 0; k < nb; ++k) b.push_back(static_cast<double>(rng.index(10)));
    CHECK(sirw::ks_statistic(a, b) == doctest::Approx(sirw_test::ks_brute_force(a, b)));
  }
  CHECK(sirw::ks_statistic({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK(sirw::ks_statistic({0.0, 0.0}, {1.0, 1.0}) == 1.0);
}

TEST_CASE("KS critical value") {
  // c(0.01) = sqrt(-ln(0.005) / 2) = 1.6276...
  const double c = std::sqrt(-0.5 * std::log(0.005));
  CHECK(c == doctest::Approx(1.62762).epsilon(1e-5));
  CHECK(sirw::ks_critical_value(0.01, 2000, 2000) ==
        doctest::Approx(c * std::sqrt(4000.0 / (2000.0 * 2000.0))));
}
