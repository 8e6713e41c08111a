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
#include <limits>
#include <vector>

#include "references.hpp"
#include "sirw/error.hpp"
#include "sirw/ode.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"

using sirw::ModelParams;
using sirw::Transition;

namespace {

ModelParams mk(double lambda, double gamma, double omega, double alpha, double mu) {
  return {lambda, gamma, omega, alpha, mu, 1000};
}

Transition cls(double gamma, double omega, double alpha, double mu) {
  return sirw::classify_transition(mk(1.0, gamma, omega, alpha, mu)).classification;
}

sirw::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const sirw::Error& e) {
    return e.code();
  }
  return sirw::ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("critical rate") {
  CHECK(sirw::lambda_c(mk(1, 1, 4, 1, 5)) == 1.25);
  CHECK(sirw::lambda_c(mk(1, 0.7, 0, 0.3, 4.5)) == 0.7 / 3.5);
  CHECK(sirw::lambda_c(mk(1, 1, 0, 0, 2)) == 1.0);
  CHECK(code_of([] { sirw::lambda_c(mk(1, 1, 4, 1, 1)); }) == sirw::ErrorCode::kDomain);
  CHECK(code_of([] { sirw::lambda_c(mk(1, 1, 4, 1, 0.5)); }) == sirw::ErrorCode::kDomain);
}

TEST_CASE("transition truth table") {
  CHECK(cls(1, 4, 1, 5) == Transition::kDiscontinuous);
  const auto r = sirw::classify_transition(mk(2.5, 1, 4, 1, 5));
  CHECK(r.triggering_clause.find("mu > 2 omega alpha") != std::string::npos);
  CHECK_FALSE(r.bb_sufficient_continuity);

  sirw::Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const double g = 0.01 + 3.0 * rng.uniform();
    const double w = 10.0 * rng.uniform();
    const double mu = 1.01 + 20.0 * rng.uniform();
    CHECK(cls(g, w, 0.5, mu) == Transition::kContinuous);
    CHECK(cls(g, w, 0.0, mu) == Transition::kContinuous);
    CHECK(sirw::classify_transition(mk(1, g, w, 0.0, mu)).bb_sufficient_continuity);
  }
  // omega (2 alpha - 1) = gamma exactly.
  CHECK(cls(1, 2, 0.75, 50) == Transition::kContinuous);
  // mu = 2 omega alpha / (omega (2 alpha - 1) - gamma) exactly: 4 = 4 / 1.
  CHECK(cls(1, 2, 1, 4) == Transition::kContinuous);
  CHECK(cls(1, 2, 1, 4.000001) == Transition::kDiscontinuous);
}

TEST_CASE("gamma = 0 is flagged") {
  CHECK(sirw::classify_transition(mk(1, 0, 4, 1, 5)).gamma_zero_flag);
  CHECK_FALSE(sirw::classify_transition(mk(1, 1, 4, 1, 5)).gamma_zero_flag);
}

TEST_CASE("classification is invariant under rate rescaling") {
  sirw::Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    const double g = 0.05 + 2.0 * rng.uniform();
    const double w = 8.0 * rng.uniform();
    const double a = rng.uniform();
    const double mu = 1.2 + 10.0 * rng.uniform();
    const double l = 0.1 + 3.0 * rng.uniform();
    const double c = std::exp(4.0 * rng.uniform() - 2.0);
    const auto base = sirw::classify_transition(mk(l, g, w, a, mu));
    const auto scaled = sirw::classify_transition(mk(c * l, c * g, c * w, a, mu));
    CHECK(base.classification == scaled.classification);
    CHECK(base.bb_sufficient_continuity == scaled.bb_sufficient_continuity);
    CHECK(scaled.lambda_c / c == doctest::Approx(base.lambda_c).epsilon(1e-13));
    CHECK(scaled.f0 == doctest::Approx(base.f0).epsilon(1e-12));
    CHECK(scaled.fprime0 == doctest::Approx(base.fprime0).epsilon(1e-12));
  }
}

TEST_CASE("F at the origin") {
  const auto p = mk(2.5, 1, 4, 1, 5);
  const auto f = sirw::f_function(0.0, p);
  CHECK(f.f == doctest::Approx(-1.0 - 5.0 / 2.5 + 5.0));
  CHECK(f.fprime == doctest::Approx(-5.0 + 2.0 * 4.0 / 2.5));
  CHECK(f.fsecond == doctest::Approx(-2.0 * 4.0 / 2.5));
  // At the critical rate F(0) vanishes.
  for (const auto& q : {mk(1.25, 1, 4, 1, 5), mk(0.5, 1, 0.5, 0.5, 4), mk(1.0, 1, 0, 0, 2)}) {
    CHECK(std::abs(sirw::f_function(0.0, q).f) <= 4.0 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("F derivatives") {
  const auto p = mk(1.7, 0.8, 3.0, 0.6, 4.0);
  for (double s0 : {1.0, 0.9}) {
    for (double t : {0.05, 0.3, 0.6}) {
      const double h = 1e-5;
      const auto mid = sirw::f_function(t, p, s0);
      const auto lo = sirw::f_function(t - h, p, s0);
      const auto hi = sirw::f_function(t + h, p, s0);
      CHECK(mid.fprime == doctest::Approx((hi.f - lo.f) / (2 * h)).epsilon(1e-7));
      CHECK(mid.fsecond == doctest::Approx((hi.fprime - lo.fprime) / (2 * h)).epsilon(1e-6));
      const double s = s0 - t;
      const double k = 3.0 * 0.6 / 1.7;
      CHECK(mid.fprime == doctest::Approx(-4.0 + 2.0 * k * (1.0 - std::log(s0 / s))));
      CHECK(mid.fsecond == doctest::Approx(-2.0 * k / s));
    }
  }
  for (double t : {0.0, 0.4, 0.8}) CHECK(sirw::f_function(t, mk(2, 1, 4, 0, 5)).fsecond == 0.0);
  CHECK_THROWS_AS(sirw::f_function(1.0, p), sirw::Error);
}

TEST_CASE("outbreak probability") {
  using sirw::OutbreakModel;
  const auto evo = mk(2.5, 1, 4, 1, 5);
  const double q = sirw::outbreak_probability(evo, OutbreakModel::kEvoSir);
  CHECK(q == doctest::Approx(0.67575673358).epsilon(1e-10));
  CHECK(std::abs(q - sirw_test::fixed_point_survival(5.0 / 3.0)) < 1e-10);
  CHECK(sirw::outbreak_probability(mk(1.25, 1, 4, 1, 5), OutbreakModel::kEvoSir) == 0.0);
  CHECK(sirw::outbreak_probability(mk(1.0, 1, 4, 1, 5), OutbreakModel::kEvoSir) == 0.0);
  CHECK(sirw::survival_probability(50.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sirw::survival_probability(1.0) == 0.0);
  const double stat = sirw::outbreak_probability(mk(2, 1, 0, 0, 5), OutbreakModel::kStaticSir);
  CHECK(std::abs(stat - sirw_test::fixed_point_survival(10.0 / 3.0)) < 1e-10);
  CHECK(code_of([] {
          sirw::outbreak_probability(mk(2.5, 1, 4, 0.5, 5), sirw::OutbreakModel::kEvoSir);
        }) == sirw::ErrorCode::kUnsupported);
  sirw::Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const double m = 1.0 + 6.0 * rng.uniform();
    CHECK(std::abs(sirw::survival_probability(m) - sirw_test::fixed_point_survival(m)) < 1e-9);
  }
}

TEST_CASE("jump profile: continuous and discontinuous examples") {
  const std::vector<double> deltas{0.1, 0.01, 0.001};
  const auto half = sirw::jump_profile(mk(1, 1, 4, 0.5, 5), deltas);
  REQUIRE(half.rows.size() == 3);
  CHECK(half.rows[0].t_star > half.rows[1].t_star);
  CHECK(half.rows[1].t_star > half.rows[2].t_star);
  CHECK(half.rows[2].t_star < 0.02);
  CHECK(half.verdict == sirw::JumpVerdict::kTrendsToZero);
  // Values fixed with the independent reference integrator.
  CHECK(std::abs(half.rows[0].t_star - 0.312369849067) < 1e-6);
  CHECK(std::abs(half.rows[1].t_star - 0.042495662127) < 1e-6);
  CHECK(std::abs(half.rows[2].t_star - 0.004423822289) < 1e-6);

  const auto evo = sirw::jump_profile(mk(1, 1, 4, 1, 5), deltas);
  CHECK(evo.rows[2].t_star > 0.05);
  CHECK(evo.verdict == sirw::JumpVerdict::kBoundedAway);
  CHECK(std::abs(evo.rows[0].t_star - 0.806551677095) < 1e-6);
  CHECK(std::abs(evo.rows[1].t_star - 0.656426093416) < 1e-6);
  CHECK(std::abs(evo.rows[2].t_star - 0.624499630711) < 1e-6);
  CHECK(evo.rows[0].lambda == doctest::Approx(1.375));
}

TEST_CASE("jump profile rejects a zero offset") {
  CHECK(code_of([] { sirw::jump_profile(mk(1, 1, 4, 1, 5), {0.1, 0.0}); }) ==
        sirw::ErrorCode::kDomain);
  CHECK(code_of([] { sirw::jump_profile(mk(1, 1, 4, 1, 5), {}); }) ==
        sirw::ErrorCode::kInvalidArgument);
}

TEST_CASE("jump verdict agrees with the classifier across both regimes") {
  // Close to the classification boundary t_* falls slowly with delta, so the
  // profile is taken down to 1e-5.
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  int sets = 0, discontinuous = 0;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double mu : {3.0, 5.0, 8.0}) {
      for (double w : {1.0, 4.0}) {
        const auto p = mk(1.0, 1.0, w, a, mu);
        const auto c = sirw::classify_transition(p).classification;
        const auto v = sirw::jump_profile(p, deltas).verdict;
        CAPTURE(a);
        CAPTURE(mu);
        CAPTURE(w);
        CHECK((c == Transition::kDiscontinuous) == (v == sirw::JumpVerdict::kBoundedAway));
        ++sets;
        discontinuous += c == Transition::kDiscontinuous ? 1 : 0;
      }
    }
  }
  CHECK(sets >= 20);
  CHECK(discontinuous > 0);
  CHECK(discontinuous < sets);
}
