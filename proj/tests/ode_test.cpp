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

#include <algorithm>
#include <cmath>
#include <vector>

#include "ode_reference.hpp"
#include "sirw/error.hpp"
#include "sirw/ode.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"

using sirw::HatInitial;
using sirw::ModelParams;

namespace {

// t_* values fixed with the Boost.Odeint reference at rel_tol 1e-10.
constexpr double kEvoT = 0.963696907208;          // mu 5, omega 4, gamma 1, alpha 1, lambda 2.5
constexpr double kDelT2 = 0.533003577782;         // alpha 0, lambda 2
constexpr double kDelT1875 = 0.481102416831;      // alpha 0, lambda 1.875
constexpr double kDelT1375 = 0.141839827244;      // alpha 0, lambda 1.375
constexpr double kDelT12625 = 0.015799647350;     // alpha 0, lambda 1.2625
constexpr double kHalfT1875 = 0.719746280616;     // alpha 0.5, lambda 1.875
constexpr double kEvoContT = 0.602151261280;      // mu 4, omega 0.5, gamma 1, alpha 1, lambda 0.75
constexpr double kPositiveT = 0.559347833620;     // alpha 0.05, lambda 2, (0.95, 0.05, 0.2375)
constexpr double kFrozenTol = 1e-6;

ModelParams fig(double alpha, double lambda) { return {lambda, 1.0, 4.0, alpha, 5.0, 100000}; }

}  // namespace

TEST_CASE("w closed form") {
  CHECK(sirw::w_closed_form(0.0, 1.0, fig(1.0, 2.0)) == 0.0);
  for (double t : {0.1, 0.5, 0.9}) CHECK(sirw::w_closed_form(t, 1.0, fig(0.0, 2.0)) == 0.0);
  const double t = 1.0 - std::exp(-1.0);
  CHECK(sirw::w_closed_form(t, 1.0, fig(1.0, 2.0)) ==
        doctest::Approx(0.2706705664732254).epsilon(1e-13));
  CHECK_THROWS_AS(sirw::w_closed_form(1.0, 1.0, fig(1.0, 2.0)), sirw::Error);
  CHECK_THROWS_AS(sirw::w_closed_form(-0.1, 1.0, fig(1.0, 2.0)), sirw::Error);
}

TEST_CASE("zero start follows the linear expansion") {
  const auto sol = sirw::solve_hat(fig(1.0, 2.5), HatInitial::zero());
  REQUIRE(sol.size() > 2);
  CHECK(sol.grid[0] == 0.0);
  CHECK(sol.i[0] == 0.0);
  CHECK(sol.ie[0] == 0.0);
  // ie'(0) = mu - 1 - (gamma + omega) / lambda = 2.
  const double a = 2.5 * 2.0 / (2.5 * 2.0 + 1.0);
  CHECK(sol.die[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sol.di[0] == doctest::Approx(a).epsilon(1e-12));
  CHECK(sol.grid[1] > 0.0);
  CHECK(sol.grid[1] <= 1e-6);
  CHECK(sol.ie[1] / sol.grid[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(sol.i[1] / sol.grid[1] == doctest::Approx(a).epsilon(1e-5));
}

TEST_CASE("s equals s0 - t on the grid exactly") {
  for (const auto& init : {HatInitial::zero(), HatInitial::positive(0.95, 0.05, 0.2375)}) {
    const auto sol = sirw::solve_hat(fig(0.05, 2.0), init);
    for (std::size_t k = 0; k < sol.size(); ++k) REQUIRE(sol.s[k] == sol.s0 - sol.grid[k]);
  }
}

TEST_CASE("frozen t_* values") {
  struct Case {
    ModelParams p;
    HatInitial init;
    double t;
  };
  const std::vector<Case> cases = {
      {fig(1.0, 2.5), HatInitial::zero(), kEvoT},
      {fig(0.0, 2.0), HatInitial::zero(), kDelT2},
      {fig(0.0, 1.875), HatInitial::zero(), kDelT1875},
      {fig(0.0, 1.375), HatInitial::zero(), kDelT1375},
      {fig(0.0, 1.2625), HatInitial::zero(), kDelT12625},
      {fig(0.5, 1.875), HatInitial::zero(), kHalfT1875},
      {{0.75, 1.0, 0.5, 1.0, 4.0, 100000}, HatInitial::zero(), kEvoContT},
      {fig(0.05, 2.0), HatInitial::positive(0.95, 0.05, 0.2375), kPositiveT},
  };
  for (const auto& c : cases) {
    CAPTURE(c.p.lambda);
    CAPTURE(c.p.alpha);
    CHECK(std::abs(sirw::solve_hat(c.p, c.init).t_star - c.t) < kFrozenTol);
  }
}

TEST_CASE("delSIR t_* shrinks toward lambda_c") {
  const double a = sirw::solve_hat(fig(0.0, 1.2625), HatInitial::zero()).t_star;
  const double b = sirw::solve_hat(fig(0.0, 1.375), HatInitial::zero()).t_star;
  const double c = sirw::solve_hat(fig(0.0, 1.875), HatInitial::zero()).t_star;
  CHECK(a < b);
  CHECK(b < c);
  CHECK(a < 0.1);
}

TEST_CASE("solver agrees with the independent reference on random inputs") {
  sirw::Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 12; ++trial) {
    const double mu = 2.0 + 6.0 * rng.uniform();
    const double gamma = 0.2 + 1.5 * rng.uniform();
    const double omega = 3.0 * rng.uniform();
    const double alpha = rng.uniform();
    const ModelParams probe{1.0, gamma, omega, alpha, mu, 1000};
    const double lc = sirw::lambda_c(probe);
    const double lambda = lc * (1.1 + 2.0 * rng.uniform());
    const ModelParams p{lambda, gamma, omega, alpha, mu, 1000};
    const auto mine = sirw::solve_hat(p, HatInitial::zero());
    const auto ref = sirw_test::reference_t_star({lambda, gamma, omega, alpha, mu}, 1.0, 0.0, 0.0);
    CAPTURE(mu);
    CAPTURE(alpha);
    CAPTURE(lambda);
    CHECK(std::abs(mine.t_star - ref.t_star) < 1e-6);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("final size limit") {
  const auto p = fig(0.05, 2.0);
  const auto z = sirw::solve_hat(p, HatInitial::zero());
  CHECK(sirw::final_size_limit(p, HatInitial::zero()) == z.t_star);
  const auto init = HatInitial::from(sirw::InitialCondition::positive(0.05), p);
  CHECK(init.s0 == doctest::Approx(0.95));
  CHECK(init.i0 == doctest::Approx(0.05));
  CHECK(init.ie0 == doctest::Approx(0.05 * 0.95 * 5.0));
  const auto sol = sirw::solve_hat(p, init);
  CHECK(sirw::final_size_limit(p, init) == doctest::Approx(0.05 + sol.t_star).epsilon(1e-15));
}

TEST_CASE("zero start requires a supercritical rate") {
  try {
    sirw::solve_hat(fig(1.0, 1.25), HatInitial::zero());
    FAIL("expected an error");
  } catch (const sirw::Error& e) {
    CHECK(std::string(e.what()).find("zero IC requires supercritical lambda") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(sirw::solve_hat(fig(1.0, 1.0), HatInitial::zero()), sirw::Error);
}

TEST_CASE("invalid positive starts are rejected") {
  CHECK_THROWS_AS(sirw::solve_hat(fig(1.0, 2.0), HatInitial::positive(0.95, 0.0, 0.1)),
                  sirw::Error);
  CHECK_THROWS_AS(sirw::solve_hat(fig(1.0, 2.0), HatInitial::positive(0.95, 0.05, 0.0)),
                  sirw::Error);
  CHECK_THROWS_AS(sirw::solve_hat(fig(1.0, 2.0), HatInitial::positive(0.99, 0.05, 0.1)),
                  sirw::Error);
}

TEST_CASE("solution invariants") {
  const std::vector<ModelParams> sets = {fig(1.0, 2.5), fig(0.0, 2.0), fig(0.5, 1.875),
                                         {0.75, 1.0, 0.5, 1.0, 4.0, 1000},
                                         {3.0, 0.5, 2.0, 0.3, 3.0, 1000}};
  for (const auto& p : sets) {
    const auto sol = sirw::solve_hat(p, HatInitial::zero());
    CHECK(sol.t_star > 0.0);
    CHECK(sol.t_star < sol.s0);
    CHECK(sol.f_at_tstar <= 1e-8);
    CHECK(sol.startup_discrepancy < 10.0 * 1e-8);
    for (std::size_t k = 0; k < sol.size(); ++k) {
      REQUIRE(sol.i[k] >= 0.0);
      REQUIRE(sol.i[k] <= sol.grid[k] + 1e-12);
      if (sol.grid[k] > 0.0 && sol.grid[k] < sol.t_star) REQUIRE(sol.ie[k] > 0.0);
    }
    CHECK(sol.ie.back() <= 1e-10);
    CHECK(sol.grid.back() == sol.t_star);
    CHECK(sol.final_size_fraction == sol.t_star);
  }
}

TEST_CASE("interpolation reproduces the grid and the closed forms") {
  const auto sol = sirw::solve_hat(fig(1.0, 2.5), HatInitial::zero());
  for (std::size_t k = 0; k < sol.size(); k += 7) {
    const auto x = sol.at(sol.grid[k]);
    CHECK(x.i == doctest::Approx(sol.i[k]).epsilon(1e-12));
    CHECK(x.ie == doctest::Approx(sol.ie[k]).epsilon(1e-12));
    CHECK(x.s == sol.s0 - sol.grid[k]);
  }
  const double t = 0.3;
  CHECK(sol.at(t).w == doctest::Approx(sirw::w_closed_form(t, 1.0, fig(1.0, 2.5))));
}

TEST_CASE("halving the step cap barely moves t_*") {
  sirw::OdeOptions coarse;
  coarse.max_step = 2e-3;
  sirw::OdeOptions fine = coarse;
  fine.max_step = 1e-3;
  for (const auto& p : {fig(1.0, 2.5), fig(0.0, 2.0), fig(0.5, 1.875)}) {
    const double a = sirw::solve_hat(p, HatInitial::zero(), coarse).t_star;
    const double b = sirw::solve_hat(p, HatInitial::zero(), fine).t_star;
    CHECK(std::abs(a - b) < 10.0 * coarse.rel_tol);
  }
}

TEST_CASE("comparison principle over ordered starting points") {
  sirw::Rng rng(77);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams p{0.5 + 3.0 * rng.uniform(), 0.2 + rng.uniform(), 3.0 * rng.uniform(),
                        rng.uniform(), 2.0 + 4.0 * rng.uniform(), 1000};
    const double s0 = 0.5 + 0.45 * rng.uniform();
    const double i_hi = (1.0 - s0) * (0.2 + 0.8 * rng.uniform());
    const double ie_hi = 0.02 + 0.5 * rng.uniform();
    const double i_lo = i_hi * (0.3 + 0.7 * rng.uniform());
    const double ie_lo = ie_hi * (0.3 + 0.7 * rng.uniform());
    const auto lo = sirw::solve_hat(p, HatInitial::positive(s0, i_lo, ie_lo));
    const auto hi = sirw::solve_hat(p, HatInitial::positive(s0, i_hi, ie_hi));
    if (lo.t_star > hi.t_star + 1e-8) ++violations;
    const double end = std::min(lo.t_star, hi.t_star);
    for (int k = 0; k <= 200; ++k) {
      const double t = std::min(end, end * k / 200.0);
      const auto a = lo.at(t);
      const auto b = hi.at(t);
      if (a.i > b.i + 1e-8 || a.ie > b.ie + 1e-8) {
        ++violations;
        break;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("natural system without infection decays") {
  const ModelParams p{0.0, 0.7, 1.0, 0.5, 3.0, 1000};
  const auto traj = sirw::solve_natural(p, {0.9, 0.1, 0.3, 0.0}, 5.0);
  for (double t : {0.0, 1.0, 2.5, 5.0}) {
    const auto x = traj.at(t);
    CHECK(x.s == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(x.i == doctest::Approx(0.1 * std::exp(-0.7 * t)).epsilon(1e-7));
  }
}

TEST_CASE("natural system below threshold loses infected edges monotonically") {
  const ModelParams p{1.0, 1.0, 4.0, 0.0, 5.0, 1000};  // lambda_c = 1.25
  const auto traj = sirw::solve_natural(p, {0.999, 0.001, 0.001, 0.0}, 20.0);
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    REQUIRE(traj.states[k].ie <= traj.states[k - 1].ie);
  }
  CHECK(traj.states.back().ie < 1e-4);
}

TEST_CASE("natural and time-changed solutions agree after reparametrisation") {
  const ModelParams p = fig(0.05, 2.0);
  const auto hat = sirw::solve_hat(p, HatInitial::positive(0.95, 0.05, 0.2375));
  const auto nat = sirw::solve_natural(p, {0.95, 0.05, 0.2375, 0.0}, 60.0);
  for (int k = 0; k <= 50; ++k) {
    const double u = 0.9 * hat.t_star * k / 50.0;
    const double tau = nat.time_when_s(0.95 - u);
    const auto x = nat.at(tau);
    const auto y = hat.at(u);
    CAPTURE(u);
    CHECK(std::abs(x.i - y.i) < 1e-6);
    CHECK(std::abs(x.ie - y.ie) < 1e-6);
    CHECK(std::abs(x.w - y.w) < 1e-6);
  }
}
