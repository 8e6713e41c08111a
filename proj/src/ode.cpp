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

#include "sirw/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>

#include "dopri.hpp"
#include "sirw/error.hpp"
#include "sirw/phase.hpp"

namespace sirw {

HatInitial HatInitial::from(const InitialCondition& init, const ModelParams& params) {
  if (init.kind == InitKind::kSingleSeed) return zero();
  const double i0 = init.i0_fraction;
  return positive(1.0 - i0, i0, i0 * (1.0 - i0) * params.mu);
}

double w_closed_form(double t, double s0, const ModelParams& params) {
  if (!(t >= 0.0 && t < s0)) {
    throw Error(ErrorCode::kDomain, "w closed form needs 0 <= t < s0", "t");
  }
  if (params.alpha == 0.0 || params.omega == 0.0 || t == 0.0) return 0.0;
  const double s = s0 - t;
  return params.omega * params.alpha / params.lambda * s * s * std::log(s0 / s);
}

namespace {

using HatState = std::array<double, 2>;  // (i, ie)

struct HatRhs {
  const ModelParams& p;
  double s0;
  double floor;

  bool operator()(double t, const HatState& y, HatState& dy) const {
    const double s = s0 - t;
    if (!(y[1] > floor) || !(s > 0.0) || !std::isfinite(y[0])) return false;
    eval(t, y, dy);
    return std::isfinite(dy[0]) && std::isfinite(dy[1]);
  }

  double ie_slope(double t, double i, double ie) const {
    const double s = s0 - t;
    const double w = w_closed_form(t, s0, p);
    return -1.0 - p.gamma / p.lambda + p.mu * s - ie / s + 2.0 * w / s -
           p.omega / p.lambda * (1.0 - p.alpha + p.alpha * (1.0 - i));
  }

  void eval(double t, const HatState& y, HatState& dy) const {
    dy[0] = -p.gamma / p.lambda * y[0] / y[1] + 1.0;
    dy[1] = ie_slope(t, y[0], y[1]);
  }
};

void validate_hat(const ModelParams& params, const HatInitial& init) {
  require_valid(params);
  if (!(params.lambda > 0.0)) {
    throw Error(ErrorCode::kDomain, "time-changed system requires lambda > 0", "lambda");
  }
  if (init.is_zero()) {
    if (init.s0 != 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "zero initial condition requires s0 = 1", "s0");
    }
    const double slope = params.mu - 1.0 - (params.gamma + params.omega) / params.lambda;
    if (!(params.mu > 1.0) || !(slope > 0.0)) {
      throw Error(ErrorCode::kDomain, "zero IC requires supercritical lambda", "lambda");
    }
    return;
  }
  if (!(init.i0 > 0.0 && init.i0 < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "positive initial condition needs i0 in (0,1)", "i0");
  }
  if (!(init.s0 > 0.0 && init.s0 <= 1.0 - init.i0)) {
    throw Error(ErrorCode::kInvalidArgument, "positive initial condition needs s0 in (0, 1 - i0]",
                "s0");
  }
  if (!(init.ie0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "positive initial condition needs ie0 > 0", "ie0");
  }
}

// Taylor coefficients at the origin under the zero condition:
// i = a t + d t^2, ie = b t + c t^2.
struct ZeroSeries {
  double a, b, c, d;
};

ZeroSeries zero_start_series(const ModelParams& p) {
  const double b = p.mu - 1.0 - (p.gamma + p.omega) / p.lambda;
  const double a = p.lambda * b / (p.lambda * b + p.gamma);
  const double k = p.omega * p.alpha / p.lambda;
  const double c = 0.5 * (-p.mu - b + 2.0 * k + k * a);
  const double d = p.gamma * a * c / (b * (2.0 * p.lambda * b + p.gamma));
  return {a, b, c, d};
}

// The series is only accurate for t << b / |c|, which shrinks as lambda
// approaches lambda_c.
double zero_start_offset(const ModelParams& p, double requested) {
  const auto series = zero_start_series(p);
  if (series.c == 0.0) return requested;
  return std::min(requested, 1e-2 * series.b / std::abs(series.c));
}

// Rough size of max ie under the zero condition (b^2 / |c|, capped at 1).
// Absolute tolerances and the singular floor are measured against it so
// that near-critical solutions, whose ie never exceeds O(b^2), are resolved.
double zero_start_scale(const ModelParams& p) {
  const auto series = zero_start_series(p);
  if (series.c == 0.0) return 1.0;
  return std::min(1.0, series.b * series.b / std::abs(series.c));
}

OdeSolution integrate_hat(const ModelParams& params, const HatInitial& init,
                          OdeOptions opt, double startup, double scale) {
  opt.abs_tol *= scale;
  opt.singular_floor *= scale;
  const double s0 = init.s0;
  const HatRhs rhs{params, s0, opt.singular_floor};
  const double max_step = opt.max_step > 0.0 ? opt.max_step : 1e-3 * s0;

  OdeSolution sol;
  sol.s0 = s0;
  sol.w_coefficient = params.omega * params.alpha / params.lambda;
  auto record = [&](double t, const HatState& y, const HatState& dy) {
    sol.grid.push_back(t);
    sol.s.push_back(s0 - t);
    sol.i.push_back(y[0]);
    sol.ie.push_back(y[1]);
    sol.w.push_back(w_closed_form(t, s0, params));
    sol.di.push_back(dy[0]);
    sol.die.push_back(dy[1]);
  };

  double t = 0.0;
  HatState y{init.i0, init.ie0};
  HatState dy{};
  double h = 0.0;
  if (init.is_zero()) {
    const auto series = zero_start_series(params);
    record(0.0, y, {series.a, series.b});
    t = startup;
    y = {startup * (series.a + series.d * startup), startup * (series.b + series.c * startup)};
    h = 0.1 * startup;
  } else {
    h = std::min(max_step, 1e-4 * s0);
  }
  if (!rhs(t, y, dy)) {
    throw Error(ErrorCode::kSolver, "initial point outside the domain of the system");
  }
  record(t, y, dy);

  double bracket_hi = s0;
  const double t_cap = s0 * (1.0 - 1e-12);
  long steps = 0;
  while (true) {
    if (++steps > opt.max_steps) {
      throw Error(ErrorCode::kSolver, "step budget exhausted before ie reached 0");
    }
    if (y[1] <= opt.abs_tol || bracket_hi - t <= opt.event_time_tol ||
        h < 1e-3 * opt.event_time_tol) {
      break;
    }
    if (t >= t_cap) {
      throw Error(ErrorCode::kSolver, "ie did not reach 0 before s reached 0");
    }
    h = std::min({h, max_step, 0.5 * (bracket_hi - t), 0.5 * (s0 - t)});

    const auto trial = detail::dopri_step<2>(rhs, t, y, dy, h, opt.rel_tol, opt.abs_tol);
    if (!trial.valid) {
      ++sol.rejected_steps;
      h *= 0.5;
      continue;
    }
    if (trial.error_norm > 1.0) {
      ++sol.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(trial.error_norm, -0.2));
      continue;
    }
    if (trial.y[1] <= 0.0) {
      // Accurate step that crosses zero: the crossing lies in (t, t + h].
      ++sol.rejected_steps;
      bracket_hi = t + h;
      h *= 0.5;
      continue;
    }
    t += h;
    y = trial.y;
    if (!rhs(t, y, dy)) {
      // ie dropped below the singular floor: treat as the zero.
      sol.grid.push_back(t);
      sol.s.push_back(s0 - t);
      sol.i.push_back(y[0]);
      sol.ie.push_back(y[1]);
      sol.w.push_back(w_closed_form(t, s0, params));
      const auto k = sol.di.size() - 1;
      sol.di.push_back((y[0] - sol.i[k]) / h);
      sol.die.push_back(rhs.ie_slope(t, y[0], y[1]));
      ++sol.accepted_steps;
      break;
    }
    record(t, y, dy);
    ++sol.accepted_steps;
    h *= detail::step_factor(trial.error_norm);
  }

  sol.t_star = sol.grid.back();
  sol.final_size_fraction = 1.0 - s0 + sol.t_star;
  sol.slope_at_tstar = rhs.ie_slope(sol.t_star, sol.i.back(), sol.ie.back());
  sol.f_at_tstar = f_function(sol.t_star, params, s0).f;
  return sol;
}

}  // namespace

HatPoint OdeSolution::at(double t) const {
  if (grid.empty() || t < grid.front() || t > grid.back()) {
    throw Error(ErrorCode::kDomain, "interpolation time outside [0, t_star]", "t");
  }
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t k1 = static_cast<std::size_t>(std::distance(grid.begin(), it));
  if (k1 >= grid.size()) k1 = grid.size() - 1;
  const std::size_t k0 = k1 == 0 ? 0 : k1 - 1;
  const double t0 = grid[k0];
  const double t1 = grid[k1];
  HatPoint p;
  p.t = t;
  p.s = s0 - t;
  p.i = detail::hermite(t0, t1, i[k0], i[k1], di[k0], di[k1], t);
  p.ie = detail::hermite(t0, t1, ie[k0], ie[k1], die[k0], die[k1], t);
  p.w = t == 0.0 ? 0.0 : w_coefficient * p.s * p.s * std::log(s0 / p.s);
  return p;
}

OdeSolution solve_hat(const ModelParams& params, const HatInitial& init,
                      const OdeOptions& options) {
  validate_hat(params, init);
  const double startup =
      init.is_zero() ? zero_start_offset(params, options.startup_epsilon) : 0.0;
  const double scale = init.is_zero() ? zero_start_scale(params) : 1.0;
  auto sol = integrate_hat(params, init, options, startup, scale);
  if (init.is_zero() && options.richardson_check) {
    const auto finer = integrate_hat(params, init, options, 0.1 * startup, scale);
    sol.startup_discrepancy = std::abs(finer.t_star - sol.t_star);
    if (sol.startup_discrepancy >= 10.0 * options.rel_tol) {
      throw Error(ErrorCode::kSolver,
                  "t_* depends on the startup offset beyond tolerance; tighten tolerances");
    }
  }
  return sol;
}

double final_size_limit(const ModelParams& params, const HatInitial& init,
                        const OdeOptions& options) {
  return solve_hat(params, init, options).final_size_fraction;
}

namespace {

using NatVec = std::array<double, 4>;

NaturalState to_state(const NatVec& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

NaturalState NaturalTrajectory::at(double t) const {
  if (grid.empty() || t < grid.front() || t > grid.back()) {
    throw Error(ErrorCode::kDomain, "interpolation time outside the trajectory", "t");
  }
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t k1 = static_cast<std::size_t>(std::distance(grid.begin(), it));
  if (k1 >= grid.size()) k1 = grid.size() - 1;
  const std::size_t k0 = k1 == 0 ? 0 : k1 - 1;
  const auto& a = states[k0];
  const auto& b = states[k1];
  const auto& da = derivatives[k0];
  const auto& db = derivatives[k1];
  const double t0 = grid[k0];
  const double t1 = grid[k1];
  return {detail::hermite(t0, t1, a.s, b.s, da.s, db.s, t),
          detail::hermite(t0, t1, a.i, b.i, da.i, db.i, t),
          detail::hermite(t0, t1, a.ie, b.ie, da.ie, db.ie, t),
          detail::hermite(t0, t1, a.w, b.w, da.w, db.w, t)};
}

double NaturalTrajectory::time_when_s(double s_target) const {
  if (states.empty() || s_target > states.front().s || s_target < states.back().s) {
    throw Error(ErrorCode::kDomain, "target s not reached on this trajectory", "s");
  }
  // First grid interval containing the target, then bisection on the
  // interpolant.
  std::size_t k = 1;
  while (k < states.size() && states[k].s > s_target) ++k;
  if (k >= states.size()) return grid.back();
  double lo = grid[k - 1];
  double hi = grid[k];
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (at(mid).s > s_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

NaturalTrajectory solve_natural(const ModelParams& params, const NaturalState& init,
                                double t_end, const OdeOptions& opt) {
  require_valid(params);
  if (!(init.i > 0.0) || !(init.ie > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "natural system needs i(0) > 0 and ie(0) > 0", "i0");
  }
  if (!(init.s > 0.0) || init.w < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "natural system needs s(0) > 0 and w(0) >= 0", "s0");
  }
  if (!(t_end > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t_end must be positive", "t_end");
  }
  const auto& p = params;
  auto rhs = [&p](double, const NatVec& y, NatVec& dy) {
    const double s = y[0], i = y[1], ie = y[2], w = y[3];
    if (!(s > 0.0)) return false;
    dy[0] = -p.lambda * ie;
    dy[1] = -p.gamma * i + p.lambda * ie;
    dy[2] = -p.lambda * ie - p.gamma * ie + p.lambda * p.mu * ie * s - p.lambda * ie * ie / s +
            2.0 * p.lambda * ie * w / s - p.omega * ie * (1.0 - p.alpha + p.alpha * (1.0 - i));
    dy[3] = p.omega * p.alpha * ie * s - 2.0 * p.lambda * ie * w / s;
    return std::isfinite(dy[0]) && std::isfinite(dy[1]) && std::isfinite(dy[2]) &&
           std::isfinite(dy[3]);
  };

  NaturalTrajectory traj;
  double t = 0.0;
  NatVec y{init.s, init.i, init.ie, init.w};
  NatVec dy{};
  if (!rhs(t, y, dy)) throw Error(ErrorCode::kSolver, "invalid initial point");
  traj.grid.push_back(t);
  traj.states.push_back(to_state(y));
  traj.derivatives.push_back(to_state(dy));

  const double max_step = opt.max_step > 0.0 ? opt.max_step : 1e-2 * t_end;
  double h = std::min(max_step, 1e-4);
  long steps = 0;
  while (t < t_end) {
    if (++steps > opt.max_steps) throw Error(ErrorCode::kSolver, "step budget exhausted");
    h = std::min({h, max_step, t_end - t});
    const auto trial = detail::dopri_step<4>(rhs, t, y, dy, h, opt.rel_tol, opt.abs_tol);
    if (!trial.valid || trial.error_norm > 1.0) {
      h *= trial.valid ? std::max(0.2, 0.9 * std::pow(trial.error_norm, -0.2)) : 0.5;
      if (h < 1e-14 * std::max(1.0, t)) throw Error(ErrorCode::kSolver, "step size underflow");
      continue;
    }
    t = (t_end - t <= h) ? t_end : t + h;
    y = trial.y;
    if (!rhs(t, y, dy)) throw Error(ErrorCode::kSolver, "trajectory left the domain");
    traj.grid.push_back(t);
    traj.states.push_back(to_state(y));
    traj.derivatives.push_back(to_state(dy));
    h *= detail::step_factor(trial.error_norm);
  }
  return traj;
}

}  // namespace sirw
