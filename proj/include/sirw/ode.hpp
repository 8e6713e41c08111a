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

#ifndef SIRW_ODE_HPP_
#define SIRW_ODE_HPP_

#include <vector>

#include "sirw/model.hpp"

namespace sirw {

// Initial value of the time-changed system. w(0) is always 0.
//
// Positive: i0 in (0,1), s0 in (0, 1 - i0], ie0 > 0.
// Zero:     s0 = 1, i0 = ie0 = 0; needs lambda > lambda_c.
struct HatInitial {
  double s0 = 1.0;
  double i0 = 0.0;
  double ie0 = 0.0;

  static HatInitial zero() { return {}; }
  static HatInitial positive(double s0, double i0, double ie0) { return {s0, i0, ie0}; }
  // Deterministic limit of X(0)/n for a simulator initial condition:
  // a single seed maps to the zero condition, a fraction i0 to
  // (1 - i0, i0, i0 (1 - i0) mu).
  static HatInitial from(const InitialCondition& init, const ModelParams& params);

  bool is_zero() const noexcept { return i0 == 0.0 && ie0 == 0.0; }
};

struct OdeOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  // <= 0 selects 1e-3 * s0.
  double max_step = 0.0;
  // Stage evaluations with ie below this are rejected instead of stepped
  // across; i / ie is not Lipschitz at ie = 0.
  double singular_floor = 1e-12;
  // Width at which the bracket around the zero of ie is accepted.
  double event_time_tol = 1e-10;
  double startup_epsilon = 1e-6;
  // Zero condition: also solve from startup_epsilon / 10 and require the two
  // t_* to agree within 10 * rel_tol.
  bool richardson_check = true;
  long max_steps = 5'000'000;
};

struct HatPoint {
  double t, s, i, ie, w;
};

struct OdeSolution {
  double s0 = 1.0;
  // omega alpha / lambda: w(t) = w_coefficient * s^2 * log(s0 / s).
  double w_coefficient = 0.0;
  std::vector<double> grid;
  std::vector<double> s, i, ie, w;
  std::vector<double> di, die;  // derivatives at grid points, for interpolation
  double t_star = 0.0;
  // 1 - s0 + t_star.
  double final_size_fraction = 0.0;
  double slope_at_tstar = 0.0;
  double f_at_tstar = 0.0;
  // |t_* difference| between the two startup offsets (zero condition only).
  double startup_discrepancy = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;

  std::size_t size() const noexcept { return grid.size(); }
  // Cubic Hermite interpolation for t in [0, t_star]; s and w use their
  // closed forms.
  HatPoint at(double t) const;
};

// Closed form of w along the time-changed flow; t must lie in [0, s0).
double w_closed_form(double t, double s0, const ModelParams& params);

OdeSolution solve_hat(const ModelParams& params, const HatInitial& init,
                      const OdeOptions& options = {});

// Limit of T / n: 1 - s0 + t_*.
double final_size_limit(const ModelParams& params, const HatInitial& init,
                        const OdeOptions& options = {});

struct NaturalState {
  double s, i, ie, w;
};

struct NaturalTrajectory {
  std::vector<double> grid;
  std::vector<NaturalState> states;
  std::vector<NaturalState> derivatives;

  NaturalState at(double t) const;
  // First time at which s falls to `s_target`; s is non-increasing.
  double time_when_s(double s_target) const;
};

// Untransformed system in natural time, integrated on [0, t_end].
// Requires i > 0, ie > 0 and 0 < s initially.
NaturalTrajectory solve_natural(const ModelParams& params, const NaturalState& init,
                                double t_end, const OdeOptions& options = {});

}  // namespace sirw

#endif  // SIRW_ODE_HPP_
