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

#include "sirw/phase.hpp"

#include <algorithm>
#include <cmath>

#include "sirw/error.hpp"

namespace sirw {

double lambda_c(const ModelParams& params) {
  if (!(params.mu > 1.0)) {
    throw Error(ErrorCode::kDomain, "lambda_c undefined for mu <= 1", "mu");
  }
  return (params.omega + params.gamma) / (params.mu - 1.0);
}

const char* transition_name(Transition t) noexcept {
  return t == Transition::kDiscontinuous ? "Discontinuous" : "Continuous";
}

PhaseReport classify_transition(const ModelParams& params) {
  require_valid(params);
  PhaseReport report;
  report.lambda_c = lambda_c(params);
  report.gamma_zero_flag = params.gamma == 0.0;

  const double w = params.omega;
  const double a = params.alpha;
  const double g = params.gamma;
  const double mu = params.mu;

  // Second clauses are compared after multiplying through by the (positive)
  // denominator so that boundary cases are decided exactly.
  const double excess = w * (2.0 * a - 1.0) - g;
  if (!(excess > 0.0)) {
    report.classification = Transition::kContinuous;
    report.triggering_clause = "omega(2 alpha - 1) <= gamma";
  } else if (mu * excess > 2.0 * w * a) {
    report.classification = Transition::kDiscontinuous;
    report.triggering_clause =
        "omega(2 alpha - 1) > gamma and mu > 2 omega alpha / (omega(2 alpha - 1) - gamma)";
  } else {
    report.classification = Transition::kContinuous;
    report.triggering_clause = "mu <= 2 omega alpha / (omega(2 alpha - 1) - gamma)";
  }

  const double bb_excess = w * (3.0 * a - 1.0) - g;
  report.bb_sufficient_continuity = !(bb_excess > 0.0) || mu * bb_excess <= 2.0 * w * a;

  if (params.lambda > 0.0) {
    const auto f = f_function(0.0, params, 1.0);
    report.f0 = f.f;
    report.fprime0 = f.fprime;
  }
  return report;
}

FValues f_function(double t, const ModelParams& params, double s0) {
  if (!(t >= 0.0 && t < s0)) {
    throw Error(ErrorCode::kDomain, "F needs 0 <= t < s0", "t");
  }
  if (!(params.lambda > 0.0)) {
    throw Error(ErrorCode::kDomain, "F needs lambda > 0", "lambda");
  }
  const double s = s0 - t;
  const double k = params.omega * params.alpha / params.lambda;
  const double log_ratio = std::log(s0 / s);
  FValues out;
  // mu - 1 - (gamma + omega)/lambda first: it vanishes at lambda_c.
  out.f = (params.mu * s - 1.0 - (params.gamma + params.omega) / params.lambda) +
          2.0 * k * s * log_ratio;
  out.fprime = -params.mu + 2.0 * k * (1.0 - log_ratio);
  out.fsecond = -2.0 * k / s;
  return out;
}

double survival_probability(double m) {
  if (!(m > 1.0)) return 0.0;
  // With q = 1 - z the fixed point reads q = 1 - exp(-m q). Bisection on q
  // in terms of expm1 keeps full precision near m = 1.
  auto g = [m](double q) { return -std::expm1(-m * q) - q; };
  double lo = 1e-14;  // g > 0 just above 0 when m > 1
  double hi = 1.0;    // g(1) = -exp(-m) < 0
  if (!(g(lo) > 0.0)) return 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double outbreak_probability(const ModelParams& params, OutbreakModel model) {
  require_valid(params);
  const double l = params.lambda;
  if (l == 0.0) return 0.0;
  if (model == OutbreakModel::kStaticSir) {
    return survival_probability(params.mu * l / (l + params.gamma));
  }
  if (params.alpha != 1.0) {
    throw Error(ErrorCode::kUnsupported, "evoSIR outbreak probability needs alpha = 1", "alpha");
  }
  return survival_probability(params.mu * l / (l + params.omega + params.gamma));
}

const char* jump_verdict_name(JumpVerdict v) noexcept {
  return v == JumpVerdict::kBoundedAway ? "t_* bounded away from 0"
                                        : "t_* trend consistent with 0";
}

JumpProfile jump_profile(const ModelParams& params, const std::vector<double>& deltas,
                         const OdeOptions& options) {
  require_valid(params);
  if (deltas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one offset is required", "offsets");
  }
  const double critical = lambda_c(params);
  JumpProfile profile;
  std::size_t smallest = 0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const double delta = deltas[k];
    if (!(delta > 0.0)) {
      throw Error(ErrorCode::kDomain, "offsets must be > 0 (lambda = lambda_c is not supercritical)",
                  "offsets");
    }
    ModelParams at = params;
    at.lambda = critical * (1.0 + delta);
    const auto sol = solve_hat(at, HatInitial::zero(), options);
    profile.rows.push_back({delta, at.lambda, sol.t_star});
    if (delta < deltas[smallest]) smallest = k;
  }
  profile.smallest_delta_t_star = profile.rows[smallest].t_star;
  profile.verdict = profile.smallest_delta_t_star < kJumpThreshold ? JumpVerdict::kTrendsToZero
                                                                   : JumpVerdict::kBoundedAway;
  return profile;
}

}  // namespace sirw
