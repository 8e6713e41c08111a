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

#ifndef SIRW_PHASE_HPP_
#define SIRW_PHASE_HPP_

#include <string>
#include <vector>

#include "sirw/model.hpp"
#include "sirw/ode.hpp"

namespace sirw {

// (omega + gamma) / (mu - 1). Throws Error(kDomain) for mu <= 1.
double lambda_c(const ModelParams& params);

enum class Transition { kContinuous, kDiscontinuous };

const char* transition_name(Transition t) noexcept;

struct PhaseReport {
  double lambda_c = 0.0;
  Transition classification = Transition::kContinuous;
  std::string triggering_clause;
  // Older sufficient condition for continuity; metadata only.
  bool bb_sufficient_continuity = false;
  double f0 = 0.0;
  double fprime0 = 0.0;
  // Set when gamma = 0, where the criterion is not established.
  bool gamma_zero_flag = false;
};

// Discontinuous iff omega(2 alpha - 1) > gamma and
// mu > 2 omega alpha / (omega(2 alpha - 1) - gamma); equality is continuous.
// f0 and fprime0 are evaluated at the params' own lambda with s0 = 1.
PhaseReport classify_transition(const ModelParams& params);

struct FValues {
  double f, fprime, fsecond;
};

// F(t) = -1 - (gamma + omega)/lambda + mu s(t) + 2 w(t)/s(t) along the
// closed-form (s, w) flow from s(0) = s0, with its first two derivatives.
FValues f_function(double t, const ModelParams& params, double s0 = 1.0);

enum class OutbreakModel { kStaticSir, kEvoSir };

// 1 - z for the smallest root z in [0, 1] of exp(-m (1 - z)) = z, with
// m = mu lambda / (lambda + gamma) (static) or mu lambda / (lambda + omega +
// gamma) (evoSIR, alpha must be 1). Zero when m <= 1.
double outbreak_probability(const ModelParams& params, OutbreakModel model);

// Same root for an explicit offspring mean m.
double survival_probability(double m);

enum class JumpVerdict { kTrendsToZero, kBoundedAway };

const char* jump_verdict_name(JumpVerdict v) noexcept;

struct JumpRow {
  double delta;
  double lambda;
  double t_star;
};

struct JumpProfile {
  std::vector<JumpRow> rows;  // in input order
  JumpVerdict verdict = JumpVerdict::kTrendsToZero;
  double smallest_delta_t_star = 0.0;
};

inline constexpr double kJumpThreshold = 0.02;

// t_* under the zero condition at lambda = lambda_c (1 + delta) for each
// delta > 0. The verdict compares t_* at the smallest delta with
// kJumpThreshold.
JumpProfile jump_profile(const ModelParams& params, const std::vector<double>& deltas,
                         const OdeOptions& options = {});

}  // namespace sirw

#endif  // SIRW_PHASE_HPP_
