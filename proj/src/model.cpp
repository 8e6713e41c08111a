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

#include "sirw/model.hpp"

#include <cmath>

#include "sirw/error.hpp"

namespace sirw {

std::string ModelParams::label() const {
  if (is_evo()) return "evoSIR";
  if (is_del()) return "delSIR";
  return "SIR-omega";
}

std::int64_t InitialCondition::initial_infected(std::int64_t n) const {
  if (kind == InitKind::kSingleSeed) return 1;
  return static_cast<std::int64_t>(std::llround(i0_fraction * static_cast<double>(n)));
}

double InitialCondition::s0_fraction(std::int64_t n) const {
  if (kind == InitKind::kSingleSeed) {
    return static_cast<double>(n - 1) / static_cast<double>(n);
  }
  return 1.0 - i0_fraction;
}

ValidationReport validate(const ModelParams& p) {
  ValidationReport report;
  auto check = [&](bool ok, const char* what) {
    if (!ok) report.violations.emplace_back(what);
  };
  // NaN fails every comparison, so it is rejected by the same checks.
  check(p.lambda >= 0.0 && std::isfinite(p.lambda), "lambda must be finite and >= 0");
  check(p.gamma >= 0.0 && std::isfinite(p.gamma), "gamma must be finite and >= 0");
  check(p.omega >= 0.0 && std::isfinite(p.omega), "omega must be finite and >= 0");
  check(p.alpha >= 0.0 && p.alpha <= 1.0, "alpha out of [0,1]");
  check(p.mu >= 0.0 && std::isfinite(p.mu), "mu must be finite and >= 0");
  check(p.n >= 2, "n must be >= 2");
  check(!(p.mu > static_cast<double>(p.n)), "mu must not exceed n (edge probability mu/n > 1)");
  if (p.mu >= 0.0 && p.mu <= 1.0) {
    report.flags.emplace_back("mu <= 1: lambda_c undefined (no supercritical regime)");
  }
  if (p.gamma == 0.0) {
    report.flags.emplace_back("gamma = 0: SI-omega boundary, phase criterion not established");
  }
  return report;
}

namespace {

const char* key_for_violation(const std::string& v) {
  for (const char* key : {"lambda", "gamma", "omega", "alpha", "mu", "n"}) {
    if (v.rfind(key, 0) == 0) return key;
  }
  return "";
}

}  // namespace

void require_valid(const ModelParams& params) {
  const auto report = validate(params);
  if (!report.ok()) {
    const auto& first = report.violations.front();
    throw Error(ErrorCode::kInvalidArgument, first, key_for_violation(first));
  }
}

void require_valid(const InitialCondition& init, std::int64_t n) {
  if (init.kind == InitKind::kSingleSeed) return;
  if (!(init.i0_fraction > 0.0 && init.i0_fraction < 1.0)) {
    throw Error(ErrorCode::kDegenerateInitial, "init.i0_fraction must lie in (0,1)",
                "init.i0_fraction");
  }
  const auto infected = init.initial_infected(n);
  if (infected <= 0 || infected >= n) {
    throw Error(ErrorCode::kDegenerateInitial,
                "round(i0_fraction * n) must lie strictly between 0 and n",
                "init.i0_fraction");
  }
}

}  // namespace sirw
