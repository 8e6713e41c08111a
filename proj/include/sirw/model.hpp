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

#ifndef SIRW_MODEL_HPP_
#define SIRW_MODEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace sirw {

// Rates of the SIR-omega process on an Erdos-Renyi(n, mu/n) graph.
//
// Each S-I edge transmits at `lambda` and breaks at `omega`; a broken edge is
// rewired by its susceptible endpoint with probability `alpha` and dropped
// otherwise. Infected vertices recover at `gamma`.
struct ModelParams {
  double lambda = 0.0;
  double gamma = 0.0;
  double omega = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  std::int64_t n = 0;

  bool is_evo() const noexcept { return alpha == 1.0; }
  bool is_del() const noexcept { return alpha == 0.0; }
  // "evoSIR", "delSIR" or "SIR-omega".
  std::string label() const;
};

enum class InitKind { kSingleSeed, kPositiveFraction };

struct InitialCondition {
  InitKind kind = InitKind::kSingleSeed;
  double i0_fraction = 0.0;  // PositiveFraction only

  static InitialCondition single_seed() { return {}; }
  static InitialCondition positive(double i0) {
    return {InitKind::kPositiveFraction, i0};
  }

  // Number of initially infected vertices in a population of n.
  std::int64_t initial_infected(std::int64_t n) const;
  double s0_fraction(std::int64_t n) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  // Non-fatal remarks, e.g. that no supercritical regime exists.
  std::vector<std::string> flags;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const ModelParams& params);

// Throws Error(kInvalidArgument) naming the first violated constraint.
void require_valid(const ModelParams& params);

// Throws Error(kDegenerateInitial) when the condition cannot be realised
// with n vertices.
void require_valid(const InitialCondition& init, std::int64_t n);

}  // namespace sirw

#endif  // SIRW_MODEL_HPP_
