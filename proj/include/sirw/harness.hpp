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

#ifndef SIRW_HARNESS_HPP_
#define SIRW_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sirw/model.hpp"
#include "sirw/ode.hpp"
#include "sirw/sim.hpp"

namespace sirw {

unsigned default_workers() noexcept;

// Calls fn(k) for k in [0, count) on up to `workers` threads, handing out
// indices from a shared counter. fn must only write state owned by k.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

enum class Variant { kEvoSir = 0, kDelSir = 1, kCustomAlpha = 2 };

const char* variant_name(Variant v) noexcept;
// Accepts evoSIR/delSIR/custom (case-insensitive).
Variant parse_variant(const std::string& text);
double variant_alpha(Variant v, double base_alpha) noexcept;

struct SweepSpec {
  ModelParams base;  // base.n is the population size
  std::vector<double> lambda_grid;
  std::int64_t replicates = 1;
  double threshold = 0.005;
  std::uint64_t master_seed = 1;
  std::vector<Variant> variants{Variant::kEvoSir, Variant::kDelSir};
  EdgeAttach edge_attach = EdgeAttach::kPoisson;
  std::int64_t checkpoint_stride = 0;
  bool keep_trajectories = false;
  unsigned workers = 0;  // 0: default_workers()
};

// Throws Error(kInvalidArgument) for an empty or non-increasing grid,
// replicates < 1, or invalid base parameters.
void validate_sweep(const SweepSpec& spec);

struct SweepRow {
  Variant variant = Variant::kEvoSir;
  double lambda = 0.0;
  double alpha = 0.0;
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  std::int64_t outbreak_count = 0;
  std::int64_t failures = 0;
  double outbreak_frequency = 0.0;
  // Over runs with T >= threshold * n only.
  std::optional<double> mean_conditional_final_fraction;
  std::optional<double> stderr_conditional;
  std::optional<double> ode_prediction;
  std::optional<double> predicted_outbreak_probability;
};

struct ReplicateRecord {
  Variant variant = Variant::kEvoSir;
  std::size_t grid_index = 0;
  std::int64_t replicate = 0;
  std::uint64_t seed = 0;
  std::optional<SimResult> result;  // empty when the run failed
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (variant, lambda)
  std::vector<ReplicateRecord> records;
};

// Seed of replicate `replicate` at grid point `grid_index` of `variant`.
std::uint64_t sweep_seed(std::uint64_t master, Variant variant, std::size_t grid_index,
                         std::int64_t replicate) noexcept;

SweepResult run_sweep(const SweepSpec& spec);

struct ConvergenceSpec {
  ModelParams params;  // params.n is ignored
  InitialCondition init = InitialCondition::positive(0.05);
  std::vector<std::int64_t> n_list;
  std::int64_t replicates = 50;
  std::uint64_t master_seed = 1;
  double threshold = 0.005;
  // 0 selects max(1, n / 2000).
  std::int64_t checkpoint_stride = 0;
  OdeOptions ode;
  unsigned workers = 0;
};

struct ConvergenceRow {
  std::int64_t n = 0;
  std::int64_t runs_used = 0;  // single seed: outbreak runs only
  double median_sup_deviation = 0.0;
  double median_sup_deviation_s = 0.0;
  std::vector<double> sup_deviations;
  std::vector<double> sup_deviations_s;
};

struct ConvergenceReport {
  double t_star = 0.0;
  std::vector<ConvergenceRow> rows;
  bool strictly_decreasing = false;
};

struct SupDeviation {
  double full;    // max-norm over (S, I, I_E, W) / n
  double s_only;  // |S/n - s| alone
};

// Sup over the checkpoints of a time-changed run with t <= min(t_*, tau).
SupDeviation sup_deviation(const SimResult& run, const OdeSolution& limit, std::int64_t n);

ConvergenceReport convergence_experiment(const ConvergenceSpec& spec);

struct ValidationSpec {
  ModelParams params;
  InitialCondition init;
  std::int64_t replicates = 2000;
  std::uint64_t master_seed = 1;
  double threshold = 0.005;
  double ks_alpha = 0.01;
  EdgeAttach edge_attach = EdgeAttach::kPoisson;
  unsigned workers = 0;
};

struct OracleComparison {
  double ks_statistic = 0.0;
  double ks_critical = 0.0;
  double mean_sim = 0.0;
  double mean_oracle = 0.0;
  // sqrt(se_sim^2 + se_oracle^2)
  double stderr_pooled = 0.0;
  double multi_edge_frequency = 0.0;
  bool ks_pass = false;
  bool mean_pass = false;
  bool pass = false;
  std::vector<double> sim_sizes;
  std::vector<double> oracle_sizes;
};

// Paired ensembles of the reduced simulator and the explicit-graph oracle.
OracleComparison validate_against_oracle(const ValidationSpec& spec);

}  // namespace sirw

#endif  // SIRW_HARNESS_HPP_
