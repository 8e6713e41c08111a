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

#include "sirw/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "sirw/error.hpp"
#include "sirw/oracle.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"
#include "sirw/stats.hpp"

namespace sirw {

unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

const char* variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::kEvoSir: return "evoSIR";
    case Variant::kDelSir: return "delSIR";
    case Variant::kCustomAlpha: return "custom";
  }
  return "unknown";
}

Variant parse_variant(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "evosir") return Variant::kEvoSir;
  if (lower == "delsir") return Variant::kDelSir;
  if (lower == "custom") return Variant::kCustomAlpha;
  throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + text + "'", "sweep.variants");
}

double variant_alpha(Variant v, double base_alpha) noexcept {
  switch (v) {
    case Variant::kEvoSir: return 1.0;
    case Variant::kDelSir: return 0.0;
    case Variant::kCustomAlpha: return base_alpha;
  }
  return base_alpha;
}

void validate_sweep(const SweepSpec& spec) {
  require_valid(spec.base);
  if (spec.lambda_grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "lambda grid is empty", "sweep.lambda_grid");
  }
  for (std::size_t k = 0; k < spec.lambda_grid.size(); ++k) {
    const double l = spec.lambda_grid[k];
    if (!std::isfinite(l) || l < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "lambda grid values must be finite and >= 0",
                  "sweep.lambda_grid");
    }
    if (k > 0 && l <= spec.lambda_grid[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "lambda grid must be strictly increasing",
                  "sweep.lambda_grid");
    }
  }
  if (spec.replicates < 1) {
    throw Error(ErrorCode::kInvalidArgument, "replicates must be >= 1", "replicates");
  }
  if (spec.variants.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no variants selected", "sweep.variants");
  }
}

std::uint64_t sweep_seed(std::uint64_t master, Variant variant, std::size_t grid_index,
                         std::int64_t replicate) noexcept {
  return derive_seed(master, {static_cast<std::uint64_t>(variant),
                              static_cast<std::uint64_t>(grid_index),
                              static_cast<std::uint64_t>(replicate)});
}

namespace {

std::optional<double> predicted_final_size(const ModelParams& p) {
  if (p.mu <= 1.0 || p.lambda <= 0.0) return std::nullopt;
  if (p.lambda <= lambda_c(p)) return 0.0;
  try {
    return solve_hat(p, HatInitial::zero()).final_size_fraction;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<double> predicted_outbreak(const ModelParams& p) {
  if (p.alpha == 1.0) return outbreak_probability(p, OutbreakModel::kEvoSir);
  if (p.omega == 0.0) return outbreak_probability(p, OutbreakModel::kStaticSir);
  return std::nullopt;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  const std::size_t grid = spec.lambda_grid.size();
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const std::size_t per_variant = grid * reps;

  SweepResult out;
  out.records.resize(spec.variants.size() * per_variant);
  SimOptions opts;
  opts.edge_attach = spec.edge_attach;
  opts.outbreak_threshold = spec.threshold;
  opts.checkpoint_stride = spec.keep_trajectories ? spec.checkpoint_stride : 0;

  parallel_for(out.records.size(), spec.workers, [&](std::size_t k) {
    const std::size_t v = k / per_variant;
    const std::size_t g = (k % per_variant) / reps;
    const auto r = static_cast<std::int64_t>(k % reps);
    ReplicateRecord& rec = out.records[k];
    rec.variant = spec.variants[v];
    rec.grid_index = g;
    rec.replicate = r;
    rec.seed = sweep_seed(spec.master_seed, rec.variant, g, r);
    ModelParams p = spec.base;
    p.alpha = variant_alpha(rec.variant, spec.base.alpha);
    p.lambda = spec.lambda_grid[g];
    try {
      SimResult res = run(p, InitialCondition::single_seed(), rec.seed, opts);
      if (!spec.keep_trajectories) res.trajectory.clear();
      rec.result = std::move(res);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  // Aggregation walks records in index order, so the output does not depend
  // on scheduling.
  for (std::size_t v = 0; v < spec.variants.size(); ++v) {
    for (std::size_t g = 0; g < grid; ++g) {
      SweepRow row;
      row.variant = spec.variants[v];
      row.lambda = spec.lambda_grid[g];
      row.alpha = variant_alpha(row.variant, spec.base.alpha);
      row.n = spec.base.n;
      row.replicates = spec.replicates;
      std::vector<double> sizes;
      for (std::size_t r = 0; r < reps; ++r) {
        const ReplicateRecord& rec = out.records[v * per_variant + g * reps + r];
        if (!rec.result) {
          ++row.failures;
          continue;
        }
        if (rec.result->outbreak) {
          ++row.outbreak_count;
          sizes.push_back(static_cast<double>(rec.result->final_size) /
                          static_cast<double>(spec.base.n));
        }
      }
      const std::int64_t completed = row.replicates - row.failures;
      row.outbreak_frequency =
          completed > 0 ? static_cast<double>(row.outbreak_count) / static_cast<double>(completed)
                        : 0.0;
      if (!sizes.empty()) {
        row.mean_conditional_final_fraction = mean(sizes);
        row.stderr_conditional = standard_error(sizes);
      }
      ModelParams p = spec.base;
      p.alpha = row.alpha;
      p.lambda = row.lambda;
      row.ode_prediction = predicted_final_size(p);
      row.predicted_outbreak_probability = predicted_outbreak(p);
      out.rows.push_back(row);
    }
  }
  return out;
}

SupDeviation sup_deviation(const SimResult& run, const OdeSolution& limit, std::int64_t n) {
  const double horizon = std::min(limit.t_star, run.terminal_time);
  const double scale = static_cast<double>(n);
  SupDeviation d{0.0, 0.0};
  for (const Checkpoint& c : run.trajectory) {
    if (c.time > horizon) break;
    const HatPoint x = limit.at(c.time);
    const double ds = std::abs(static_cast<double>(c.s) / scale - x.s);
    const double di = std::abs(static_cast<double>(c.i) / scale - x.i);
    const double de = std::abs(static_cast<double>(c.ie) / scale - x.ie);
    const double dw = std::abs(static_cast<double>(c.w) / scale - x.w);
    d.s_only = std::max(d.s_only, ds);
    d.full = std::max({d.full, ds, di, de, dw});
  }
  return d;
}

ConvergenceReport convergence_experiment(const ConvergenceSpec& spec) {
  if (spec.n_list.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "n list is empty", "n");
  }
  if (spec.replicates < 1) {
    throw Error(ErrorCode::kInvalidArgument, "replicates must be >= 1", "replicates");
  }
  ModelParams base = spec.params;
  base.n = spec.n_list.front();
  require_valid(base);

  const OdeSolution limit = solve_hat(base, HatInitial::from(spec.init, base), spec.ode);
  ConvergenceReport report;
  report.t_star = limit.t_star;

  for (std::size_t ni = 0; ni < spec.n_list.size(); ++ni) {
    ModelParams p = spec.params;
    p.n = spec.n_list[ni];
    require_valid(p);
    require_valid(spec.init, p.n);
    SimOptions opts;
    opts.outbreak_threshold = spec.threshold;
    opts.checkpoint_stride =
        spec.checkpoint_stride > 0 ? spec.checkpoint_stride : std::max<std::int64_t>(1, p.n / 2000);

    const auto reps = static_cast<std::size_t>(spec.replicates);
    std::vector<std::optional<SupDeviation>> devs(reps);
    parallel_for(reps, spec.workers, [&](std::size_t r) {
      const std::uint64_t seed =
          derive_seed(spec.master_seed, {static_cast<std::uint64_t>(ni), r});
      const SimResult res = run_time_changed(p, spec.init, seed, opts);
      if (spec.init.kind == InitKind::kSingleSeed && !res.outbreak) return;
      devs[r] = sup_deviation(res, limit, p.n);
    });

    ConvergenceRow row;
    row.n = p.n;
    for (const auto& d : devs) {
      if (!d) continue;
      row.sup_deviations.push_back(d->full);
      row.sup_deviations_s.push_back(d->s_only);
    }
    row.runs_used = static_cast<std::int64_t>(row.sup_deviations.size());
    if (row.runs_used > 0) {
      row.median_sup_deviation = median(row.sup_deviations);
      row.median_sup_deviation_s = median(row.sup_deviations_s);
    } else {
      row.median_sup_deviation = std::numeric_limits<double>::quiet_NaN();
      row.median_sup_deviation_s = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(std::move(row));
  }

  report.strictly_decreasing = report.rows.size() > 1;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    if (!(report.rows[k].median_sup_deviation < report.rows[k - 1].median_sup_deviation)) {
      report.strictly_decreasing = false;
    }
  }
  return report;
}

OracleComparison validate_against_oracle(const ValidationSpec& spec) {
  require_valid(spec.params);
  require_valid(spec.init, spec.params.n);
  if (spec.params.n > kMaxExplicitVertices) {
    throw Error(ErrorCode::kUnsupported,
                "explicit-graph oracle supports n <= " + std::to_string(kMaxExplicitVertices), "n");
  }
  if (spec.replicates < 2) {
    throw Error(ErrorCode::kInvalidArgument, "replicates must be >= 2", "replicates");
  }
  const auto reps = static_cast<std::size_t>(spec.replicates);
  SimOptions opts;
  opts.edge_attach = spec.edge_attach;
  opts.outbreak_threshold = spec.threshold;

  OracleComparison out;
  out.sim_sizes.resize(reps);
  out.oracle_sizes.resize(reps);
  std::vector<std::int64_t> rewires(reps), multi(reps);
  const double scale = static_cast<double>(spec.params.n);

  parallel_for(2 * reps, spec.workers, [&](std::size_t k) {
    const std::size_t r = k / 2;
    if (k % 2 == 0) {
      const SimResult res = run(spec.params, spec.init, derive_seed(spec.master_seed, {0, r}), opts);
      out.sim_sizes[r] = static_cast<double>(res.final_size) / scale;
    } else {
      Rng rng(derive_seed(spec.master_seed, {1, r}));
      const ExplicitGraph g = generate_er(spec.params.n, spec.params.mu, rng);
      const ExplicitResult res = run_explicit(g, spec.params, spec.init, rng, opts);
      out.oracle_sizes[r] = static_cast<double>(res.sim.final_size) / scale;
      rewires[r] = res.rewire_events;
      multi[r] = res.multi_edge_events;
    }
  });

  std::int64_t total_rewires = 0, total_multi = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    total_rewires += rewires[r];
    total_multi += multi[r];
  }
  out.multi_edge_frequency =
      total_rewires > 0 ? static_cast<double>(total_multi) / static_cast<double>(total_rewires)
                        : 0.0;
  out.ks_statistic = ks_statistic(out.sim_sizes, out.oracle_sizes);
  out.ks_critical = ks_critical_value(spec.ks_alpha, reps, reps);
  out.mean_sim = mean(out.sim_sizes);
  out.mean_oracle = mean(out.oracle_sizes);
  const double se_a = standard_error(out.sim_sizes);
  const double se_b = standard_error(out.oracle_sizes);
  out.stderr_pooled = std::sqrt(se_a * se_a + se_b * se_b);
  out.ks_pass = out.ks_statistic <= out.ks_critical;
  out.mean_pass = std::abs(out.mean_sim - out.mean_oracle) <= 3.0 * out.stderr_pooled;
  out.pass = out.ks_pass && out.mean_pass;
  return out;
}

}  // namespace sirw
