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

// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
// nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "sirw/commands.hpp"
#include "sirw/config.hpp"
#include "sirw/error.hpp"
#include "sirw/harness.hpp"
#include "sirw/io.hpp"
#include "sirw/ode.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"
#include "sirw/sim.hpp"
#include "sirw/stats.hpp"

using namespace sirw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

// budget_s <= 0: no runtime limit stated.
void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += fmt(" [over budget %.0fs]", budget_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

ModelParams mk(double lambda, double gamma, double omega, double alpha, double mu,
               std::int64_t n = 1000) {
  return {lambda, gamma, omega, alpha, mu, n};
}

Transition cls(double gamma, double omega, double alpha, double mu) {
  return classify_transition(mk(1.0, gamma, omega, alpha, mu)).classification;
}

Outcome lambda_c_exact() {
  const double v = lambda_c(mk(1.0, 1.0, 4.0, 1.0, 5.0));
  return {v == 1.25, fmt("lambda_c = %.17g", v)};
}

Outcome truth_table() {
  int wrong = 0, cases = 0;
  auto expect = [&](Transition got, Transition want) {
    ++cases;
    wrong += got != want ? 1 : 0;
  };
  expect(cls(1, 4, 1, 5), Transition::kDiscontinuous);
  Rng rng(2026);
  for (int k = 0; k < 2000; ++k) {
    const double g = std::exp(8.0 * rng.uniform() - 4.0);
    const double w = std::exp(10.0 * rng.uniform() - 5.0);
    const double mu = 1.0 + std::exp(8.0 * rng.uniform() - 4.0);
    expect(cls(g, w, 0.5, mu), Transition::kContinuous);
    expect(cls(g, w, 0.0, mu), Transition::kContinuous);
  }
  for (double g : {0.5, 1.0, 3.0}) expect(cls(g, 0.0, 0.0, 2.0), Transition::kContinuous);
  // omega (2 alpha - 1) = gamma.
  expect(cls(1, 2, 0.75, 50), Transition::kContinuous);
  expect(cls(0.5, 1, 0.75, 9), Transition::kContinuous);
  // mu = 2 omega alpha / (omega (2 alpha - 1) - gamma).
  expect(cls(1, 2, 1, 4), Transition::kContinuous);
  expect(cls(1, 3, 1, 3), Transition::kContinuous);
  expect(cls(2, 4, 1, 4), Transition::kContinuous);
  return {wrong == 0, fmt("%d/%d cases as expected", cases - wrong, cases)};
}

Outcome oracle_equivalence() {
  ValidationSpec spec;
  spec.params = mk(1.0, 1.0, 1.0, 0.5, 3.0, 200);
  spec.replicates = 2000;
  spec.master_seed = 20260;
  const auto c = validate_against_oracle(spec);
  return {c.pass,
          fmt("KS %.4f vs critical %.4f; means %.3f vs %.3f, |diff| %.3f <= 3 x %.3f: %s",
              c.ks_statistic, c.ks_critical, c.mean_sim, c.mean_oracle,
              std::abs(c.mean_sim - c.mean_oracle), c.stderr_pooled,
              c.mean_pass ? "yes" : "no")};
}

Outcome final_size() {
  struct Case {
    const char* label;
    ModelParams p;
  };
  const std::vector<Case> cases = {
      {"delSIR mu=5 omega=4 lambda=2", mk(2.0, 1.0, 4.0, 0.0, 5.0, 100000)},
      {"alpha=0.5 mu=5 omega=4 lambda=1.875", mk(1.875, 1.0, 4.0, 0.5, 5.0, 100000)},
      {"evoSIR mu=4 omega=0.5 lambda=0.75", mk(0.75, 1.0, 0.5, 1.0, 4.0, 100000)},
  };
  bool all = true;
  std::string detail;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& p = cases[ci].p;
    if (classify_transition(p).classification != Transition::kContinuous) {
      return {false, std::string(cases[ci].label) + " is not in the continuous regime"};
    }
    const double t_star = solve_hat(p, HatInitial::zero()).t_star;
    std::vector<double> fractions;
    std::int64_t next = 0;
    constexpr std::int64_t kBatch = 100;
    while (fractions.size() < 200) {
      std::vector<double> batch(kBatch, -1.0);
      parallel_for(kBatch, default_workers(), [&](std::size_t k) {
        const auto seed = derive_seed(4242, {ci, static_cast<std::uint64_t>(next) + k});
        const auto r = run(p, InitialCondition::single_seed(), seed);
        if (r.outbreak) batch[k] = static_cast<double>(r.final_size) / 1e5;
      });
      for (double f : batch)
        if (f >= 0.0) fractions.push_back(f);
      next += kBatch;
    }
    const double m = mean(fractions);
    const bool ok = std::abs(m - t_star) < 0.01;
    all = all && ok;
    detail += fmt("%s%s: mean %.4f over %zu outbreaks vs t_* %.4f", detail.empty() ? "" : "; ",
                  cases[ci].label, m, fractions.size(), t_star);
  }
  return {all, detail};
}

// Survival probability of the branching process in which every edge of an
// infected vertex shares that vertex's Exp(gamma) infectious period. With
// u = exp(-gamma T) the offspring law is Poisson(mu lambda / (lambda + omega)
// (1 - u^((lambda + omega) / gamma))), u uniform on (0, 1). Diagnostic only.
double shared_recovery_survival(const ModelParams& p) {
  const double c = p.mu * p.lambda / (p.lambda + p.omega);
  const double k = (p.lambda + p.omega) / p.gamma;
  constexpr int kPanels = 20000;  // Simpson, even
  auto pgf = [&](double z) {
    double acc = 0.0;
    for (int j = 0; j <= kPanels; ++j) {
      const double u = static_cast<double>(j) / kPanels;
      const double w = (j == 0 || j == kPanels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      acc += w * std::exp(-c * (1.0 - std::pow(u, k)) * (1.0 - z));
    }
    return acc / (3.0 * kPanels);
  };
  double z = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const double next = pgf(z);
    if (std::abs(next - z) < 1e-13) break;
    z = next;
  }
  return 1.0 - z;
}

Outcome outbreak_probability_evo() {
  SweepSpec spec;
  spec.base = mk(2.5, 1.0, 4.0, 1.0, 5.0, 100000);
  spec.lambda_grid = {2.5};
  spec.replicates = 2000;
  spec.master_seed = 777;
  spec.variants = {Variant::kEvoSir};
  const auto res = run_sweep(spec);
  const auto& row = res.rows.at(0);
  const double q = outbreak_probability(spec.base, OutbreakModel::kEvoSir);
  const double se =
      std::sqrt(row.outbreak_frequency * (1.0 - row.outbreak_frequency) / 2000.0);
  return {row.failures == 0 && std::abs(row.outbreak_frequency - q) < 0.02,
          fmt("frequency %.4f +- %.4f (%lld/2000) vs 1 - z = %.4f, |diff| %.4f; "
              "shared-recovery branching limit %.4f",
              row.outbreak_frequency, se, static_cast<long long>(row.outbreak_count), q,
              std::abs(row.outbreak_frequency - q), shared_recovery_survival(spec.base))};
}

Outcome jump() {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  const auto half = jump_profile(mk(1.0, 1.0, 4.0, 0.5, 5.0), deltas);
  const auto evo = jump_profile(mk(1.0, 1.0, 4.0, 1.0, 5.0), deltas);
  const bool decreasing =
      half.rows[0].t_star > half.rows[1].t_star && half.rows[1].t_star > half.rows[2].t_star;
  const bool ok = decreasing && half.rows[2].t_star < 0.02 && evo.rows[2].t_star > 0.05;
  return {ok, fmt("alpha=0.5: %.4g, %.4g, %.4g; evoSIR: %.4g, %.4g, %.4g", half.rows[0].t_star,
                  half.rows[1].t_star, half.rows[2].t_star, evo.rows[0].t_star,
                  evo.rows[1].t_star, evo.rows[2].t_star)};
}

Outcome ode_consistency() {
  std::vector<std::string> bad;

  // Time-change identity on a positive start.
  const auto p = mk(2.0, 1.0, 4.0, 0.05, 5.0);
  const auto hat = solve_hat(p, HatInitial::positive(0.95, 0.05, 0.2375));
  const auto nat = solve_natural(p, {0.95, 0.05, 0.2375, 0.0}, 60.0);
  double identity = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double u = 0.9 * hat.t_star * k / 100.0;
    const auto x = nat.at(nat.time_when_s(0.95 - u));
    const auto y = hat.at(u);
    identity = std::max({identity, std::abs(x.i - y.i), std::abs(x.ie - y.ie),
                         std::abs(x.w - y.w)});
  }
  if (!(identity < 1e-6)) bad.push_back(fmt("identity %.2e", identity));

  // Zero-start invariants.
  const std::vector<ModelParams> sets = {mk(2.5, 1, 4, 1, 5), mk(2, 1, 4, 0, 5),
                                         mk(1.875, 1, 4, 0.5, 5), mk(0.75, 1, 0.5, 1, 4),
                                         mk(3, 0.5, 2, 0.3, 3)};
  for (const auto& q : sets) {
    const auto sol = solve_hat(q, HatInitial::zero());
    for (std::size_t k = 0; k < sol.size(); ++k) {
      if (sol.s[k] != sol.s0 - sol.grid[k]) bad.push_back("s closed form");
      if (sol.i[k] > sol.grid[k]) bad.push_back("i <= t");
    }
    if (!(sol.t_star < sol.s0)) bad.push_back("t_* < s(0)");
    if (!(sol.f_at_tstar <= 1e-8)) bad.push_back(fmt("F(t_*) = %.3g", sol.f_at_tstar));
  }

  // Comparison principle.
  Rng rng(909);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q{0.5 + 3.0 * rng.uniform(), 0.2 + rng.uniform(), 3.0 * rng.uniform(),
                        rng.uniform(), 2.0 + 4.0 * rng.uniform(), 1000};
    const double s0 = 0.5 + 0.45 * rng.uniform();
    const double i_hi = (1.0 - s0) * (0.2 + 0.8 * rng.uniform());
    const double ie_hi = 0.02 + 0.5 * rng.uniform();
    const double i_lo = i_hi * (0.3 + 0.7 * rng.uniform());
    const double ie_lo = ie_hi * (0.3 + 0.7 * rng.uniform());
    const auto lo = solve_hat(q, HatInitial::positive(s0, i_lo, ie_lo));
    const auto hi = solve_hat(q, HatInitial::positive(s0, i_hi, ie_hi));
    bool v = lo.t_star > hi.t_star + 1e-8;
    const double end = std::min(lo.t_star, hi.t_star);
    for (int k = 0; k <= 200 && !v; ++k) {
      const double t = std::min(end, end * k / 200.0);
      const auto a = lo.at(t);
      const auto b = hi.at(t);
      v = a.i > b.i + 1e-8 || a.ie > b.ie + 1e-8;
    }
    violations += v ? 1 : 0;
  }
  if (violations) bad.push_back(fmt("%d comparison violations", violations));

  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  std::string detail = fmt("identity max error %.2e; 100 ordered pairs, %d violations", identity,
                           violations);
  for (const auto& b : bad) detail += "; broken: " + b;
  return {bad.empty(), detail};
}

Outcome convergence() {
  ConvergenceSpec spec;
  spec.params = mk(1.0, 1.0, 1.0, 0.5, 4.0, 0);
  spec.init = InitialCondition::positive(0.05);
  spec.n_list = {10000, 40000, 160000};
  spec.replicates = 50;
  spec.master_seed = 5150;
  const auto rep = convergence_experiment(spec);
  std::string detail = "median sup-deviation";
  for (const auto& row : rep.rows) {
    detail += fmt(" n=%lld: %.4f (S %.4f, %lld runs)", static_cast<long long>(row.n),
                  row.median_sup_deviation, row.median_sup_deviation_s,
                  static_cast<long long>(row.runs_used));
  }
  bool s_bounded = true;
  for (const auto& row : rep.rows)
    for (std::size_t k = 0; k < row.sup_deviations.size(); ++k)
      s_bounded = s_bounded && row.sup_deviations_s[k] <= row.sup_deviations[k];
  return {rep.strictly_decreasing && s_bounded, detail};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "sirw_acceptance_determinism";
  fs::remove_all(root);
  const std::string base =
      "lambda = 2.5\ngamma = 1\nomega = 4\nalpha = 1\nmu = 5\nseed = 11\n";
  struct Job {
    Command cmd;
    std::string extra;
  };
  const std::vector<Job> jobs = {
      {Command::kSimulate, "n = 20000\nreplicates = 6\n"},
      {Command::kOde, ""},
      {Command::kPhase, ""},
      {Command::kSweep, "n = 5000\nreplicates = 10\nsweep.lambda_grid = 1:3:4\n"
                        "sweep.save_trajectories = true\n"},
      {Command::kValidate, "n = 150\nreplicates = 60\nalpha = 0.5\n"},
  };
  int compared = 0;
  std::vector<std::string> diffs;
  for (const auto& job : jobs) {
    const std::string name = command_name(job.cmd);
    std::vector<std::pair<fs::path, std::vector<std::string>>> runs;
    for (const char* workers : {"1", "8"}) {
      for (const char* copy : {"a", "b"}) {
        auto cfg = Config::from_text(base + job.extra);
        cfg.set("workers", workers);
        const fs::path dir = root / (name + "_w" + workers + copy);
        const fs::path out = job.cmd == Command::kSweep
                                 ? dir
                                 : dir / default_out(job.cmd);
        const auto res = run_command(job.cmd, cfg, out.string());
        std::vector<std::string> rel;
        for (const auto& f : res.files) rel.push_back(fs::relative(f, dir).string());
        runs.emplace_back(dir, rel);
      }
    }
    const auto& [ref_dir, ref_files] = runs.front();
    for (std::size_t r = 1; r < runs.size(); ++r) {
      if (runs[r].second != ref_files) {
        diffs.push_back(name + ": file lists differ");
        continue;
      }
      for (const auto& f : ref_files) {
        ++compared;
        if (read_text_file((ref_dir / f).string()) != read_text_file((runs[r].first / f).string()))
          diffs.push_back(name + "/" + f);
      }
    }
  }
  std::string detail = fmt("5 subcommands x 2 runs x workers {1,8}: %d file comparisons", compared);
  for (const auto& d : diffs) detail += "; differs: " + d;
  return {diffs.empty() && compared > 0, detail};
}

}  // namespace

int main() {
  criterion("lambda_c exactness", 0, lambda_c_exact);
  criterion("classifier truth table", 0, truth_table);
  criterion("oracle equivalence (n=200, 2000+2000 runs)", 120, oracle_equivalence);
  criterion("final-size limit (n=1e5, >=200 outbreaks, 3 sets)", 600, final_size);
  criterion("evoSIR outbreak probability (n=1e5, 2000 runs)", 600, outbreak_probability_evo);
  criterion("phase-transition jump profile", 0, jump);
  criterion("ODE self-consistency", 0, ode_consistency);
  criterion("convergence experiment (n=1e4,4e4,1.6e5; 50 runs)", 900, convergence);
  criterion("determinism across runs and worker counts", 0, determinism);
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
