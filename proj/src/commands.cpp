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

#include "sirw/commands.hpp"

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "sirw/error.hpp"
#include "sirw/harness.hpp"
#include "sirw/io.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"
#include "sirw/sim.hpp"

#ifndef SIRW_VERSION
#define SIRW_VERSION "0.0.0"
#endif

namespace sirw {

using nlohmann::json;

const char* toolkit_version() noexcept { return SIRW_VERSION; }

const char* command_name(Command c) noexcept {
  switch (c) {
    case Command::kSimulate: return "simulate";
    case Command::kOde: return "ode";
    case Command::kPhase: return "phase";
    case Command::kSweep: return "sweep";
    case Command::kValidate: return "validate";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::kSimulate, Command::kOde, Command::kPhase, Command::kSweep,
                    Command::kValidate}) {
    if (name == command_name(c)) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown subcommand '" + name + "'", "subcommand");
}

std::string default_out(Command c) {
  switch (c) {
    case Command::kSimulate: return "simulate.csv";
    case Command::kOde: return "ode.csv";
    case Command::kPhase: return "phase.json";
    case Command::kSweep: return "sweep_out";
    case Command::kValidate: return "validate.json";
  }
  return "out";
}

namespace {

void fill(Config& cfg, const std::string& key, const std::string& value) {
  if (!cfg.has(key)) cfg.set(key, value);
}

json meta_document(Command c, const Config& resolved,
                   std::optional<std::uint64_t> master_seed) {
  json cfg = json::object();
  for (const auto& [k, v] : resolved.values()) {
    if (k != "workers") cfg[k] = v;
  }
  json meta;
  meta["subcommand"] = command_name(c);
  meta["toolkit_version"] = toolkit_version();
  if (master_seed) meta["master_seed"] = *master_seed;
  meta["config"] = std::move(cfg);
  return meta;
}

unsigned workers_of(const Config& cfg) {
  const std::int64_t w = cfg.get_int("workers", 0);
  if (w < 0) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 0", "workers");
  return static_cast<unsigned>(w);
}

std::string with_suffix(const std::string& out, const std::string& suffix_and_ext) {
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix_and_ext)).string();
}

SimOptions sim_options(const Config& cfg) {
  SimOptions o;
  o.edge_attach = resolve_edge_attach(cfg);
  o.outbreak_threshold = cfg.get_double("threshold", o.outbreak_threshold);
  if (!(o.outbreak_threshold > 0.0 && o.outbreak_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in (0, 1]", "threshold");
  }
  o.checkpoint_stride = cfg.get_int("checkpoint_stride", 0);
  if (o.checkpoint_stride < 0) {
    throw Error(ErrorCode::kInvalidArgument, "checkpoint_stride must be >= 0",
                "checkpoint_stride");
  }
  return o;
}

std::int64_t replicates_of(const Config& cfg, std::int64_t min) {
  const std::int64_t r = cfg.get_int("replicates", min);
  if (r < min) {
    throw Error(ErrorCode::kInvalidArgument, "replicates must be >= " + std::to_string(min),
                "replicates");
  }
  return r;
}

CommandResult do_simulate(const Config& cfg, const std::string& out) {
  const ModelParams p = resolve_params(cfg, true);
  const InitialCondition init = resolve_init(cfg);
  require_valid(init, p.n);
  const SimOptions opts = sim_options(cfg);
  const std::uint64_t master = cfg.get_u64("seed", 1);
  const std::int64_t reps = replicates_of(cfg, 1);

  std::vector<SimResult> results(static_cast<std::size_t>(reps));
  parallel_for(results.size(), workers_of(cfg), [&](std::size_t r) {
    results[r] = run(p, init, derive_seed(master, {r}), opts);
  });

  CsvWriter traj({"replicate", "time", "S", "I", "I_E", "W"});
  CsvWriter summary({"replicate", "seed", "T", "tau", "outbreak"});
  json seeds = json::array();
  for (std::size_t r = 0; r < results.size(); ++r) {
    const SimResult& res = results[r];
    const auto rep = static_cast<std::int64_t>(r);
    for (const Checkpoint& c : res.trajectory) {
      traj.field(rep).field(c.time).field(c.s).field(c.i).field(c.ie).field(c.w);
      traj.end_row();
    }
    summary.field(rep).field(res.seed).field(res.final_size).field(res.terminal_time);
    summary.field(std::string(res.outbreak ? "true" : "false"));
    summary.end_row();
    seeds.push_back(res.seed);
  }

  CommandResult result;
  const std::string summary_path = with_suffix(out, "_summary.csv");
  const std::string meta_path = meta_path_for(out);
  write_text_file(out, traj.str());
  write_text_file(summary_path, summary.str());
  json meta = meta_document(Command::kSimulate, resolved_config(Command::kSimulate, cfg), master);
  meta["replicate_seeds"] = seeds;
  write_text_file(meta_path, meta.dump(2) + "\n");
  result.files = {out, summary_path, meta_path};

  std::int64_t outbreaks = 0;
  for (const auto& r : results) outbreaks += r.outbreak ? 1 : 0;
  json s;
  s["replicates"] = reps;
  s["outbreaks"] = outbreaks;
  s["trajectory_csv"] = out;
  s["summary_csv"] = summary_path;
  result.summary_json = s.dump();
  return result;
}

CommandResult do_ode(const Config& cfg, const std::string& out) {
  const ModelParams p = resolve_params(cfg, false);
  const HatInitial init = resolve_hat_initial(cfg, p);
  const OdeSolution sol = solve_hat(p, init, resolve_ode_options(cfg));

  CsvWriter csv({"grid", "s", "i", "ie", "w"});
  for (std::size_t k = 0; k < sol.size(); ++k) {
    csv.field(sol.grid[k]).field(sol.s[k]).field(sol.i[k]).field(sol.ie[k]).field(sol.w[k]);
    csv.end_row();
  }
  json s;
  s["t_star"] = sol.t_star;
  s["final_size_fraction"] = sol.final_size_fraction;
  s["F_at_tstar"] = sol.f_at_tstar;
  if (p.mu > 1.0) {
    const PhaseReport rep = classify_transition(p);
    s["classification"] = transition_name(rep.classification);
    // Beyond the continuous regime the final-size limit is not established.
    s["prediction"] =
        rep.classification == Transition::kDiscontinuous ? "conjectural" : "established";
  }

  CommandResult result;
  const std::string meta_path = meta_path_for(out);
  write_text_file(out, csv.str());
  write_text_file(meta_path,
                  meta_document(Command::kOde, resolved_config(Command::kOde, cfg), std::nullopt).dump(2) +
                      "\n");
  result.files = {out, meta_path};
  result.summary_json = s.dump();
  return result;
}

CommandResult do_phase(const Config& cfg, const std::string& out) {
  const ModelParams p = resolve_params(cfg, false);
  const PhaseReport rep = classify_transition(p);
  const std::vector<double> offsets =
      parse_double_list(cfg.get("phase.offsets").value_or("0.1,0.01,0.001"), "phase.offsets");
  const JumpProfile profile = jump_profile(p, offsets, resolve_ode_options(cfg));

  json j;
  j["lambda_c"] = rep.lambda_c;
  j["classification"] = transition_name(rep.classification);
  j["triggering_clause"] = rep.triggering_clause;
  j["bb_sufficient_continuity"] = rep.bb_sufficient_continuity;
  j["f0"] = rep.f0;
  j["fprime0"] = rep.fprime0;
  j["gamma_zero_flag"] = rep.gamma_zero_flag;
  if (p.alpha == 1.0) {
    j["outbreak_probability_evosir"] = outbreak_probability(p, OutbreakModel::kEvoSir);
  }
  if (p.omega == 0.0) {
    j["outbreak_probability_static_sir"] = outbreak_probability(p, OutbreakModel::kStaticSir);
  }
  json rows = json::array();
  CsvWriter csv({"delta", "lambda", "t_star"});
  for (const JumpRow& r : profile.rows) {
    rows.push_back({{"delta", r.delta}, {"lambda", r.lambda}, {"t_star", r.t_star}});
    csv.field(r.delta).field(r.lambda).field(r.t_star);
    csv.end_row();
  }
  j["jump_profile"] = {{"verdict", jump_verdict_name(profile.verdict)},
                       {"threshold", kJumpThreshold},
                       {"rows", rows}};

  CommandResult result;
  const std::string csv_path = with_suffix(out, "_offsets.csv");
  const std::string meta_path = meta_path_for(out);
  write_text_file(out, j.dump(2) + "\n");
  write_text_file(csv_path, csv.str());
  write_text_file(meta_path,
                  meta_document(Command::kPhase, resolved_config(Command::kPhase, cfg), std::nullopt).dump(2) +
                      "\n");
  result.files = {out, csv_path, meta_path};
  result.summary_json = j.dump();
  return result;
}

CommandResult do_sweep(const Config& cfg, const std::string& out_dir) {
  SweepSpec spec;
  spec.base = resolve_params(cfg, true);
  spec.lambda_grid = cfg.get_double_list("sweep.lambda_grid");
  spec.replicates = replicates_of(cfg, 1);
  const SimOptions opts = sim_options(cfg);
  spec.threshold = opts.outbreak_threshold;
  spec.edge_attach = opts.edge_attach;
  spec.checkpoint_stride = opts.checkpoint_stride;
  spec.master_seed = cfg.get_u64("seed", 1);
  spec.keep_trajectories = cfg.get_bool("sweep.save_trajectories", false);
  spec.workers = workers_of(cfg);
  spec.variants.clear();
  {
    std::string list = cfg.get("sweep.variants").value_or("evoSIR,delSIR");
    std::size_t start = 0;
    while (start <= list.size()) {
      const std::size_t comma = list.find(',', start);
      std::string item = list.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) spec.variants.push_back(parse_variant(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const SweepResult res = run_sweep(spec);

  CsvWriter csv({"variant", "lambda", "alpha", "n", "replicates", "outbreak_count",
                 "outbreak_frequency", "mean_conditional_final_fraction", "stderr",
                 "ode_prediction", "predicted_outbreak_probability", "failures", "lambda_c",
                 "classification"});
  for (const SweepRow& r : res.rows) {
    ModelParams p = spec.base;
    p.alpha = r.alpha;
    p.lambda = r.lambda;
    std::optional<double> lc;
    std::string cls;
    if (p.mu > 1.0) {
      const PhaseReport rep = classify_transition(p);
      lc = rep.lambda_c;
      cls = transition_name(rep.classification);
    }
    csv.field(std::string(variant_name(r.variant))).field(r.lambda).field(r.alpha).field(r.n);
    csv.field(r.replicates).field(r.outbreak_count).field(r.outbreak_frequency);
    csv.field(r.mean_conditional_final_fraction).field(r.stderr_conditional);
    csv.field(r.ode_prediction).field(r.predicted_outbreak_probability).field(r.failures);
    csv.field(lc).field(cls);
    csv.end_row();
  }

  CsvWriter reps({"variant", "lambda", "replicate", "seed", "T", "tau", "outbreak", "error"});
  for (const ReplicateRecord& rec : res.records) {
    reps.field(std::string(variant_name(rec.variant))).field(spec.lambda_grid[rec.grid_index]);
    reps.field(rec.replicate).field(rec.seed);
    if (rec.result) {
      reps.field(rec.result->final_size).field(rec.result->terminal_time);
      reps.field(std::string(rec.result->outbreak ? "true" : "false"));
    } else {
      reps.field(std::string()).field(std::string()).field(std::string());
    }
    reps.field(rec.error);
    reps.end_row();
  }

  const std::filesystem::path dir(out_dir);
  CommandResult result;
  const std::string sweep_path = (dir / "sweep.csv").string();
  const std::string reps_path = (dir / "replicates.csv").string();
  const std::string meta_path = (dir / "meta.json").string();
  write_text_file(sweep_path, csv.str());
  write_text_file(reps_path, reps.str());
  result.files = {sweep_path, reps_path};
  if (spec.keep_trajectories) {
    CsvWriter traj({"variant", "lambda", "replicate", "time", "S", "I", "I_E", "W"});
    for (const ReplicateRecord& rec : res.records) {
      if (!rec.result) continue;
      for (const Checkpoint& c : rec.result->trajectory) {
        traj.field(std::string(variant_name(rec.variant)))
            .field(spec.lambda_grid[rec.grid_index])
            .field(rec.replicate);
        traj.field(c.time).field(c.s).field(c.i).field(c.ie).field(c.w);
        traj.end_row();
      }
    }
    const std::string traj_path = (dir / "trajectories.csv").string();
    write_text_file(traj_path, traj.str());
    result.files.push_back(traj_path);
  }
  json meta = meta_document(Command::kSweep, resolved_config(Command::kSweep, cfg),
                            spec.master_seed);
  meta["seed_rule"] = "derive_seed(master_seed, {variant, lambda_index, replicate})";
  write_text_file(meta_path, meta.dump(2) + "\n");
  result.files.push_back(meta_path);

  json s;
  s["rows"] = res.rows.size();
  s["sweep_csv"] = sweep_path;
  result.summary_json = s.dump();
  return result;
}

CommandResult do_validate(const Config& cfg, const std::string& out) {
  ValidationSpec spec;
  spec.params = resolve_params(cfg, true);
  spec.init = resolve_init(cfg);
  spec.replicates = replicates_of(cfg, 2);
  const SimOptions opts = sim_options(cfg);
  spec.threshold = opts.outbreak_threshold;
  spec.edge_attach = opts.edge_attach;
  spec.master_seed = cfg.get_u64("seed", 1);
  spec.workers = workers_of(cfg);
  const OracleComparison cmp = validate_against_oracle(spec);

  json j;
  j["ks_statistic"] = cmp.ks_statistic;
  j["ks_critical_1pct"] = cmp.ks_critical;
  j["mean_sim"] = cmp.mean_sim;
  j["mean_oracle"] = cmp.mean_oracle;
  j["stderr"] = cmp.stderr_pooled;
  j["ks_pass"] = cmp.ks_pass;
  j["mean_pass"] = cmp.mean_pass;
  j["pass"] = cmp.pass;
  j["multi_edge_frequency"] = cmp.multi_edge_frequency;
  j["replicates"] = spec.replicates;
  j["n"] = spec.params.n;

  CommandResult result;
  const std::string meta_path = meta_path_for(out);
  write_text_file(out, j.dump(2) + "\n");
  write_text_file(meta_path, meta_document(Command::kValidate,
                                           resolved_config(Command::kValidate, cfg),
                                           spec.master_seed)
                                     .dump(2) +
                                 "\n");
  result.files = {out, meta_path};
  result.summary_json = j.dump();
  return result;
}

}  // namespace

Config resolved_config(Command c, const Config& config) {
  Config cfg = config;
  switch (c) {
    case Command::kSimulate:
      fill(cfg, "seed", "1");
      fill(cfg, "replicates", "1");
      fill(cfg, "threshold", "0.005");
      fill(cfg, "checkpoint_stride", "100");
      fill(cfg, "edge_attach", "poisson");
      fill(cfg, "init.kind", "single");
      break;
    case Command::kOde:
      fill(cfg, "ode.init", "zero");
      break;
    case Command::kPhase:
      fill(cfg, "phase.offsets", "0.1,0.01,0.001");
      break;
    case Command::kSweep:
      fill(cfg, "seed", "1");
      fill(cfg, "replicates", "100");
      fill(cfg, "threshold", "0.005");
      fill(cfg, "edge_attach", "poisson");
      fill(cfg, "sweep.variants", "evoSIR,delSIR");
      fill(cfg, "sweep.save_trajectories", "false");
      fill(cfg, "checkpoint_stride", "100");
      // The grid supplies lambda; the base value only has to pass validation.
      if (!cfg.has("lambda") && cfg.has("sweep.lambda_grid")) {
        fill(cfg, "lambda", format_double(cfg.get_double_list("sweep.lambda_grid").front()));
      }
      break;
    case Command::kValidate:
      fill(cfg, "seed", "1");
      fill(cfg, "replicates", "2000");
      fill(cfg, "threshold", "0.005");
      fill(cfg, "edge_attach", "poisson");
      fill(cfg, "init.kind", "single");
      break;
  }
  return cfg;
}

CommandResult run_command(Command c, const Config& config, const std::string& out) {
  const Config cfg = resolved_config(c, config);
  const std::string path = out.empty() ? default_out(c) : out;
  switch (c) {
    case Command::kSimulate: return do_simulate(cfg, path);
    case Command::kOde: return do_ode(cfg, path);
    case Command::kPhase: return do_phase(cfg, path);
    case Command::kSweep: return do_sweep(cfg, path);
    case Command::kValidate: return do_validate(cfg, path);
  }
  throw Error(ErrorCode::kInternal, "unhandled subcommand");
}

}  // namespace sirw
