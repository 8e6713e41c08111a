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

// Command-line front end. Talks to the toolkit only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sirw/sirw.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void print_error(const std::string& code, const std::string& message, const std::string& key) {
  nlohmann::json j;
  j["code"] = code;
  j["message"] = message;
  j["key"] = key;
  std::cerr << j.dump() << '\n';
}

int report(sirw_status status) {
  print_error(sirw_status_name(status), sirw_last_error_message(), sirw_last_error_key());
  return sirw_status_is_validation(status) ? kExitValidation : kExitRuntime;
}

struct ConfigDeleter {
  void operator()(sirw_config* c) const { sirw_config_destroy(c); }
};

// Flag values are stored as strings under config keys; they are applied
// after the file and environment layers.
struct Invocation {
  std::string config_path;
  std::string out;
  std::vector<std::string> overrides;  // key=value
  std::map<std::string, std::string> flags;
  bool quiet = false;
};

void add_key_flag(CLI::App* app, Invocation& inv, const std::string& flag,
                  const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
         flag, [&inv, key](const std::string& v) { inv.flags[key] = v; }, help)
      ->type_name("VALUE");
}

void add_model_flags(CLI::App* app, Invocation& inv) {
  add_key_flag(app, inv, "--lambda", "lambda", "infection rate per S-I edge");
  add_key_flag(app, inv, "--gamma", "gamma", "recovery rate");
  add_key_flag(app, inv, "--omega", "omega", "break rate per S-I edge");
  add_key_flag(app, inv, "--alpha", "alpha", "rewiring probability");
  add_key_flag(app, inv, "--mu", "mu", "mean degree");
  add_key_flag(app, inv, "--workers", "workers", "worker threads");
}

void add_common(CLI::App* app, Invocation& inv, const std::string& out_flag) {
  app->add_option("--config", inv.config_path, "key=value or meta.json file");
  app->add_option(out_flag, inv.out, "output path");
  app->add_option("--set", inv.overrides, "extra key=value override (repeatable)");
  app->add_flag("-q,--quiet", inv.quiet, "do not print the summary");
  add_model_flags(app, inv);
}

int execute(sirw_command command, const Invocation& inv) {
  sirw_config* raw = nullptr;
  if (sirw_status st = sirw_config_create(&raw); st != SIRW_OK) return report(st);
  std::unique_ptr<sirw_config, ConfigDeleter> cfg(raw);

  if (!inv.config_path.empty()) {
    if (sirw_status st = sirw_config_load_file(cfg.get(), inv.config_path.c_str());
        st != SIRW_OK) {
      return report(st);
    }
  }
  if (sirw_status st = sirw_config_apply_env(cfg.get()); st != SIRW_OK) return report(st);
  for (const auto& kv : inv.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      print_error("invalid_argument", "--set expects key=value", "set");
      return kExitValidation;
    }
    if (sirw_status st =
            sirw_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        st != SIRW_OK) {
      return report(st);
    }
  }
  for (const auto& [key, value] : inv.flags) {
    if (sirw_status st = sirw_config_set(cfg.get(), key.c_str(), value.c_str()); st != SIRW_OK) {
      return report(st);
    }
  }

  sirw_string* summary = nullptr;
  const sirw_status st = sirw_run_command(command, cfg.get(), inv.out.c_str(), &summary);
  if (st != SIRW_OK) return report(st);
  if (!inv.quiet) std::cout << sirw_string_data(summary) << '\n';
  sirw_string_destroy(summary);
  return kExitOk;
}

std::string key_list() {
  std::string out = "Config keys (env: SIRW_<KEY> with '.' -> '_'):\n";
  for (size_t k = 0; k < sirw_config_key_count(); ++k) {
    out += "  ";
    out += sirw_config_key_name(k);
    out += "  ";
    out += sirw_config_key_help(k);
    out += '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and limit-ODE toolkit for SIR with edge breaking and rewiring"};
  app.set_version_flag("--version", std::string(sirw_version()));
  app.footer(key_list());
  app.require_subcommand(1);

  Invocation sim, ode, phase, sweep, validate;

  CLI::App* c_sim = app.add_subcommand("simulate", "run the reduced stochastic simulator");
  add_common(c_sim, sim, "--out");
  add_key_flag(c_sim, sim, "--n", "n", "population size");
  add_key_flag(c_sim, sim, "--seed", "seed", "master seed");
  add_key_flag(c_sim, sim, "--replicates", "replicates", "number of runs");
  add_key_flag(c_sim, sim, "--threshold", "threshold", "outbreak threshold fraction");
  add_key_flag(c_sim, sim, "--checkpoint-stride", "checkpoint_stride", "events per checkpoint");
  add_key_flag(c_sim, sim, "--init-kind", "init.kind", "single | positive");
  add_key_flag(c_sim, sim, "--i0-fraction", "init.i0_fraction", "initial infected fraction");
  add_key_flag(c_sim, sim, "--edge-attach", "edge_attach", "poisson | binomial");

  CLI::App* c_ode = app.add_subcommand("ode", "solve the time-changed limit ODE");
  add_common(c_ode, ode, "--out");
  add_key_flag(c_ode, ode, "--init", "ode.init", "zero | positive:<i0>");

  CLI::App* c_phase = app.add_subcommand("phase", "critical rate, transition type, jump profile");
  add_common(c_phase, phase, "--out");
  add_key_flag(c_phase, phase, "--offsets", "phase.offsets", "comma list of delta");

  CLI::App* c_sweep = app.add_subcommand("sweep", "final size across a lambda grid");
  add_common(c_sweep, sweep, "--out-dir");
  add_key_flag(c_sweep, sweep, "--n", "n", "population size");
  add_key_flag(c_sweep, sweep, "--seed", "seed", "master seed");
  add_key_flag(c_sweep, sweep, "--lambda-grid", "sweep.lambda_grid",
               "comma list or start:stop:count");
  add_key_flag(c_sweep, sweep, "--replicates", "replicates", "runs per grid point");
  add_key_flag(c_sweep, sweep, "--variants", "sweep.variants", "evoSIR,delSIR,custom");
  add_key_flag(c_sweep, sweep, "--threshold", "threshold", "outbreak threshold fraction");
  c_sweep->add_flag_function(
      "--save-trajectories",
      [&sweep](std::int64_t) { sweep.flags["sweep.save_trajectories"] = "true"; },
      "also write trajectories.csv");

  CLI::App* c_val = app.add_subcommand("validate", "compare simulator and explicit-graph oracle");
  add_common(c_val, validate, "--out");
  add_key_flag(c_val, validate, "--n", "n", "population size");
  add_key_flag(c_val, validate, "--seed", "seed", "master seed");
  add_key_flag(c_val, validate, "--replicates", "replicates", "runs per ensemble");
  add_key_flag(c_val, validate, "--threshold", "threshold", "outbreak threshold fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("invalid_argument", e.what(), "argv");
    return kExitValidation;
  }

  if (c_sim->parsed()) return execute(SIRW_CMD_SIMULATE, sim);
  if (c_ode->parsed()) return execute(SIRW_CMD_ODE, ode);
  if (c_phase->parsed()) return execute(SIRW_CMD_PHASE, phase);
  if (c_sweep->parsed()) return execute(SIRW_CMD_SWEEP, sweep);
  if (c_val->parsed()) return execute(SIRW_CMD_VALIDATE, validate);
  return kExitValidation;
}
