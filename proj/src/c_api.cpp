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

#include "sirw/sirw.h"

#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <string>

#include "sirw/commands.hpp"
#include "sirw/config.hpp"
#include "sirw/error.hpp"
#include "sirw/oracle.hpp"
#include "sirw/phase.hpp"
#include "sirw/rng.hpp"
#include "sirw/sim.hpp"

struct sirw_sim_result {
  sirw::SimResult value;
};

struct sirw_ode_solution {
  sirw::OdeSolution value;
};

struct sirw_config {
  sirw::Config value;
};

struct sirw_string {
  std::string value;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_key;

sirw_status fail(sirw_status status, const std::string& message, const std::string& key = {}) {
  g_message = message;
  g_key = key;
  return status;
}

template <typename Fn>
sirw_status guarded(Fn&& fn) {
  try {
    fn();
    return SIRW_OK;
  } catch (const sirw::Error& e) {
    return fail(static_cast<sirw_status>(e.code()), e.what(), e.key());
  } catch (const std::bad_alloc&) {
    return fail(SIRW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SIRW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SIRW_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) {
    throw sirw::Error(sirw::ErrorCode::kInvalidArgument, std::string(name) + " is NULL", name);
  }
}

sirw::ModelParams to_params(const sirw_params* p) {
  need(p, "params");
  return {p->lambda, p->gamma, p->omega, p->alpha, p->mu, p->n};
}

sirw::InitialCondition to_init(const sirw_init* init) {
  if (init == nullptr) return sirw::InitialCondition::single_seed();
  if (init->kind == SIRW_INIT_POSITIVE_FRACTION) {
    return sirw::InitialCondition::positive(init->i0_fraction);
  }
  if (init->kind != SIRW_INIT_SINGLE_SEED) {
    throw sirw::Error(sirw::ErrorCode::kInvalidArgument, "unknown init kind", "init.kind");
  }
  return sirw::InitialCondition::single_seed();
}

sirw::SimOptions to_options(const sirw_sim_options* o) {
  sirw::SimOptions out;
  if (o == nullptr) return out;
  out.edge_attach = o->edge_attach == SIRW_ATTACH_BINOMIAL ? sirw::EdgeAttach::kBinomial
                                                           : sirw::EdgeAttach::kPoisson;
  out.outbreak_threshold = o->outbreak_threshold;
  out.checkpoint_stride = o->checkpoint_stride;
  return out;
}

sirw::OdeOptions to_ode_options(const sirw_ode_options* o) {
  sirw::OdeOptions out;
  if (o == nullptr) return out;
  out.rel_tol = o->rel_tol;
  out.abs_tol = o->abs_tol;
  out.max_step = o->max_step;
  return out;
}

}  // namespace

extern "C" {

const char* sirw_version(void) { return sirw::toolkit_version(); }

const char* sirw_status_name(sirw_status status) {
  if (status == SIRW_OK) return "ok";
  if (status < SIRW_ERR_INVALID_ARGUMENT || status > SIRW_ERR_INTERNAL) return "unknown";
  return sirw::error_code_name(static_cast<sirw::ErrorCode>(status));
}

int sirw_status_is_validation(sirw_status status) {
  if (status < SIRW_ERR_INVALID_ARGUMENT || status > SIRW_ERR_INTERNAL) return 0;
  return sirw::is_validation_error(static_cast<sirw::ErrorCode>(status)) ? 1 : 0;
}

const char* sirw_last_error_message(void) { return g_message.c_str(); }
const char* sirw_last_error_key(void) { return g_key.c_str(); }

sirw_status sirw_params_validate(const sirw_params* params) {
  return guarded([&] { sirw::require_valid(to_params(params)); });
}

void sirw_sim_options_default(sirw_sim_options* options) {
  if (options == nullptr) return;
  const sirw::SimOptions d;
  options->edge_attach = SIRW_ATTACH_POISSON;
  options->outbreak_threshold = d.outbreak_threshold;
  options->checkpoint_stride = d.checkpoint_stride;
  options->time_changed = 0;
}

sirw_status sirw_simulate(const sirw_params* params, const sirw_init* init, uint64_t seed,
                          const sirw_sim_options* options, sirw_sim_result** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const bool time_changed = options != nullptr && options->time_changed != 0;
    const auto p = to_params(params);
    const auto i = to_init(init);
    const auto o = to_options(options);
    auto* r = new sirw_sim_result{time_changed ? sirw::run_time_changed(p, i, seed, o)
                                               : sirw::run(p, i, seed, o)};
    *out = r;
  });
}

sirw_status sirw_simulate_explicit(const sirw_params* params, const sirw_init* init,
                                   uint64_t seed, const sirw_sim_options* options,
                                   sirw_sim_result** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const auto p = to_params(params);
    sirw::require_valid(p);
    if (p.n > sirw::kMaxExplicitVertices) {
      throw sirw::Error(sirw::ErrorCode::kUnsupported, "explicit-graph oracle caps n", "n");
    }
    sirw::Rng rng(seed);
    const auto g = sirw::generate_er(p.n, p.mu, rng);
    auto res = sirw::run_explicit(g, p, to_init(init), rng, to_options(options));
    res.sim.seed = seed;
    *out = new sirw_sim_result{std::move(res.sim)};
  });
}

void sirw_sim_result_destroy(sirw_sim_result* result) { delete result; }

int64_t sirw_sim_result_final_size(const sirw_sim_result* r) {
  return r ? r->value.final_size : 0;
}
double sirw_sim_result_terminal_time(const sirw_sim_result* r) {
  return r ? r->value.terminal_time : 0.0;
}
int sirw_sim_result_outbreak(const sirw_sim_result* r) { return r && r->value.outbreak ? 1 : 0; }
uint64_t sirw_sim_result_seed(const sirw_sim_result* r) { return r ? r->value.seed : 0; }

int64_t sirw_sim_result_event_count(const sirw_sim_result* r, sirw_event_kind kind) {
  if (r == nullptr || kind < 0 || static_cast<std::size_t>(kind) >= sirw::kEventKindCount) {
    return 0;
  }
  return r->value.event_counts[static_cast<std::size_t>(kind)];
}

size_t sirw_sim_result_trajectory_size(const sirw_sim_result* r) {
  return r ? r->value.trajectory.size() : 0;
}

sirw_status sirw_sim_result_checkpoint(const sirw_sim_result* r, size_t index,
                                       sirw_checkpoint* out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    if (index >= r->value.trajectory.size()) {
      throw sirw::Error(sirw::ErrorCode::kInvalidArgument, "checkpoint index out of range",
                        "index");
    }
    const auto& c = r->value.trajectory[index];
    *out = {c.time, c.s, c.i, c.ie, c.w};
  });
}

uint64_t sirw_derive_seed(uint64_t master, const uint64_t* path, size_t path_len) {
  if (path == nullptr) path_len = 0;
  return sirw::derive_seed(master, std::span<const std::uint64_t>(path, path_len));
}

void sirw_ode_options_default(sirw_ode_options* options) {
  if (options == nullptr) return;
  const sirw::OdeOptions d;
  options->rel_tol = d.rel_tol;
  options->abs_tol = d.abs_tol;
  options->max_step = d.max_step;
}

sirw_status sirw_hat_initial_from(const sirw_params* params, const sirw_init* init,
                                  sirw_hat_initial* out) {
  return guarded([&] {
    need(out, "out");
    const auto h = sirw::HatInitial::from(to_init(init), to_params(params));
    *out = {h.s0, h.i0, h.ie0};
  });
}

sirw_status sirw_ode_solve(const sirw_params* params, const sirw_hat_initial* init,
                           const sirw_ode_options* options, sirw_ode_solution** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(init, "init");
    const auto h = sirw::HatInitial::positive(init->s0, init->i0, init->ie0);
    auto sol = sirw::solve_hat(to_params(params), h.is_zero() ? sirw::HatInitial::zero() : h,
                               to_ode_options(options));
    *out = new sirw_ode_solution{std::move(sol)};
  });
}

void sirw_ode_solution_destroy(sirw_ode_solution* s) { delete s; }
double sirw_ode_t_star(const sirw_ode_solution* s) { return s ? s->value.t_star : 0.0; }
double sirw_ode_final_size_fraction(const sirw_ode_solution* s) {
  return s ? s->value.final_size_fraction : 0.0;
}
double sirw_ode_f_at_t_star(const sirw_ode_solution* s) { return s ? s->value.f_at_tstar : 0.0; }
size_t sirw_ode_size(const sirw_ode_solution* s) { return s ? s->value.size() : 0; }

sirw_status sirw_ode_point_at(const sirw_ode_solution* s, size_t index, sirw_ode_point* out) {
  return guarded([&] {
    need(s, "solution");
    need(out, "out");
    const auto& v = s->value;
    if (index >= v.size()) {
      throw sirw::Error(sirw::ErrorCode::kInvalidArgument, "grid index out of range", "index");
    }
    *out = {v.grid[index], v.s[index], v.i[index], v.ie[index], v.w[index]};
  });
}

sirw_status sirw_ode_eval(const sirw_ode_solution* s, double t, sirw_ode_point* out) {
  return guarded([&] {
    need(s, "solution");
    need(out, "out");
    const auto p = s->value.at(t);
    *out = {p.t, p.s, p.i, p.ie, p.w};
  });
}

sirw_status sirw_w_closed_form(const sirw_params* params, double t, double s0, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = sirw::w_closed_form(t, s0, to_params(params));
  });
}

sirw_status sirw_lambda_c(const sirw_params* params, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = sirw::lambda_c(to_params(params));
  });
}

sirw_status sirw_classify_transition(const sirw_params* params, sirw_phase_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = sirw::classify_transition(to_params(params));
    out->lambda_c = r.lambda_c;
    out->discontinuous = r.classification == sirw::Transition::kDiscontinuous ? 1 : 0;
    out->bb_sufficient_continuity = r.bb_sufficient_continuity ? 1 : 0;
    out->gamma_zero_flag = r.gamma_zero_flag ? 1 : 0;
    out->f0 = r.f0;
    out->fprime0 = r.fprime0;
    std::memset(out->triggering_clause, 0, sizeof out->triggering_clause);
    std::strncpy(out->triggering_clause, r.triggering_clause.c_str(),
                 sizeof out->triggering_clause - 1);
  });
}

sirw_status sirw_f_function(const sirw_params* params, double t, double s0, double out[3]) {
  return guarded([&] {
    need(out, "out");
    const auto f = sirw::f_function(t, to_params(params), s0);
    out[0] = f.f;
    out[1] = f.fprime;
    out[2] = f.fsecond;
  });
}

sirw_status sirw_outbreak_probability(const sirw_params* params, sirw_outbreak_model model,
                                      double* out) {
  return guarded([&] {
    need(out, "out");
    *out = sirw::outbreak_probability(to_params(params), model == SIRW_OUTBREAK_EVO_SIR
                                                             ? sirw::OutbreakModel::kEvoSir
                                                             : sirw::OutbreakModel::kStaticSir);
  });
}

sirw_status sirw_jump_profile(const sirw_params* params, const double* deltas, size_t count,
                              double* t_star_out, int* bounded_away) {
  return guarded([&] {
    need(deltas, "deltas");
    need(t_star_out, "t_star_out");
    const auto prof =
        sirw::jump_profile(to_params(params), std::vector<double>(deltas, deltas + count));
    for (size_t k = 0; k < prof.rows.size(); ++k) t_star_out[k] = prof.rows[k].t_star;
    if (bounded_away) *bounded_away = prof.verdict == sirw::JumpVerdict::kBoundedAway ? 1 : 0;
  });
}

sirw_status sirw_config_create(sirw_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sirw_config{};
  });
}

void sirw_config_destroy(sirw_config* config) { delete config; }

sirw_status sirw_config_load_file(sirw_config* config, const char* path) {
  return guarded([&] {
    need(config, "config");
    need(path, "path");
    const auto loaded = sirw::Config::from_file(path);
    for (const auto& [k, v] : loaded.values()) config->value.set(k, v);
  });
}

sirw_status sirw_config_apply_env(sirw_config* config) {
  return guarded([&] {
    need(config, "config");
    config->value.apply_env();
  });
}

sirw_status sirw_config_set(sirw_config* config, const char* key, const char* value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    config->value.set(key, value);
  });
}

sirw_status sirw_config_get(const sirw_config* config, const char* key, const char** value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    const auto& m = config->value.values();
    const auto it = m.find(key);
    *value = it == m.end() ? nullptr : it->second.c_str();
  });
}

sirw_status sirw_config_resolve_params(const sirw_config* config, int need_n, sirw_params* out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    const auto p = sirw::resolve_params(config->value, need_n != 0);
    *out = {p.lambda, p.gamma, p.omega, p.alpha, p.mu, p.n};
  });
}

size_t sirw_config_key_count(void) { return sirw::known_keys().size(); }

const char* sirw_config_key_name(size_t index) {
  const auto& keys = sirw::known_keys();
  return index < keys.size() ? keys[index].name : nullptr;
}

const char* sirw_config_key_help(size_t index) {
  const auto& keys = sirw::known_keys();
  return index < keys.size() ? keys[index].help : nullptr;
}

sirw_status sirw_command_parse(const char* name, sirw_command* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<sirw_command>(sirw::parse_command(name));
  });
}

const char* sirw_command_default_out(sirw_command command) {
  static const std::string outs[] = {
      sirw::default_out(sirw::Command::kSimulate), sirw::default_out(sirw::Command::kOde),
      sirw::default_out(sirw::Command::kPhase), sirw::default_out(sirw::Command::kSweep),
      sirw::default_out(sirw::Command::kValidate)};
  if (command < SIRW_CMD_SIMULATE || command > SIRW_CMD_VALIDATE) return "";
  return outs[command].c_str();
}

sirw_status sirw_run_command(sirw_command command, const sirw_config* config,
                             const char* out_path, sirw_string** summary) {
  return guarded([&] {
    need(config, "config");
    if (summary) *summary = nullptr;
    if (command < SIRW_CMD_SIMULATE || command > SIRW_CMD_VALIDATE) {
      throw sirw::Error(sirw::ErrorCode::kInvalidArgument, "unknown command", "subcommand");
    }
    auto res = sirw::run_command(static_cast<sirw::Command>(command), config->value,
                                 out_path ? out_path : "");
    if (summary) *summary = new sirw_string{std::move(res.summary_json)};
  });
}

const char* sirw_string_data(const sirw_string* s) { return s ? s->value.c_str() : ""; }
void sirw_string_destroy(sirw_string* s) { delete s; }

}  // extern "C"
