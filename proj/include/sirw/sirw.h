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

/* C interface to the sirw toolkit. Every fallible call returns a
 * sirw_status; on failure the message and offending key are available from
 * sirw_last_error_message() / sirw_last_error_key() on the calling thread
 * until the next failing call. Objects returned through out-pointers are
 * owned by the caller and released with the matching *_destroy function. */

#ifndef SIRW_SIRW_H_
#define SIRW_SIRW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SIRW_BUILDING_LIBRARY)
#define SIRW_API __declspec(dllexport)
#else
#define SIRW_API __declspec(dllimport)
#endif
#else
#define SIRW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sirw_status {
  SIRW_OK = 0,
  SIRW_ERR_INVALID_ARGUMENT = 1,
  SIRW_ERR_MISSING_KEY = 2,
  SIRW_ERR_DOMAIN = 3,
  SIRW_ERR_DEGENERATE_INITIAL = 4,
  SIRW_ERR_TERMINATED = 5,
  SIRW_ERR_SOLVER = 6,
  SIRW_ERR_UNSUPPORTED = 7,
  SIRW_ERR_IO = 8,
  SIRW_ERR_INTERNAL = 9
} sirw_status;

SIRW_API const char* sirw_version(void);
SIRW_API const char* sirw_status_name(sirw_status status);
/* Nonzero for errors caused by the caller's input rather than the run. */
SIRW_API int sirw_status_is_validation(sirw_status status);
SIRW_API const char* sirw_last_error_message(void);
SIRW_API const char* sirw_last_error_key(void);

typedef struct sirw_params {
  double lambda;
  double gamma;
  double omega;
  double alpha;
  double mu;
  int64_t n;
} sirw_params;

typedef enum sirw_init_kind {
  SIRW_INIT_SINGLE_SEED = 0,
  SIRW_INIT_POSITIVE_FRACTION = 1
} sirw_init_kind;

typedef struct sirw_init {
  sirw_init_kind kind;
  double i0_fraction;
} sirw_init;

SIRW_API sirw_status sirw_params_validate(const sirw_params* params);

/* ---- simulation ---- */

typedef enum sirw_edge_attach { SIRW_ATTACH_POISSON = 0, SIRW_ATTACH_BINOMIAL = 1 } sirw_edge_attach;

typedef struct sirw_sim_options {
  sirw_edge_attach edge_attach;
  double outbreak_threshold;
  int64_t checkpoint_stride;
  int time_changed; /* nonzero: run on the clock where S falls at unit speed */
} sirw_sim_options;

SIRW_API void sirw_sim_options_default(sirw_sim_options* options);

typedef struct sirw_checkpoint {
  double time;
  int64_t s;
  int64_t i;
  int64_t ie;
  int64_t w;
} sirw_checkpoint;

typedef enum sirw_event_kind {
  SIRW_EVENT_RECOVERY = 0,
  SIRW_EVENT_REWIRE_TO_INFECTED = 1,
  SIRW_EVENT_REWIRE_TO_SUSCEPTIBLE = 2,
  SIRW_EVENT_REWIRE_TO_RECOVERED = 3,
  SIRW_EVENT_DROP = 4,
  SIRW_EVENT_INFECTION = 5
} sirw_event_kind;

typedef struct sirw_sim_result sirw_sim_result;

/* options may be NULL for defaults. */
SIRW_API sirw_status sirw_simulate(const sirw_params* params, const sirw_init* init,
                                   uint64_t seed, const sirw_sim_options* options,
                                   sirw_sim_result** out);
/* Explicit-graph reference run on a fresh G(n, mu/n); n is capped. */
SIRW_API sirw_status sirw_simulate_explicit(const sirw_params* params, const sirw_init* init,
                                            uint64_t seed, const sirw_sim_options* options,
                                            sirw_sim_result** out);
SIRW_API void sirw_sim_result_destroy(sirw_sim_result* result);
SIRW_API int64_t sirw_sim_result_final_size(const sirw_sim_result* result);
SIRW_API double sirw_sim_result_terminal_time(const sirw_sim_result* result);
SIRW_API int sirw_sim_result_outbreak(const sirw_sim_result* result);
SIRW_API uint64_t sirw_sim_result_seed(const sirw_sim_result* result);
SIRW_API int64_t sirw_sim_result_event_count(const sirw_sim_result* result,
                                             sirw_event_kind kind);
SIRW_API size_t sirw_sim_result_trajectory_size(const sirw_sim_result* result);
SIRW_API sirw_status sirw_sim_result_checkpoint(const sirw_sim_result* result, size_t index,
                                                sirw_checkpoint* out);

SIRW_API uint64_t sirw_derive_seed(uint64_t master, const uint64_t* path, size_t path_len);

/* ---- time-changed limit ODE ---- */

typedef struct sirw_hat_initial {
  double s0;
  double i0;
  double ie0; /* i0 = ie0 = 0 with s0 = 1 selects the zero condition */
} sirw_hat_initial;

typedef struct sirw_ode_options {
  double rel_tol;
  double abs_tol;
  double max_step; /* <= 0: automatic */
} sirw_ode_options;

typedef struct sirw_ode_point {
  double t;
  double s;
  double i;
  double ie;
  double w;
} sirw_ode_point;

typedef struct sirw_ode_solution sirw_ode_solution;

SIRW_API void sirw_ode_options_default(sirw_ode_options* options);
/* Deterministic limit of a simulator initial condition. */
SIRW_API sirw_status sirw_hat_initial_from(const sirw_params* params, const sirw_init* init,
                                           sirw_hat_initial* out);
/* options may be NULL. */
SIRW_API sirw_status sirw_ode_solve(const sirw_params* params, const sirw_hat_initial* init,
                                    const sirw_ode_options* options, sirw_ode_solution** out);
SIRW_API void sirw_ode_solution_destroy(sirw_ode_solution* solution);
SIRW_API double sirw_ode_t_star(const sirw_ode_solution* solution);
SIRW_API double sirw_ode_final_size_fraction(const sirw_ode_solution* solution);
SIRW_API double sirw_ode_f_at_t_star(const sirw_ode_solution* solution);
SIRW_API size_t sirw_ode_size(const sirw_ode_solution* solution);
SIRW_API sirw_status sirw_ode_point_at(const sirw_ode_solution* solution, size_t index,
                                       sirw_ode_point* out);
/* Interpolated state for t in [0, t_star]. */
SIRW_API sirw_status sirw_ode_eval(const sirw_ode_solution* solution, double t,
                                   sirw_ode_point* out);
SIRW_API sirw_status sirw_w_closed_form(const sirw_params* params, double t, double s0,
                                        double* out);

/* ---- phase diagnostics ---- */

typedef struct sirw_phase_report {
  double lambda_c;
  int discontinuous;
  int bb_sufficient_continuity;
  int gamma_zero_flag;
  double f0;
  double fprime0;
  char triggering_clause[128];
} sirw_phase_report;

typedef enum sirw_outbreak_model {
  SIRW_OUTBREAK_STATIC_SIR = 0,
  SIRW_OUTBREAK_EVO_SIR = 1
} sirw_outbreak_model;

SIRW_API sirw_status sirw_lambda_c(const sirw_params* params, double* out);
SIRW_API sirw_status sirw_classify_transition(const sirw_params* params, sirw_phase_report* out);
/* out[0..2] = F, F', F''. */
SIRW_API sirw_status sirw_f_function(const sirw_params* params, double t, double s0,
                                     double out[3]);
SIRW_API sirw_status sirw_outbreak_probability(const sirw_params* params,
                                               sirw_outbreak_model model, double* out);
/* t_star_out[k] for lambda = lambda_c (1 + deltas[k]); *bounded_away set to 1
 * when t_* at the smallest delta stays above the jump threshold. */
SIRW_API sirw_status sirw_jump_profile(const sirw_params* params, const double* deltas,
                                       size_t count, double* t_star_out, int* bounded_away);

/* ---- configuration and subcommands ---- */

typedef struct sirw_config sirw_config;
typedef struct sirw_string sirw_string;

typedef enum sirw_command {
  SIRW_CMD_SIMULATE = 0,
  SIRW_CMD_ODE = 1,
  SIRW_CMD_PHASE = 2,
  SIRW_CMD_SWEEP = 3,
  SIRW_CMD_VALIDATE = 4
} sirw_command;

SIRW_API sirw_status sirw_config_create(sirw_config** out);
SIRW_API void sirw_config_destroy(sirw_config* config);
/* Merges a key=value or JSON file; keys already set are overwritten. */
SIRW_API sirw_status sirw_config_load_file(sirw_config* config, const char* path);
/* Overlays SIRW_* environment variables. */
SIRW_API sirw_status sirw_config_apply_env(sirw_config* config);
SIRW_API sirw_status sirw_config_set(sirw_config* config, const char* key, const char* value);
/* *value is NULL when unset; valid until the config is next modified. */
SIRW_API sirw_status sirw_config_get(const sirw_config* config, const char* key,
                                     const char** value);
SIRW_API sirw_status sirw_config_resolve_params(const sirw_config* config, int need_n,
                                                sirw_params* out);
/* Number of known keys and their names, for help output. */
SIRW_API size_t sirw_config_key_count(void);
SIRW_API const char* sirw_config_key_name(size_t index);
SIRW_API const char* sirw_config_key_help(size_t index);

SIRW_API sirw_status sirw_command_parse(const char* name, sirw_command* out);
SIRW_API const char* sirw_command_default_out(sirw_command command);
/* out_path NULL or empty selects the default. summary may be NULL. */
SIRW_API sirw_status sirw_run_command(sirw_command command, const sirw_config* config,
                                      const char* out_path, sirw_string** summary);

SIRW_API const char* sirw_string_data(const sirw_string* s);
SIRW_API void sirw_string_destroy(sirw_string* s);

#ifdef __cplusplus
}
#endif

#endif /* SIRW_SIRW_H_ */
