// Copyright 2026 The hubvqe Authors.
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

#ifndef HUBVQE_HUBVQE_H_
#define HUBVQE_HUBVQE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HUBVQE_BUILDING_LIBRARY)
#define HUBVQE_API __attribute__((visibility("default")))
#else
#define HUBVQE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure hubvqe_last_error() holds
 * a message for the calling thread until its next failing call. */
typedef enum hubvqe_status {
  HUBVQE_OK = 0,
  HUBVQE_ERR_INPUT = 1,       /* invalid argument */
  HUBVQE_ERR_RESOURCE = 2,    /* exceeds a configured cap */
  HUBVQE_ERR_UNSUPPORTED = 3, /* operation undefined for the instance */
  HUBVQE_ERR_PARSE = 4,       /* malformed file or text */
  HUBVQE_ERR_IO = 5,          /* filesystem failure */
  HUBVQE_ERR_BUDGET = 6,      /* termination policy exhausted */
  HUBVQE_ERR_INTERNAL = 7
} hubvqe_status;

typedef enum hubvqe_stop_reason {
  HUBVQE_STOP_BUDGET = 0,
  HUBVQE_STOP_WALLCLOCK = 1,
  HUBVQE_STOP_CONVERGED = 2,
  HUBVQE_STOP_FAILED = 3
} hubvqe_stop_reason;

HUBVQE_API const char* hubvqe_last_error(void);
HUBVQE_API const char* hubvqe_version(void);
HUBVQE_API const char* hubvqe_stop_reason_name(int reason);

/* Strings are returned through (buf, cap, needed): `needed` receives the
 * length without terminator; the call fails with HUBVQE_ERR_INPUT when
 * cap <= needed, so callers can size a buffer with cap = 0 first. */

/* ---- instances ---- */

typedef struct hubvqe_instance hubvqe_instance;

HUBVQE_API hubvqe_status hubvqe_instance_create(int rows, int cols, double t, double u, int n_up, int n_down,
                                                int nlayers, int nshots, hubvqe_instance** out);
/* Accepts benchmark ids (b1_..., sw_...) and any well-formed instance id. */
HUBVQE_API hubvqe_status hubvqe_instance_from_id(const char* id, hubvqe_instance** out);
HUBVQE_API void hubvqe_instance_destroy(hubvqe_instance* inst);
HUBVQE_API hubvqe_status hubvqe_instance_id(const hubvqe_instance* inst, char* buf, size_t cap, size_t* needed);
HUBVQE_API hubvqe_status hubvqe_instance_num_params(const hubvqe_instance* inst, int* out);
HUBVQE_API hubvqe_status hubvqe_instance_num_qubits(const hubvqe_instance* inst, int* out);
HUBVQE_API hubvqe_status hubvqe_initial_parameters(const hubvqe_instance* inst, double* out, size_t n);
HUBVQE_API hubvqe_status hubvqe_exact_energy(const hubvqe_instance* inst, const double* params, size_t n,
                                             double* out);

/* Ground energy in the instance's particle-number sector. A non-NULL
 * cache_path names a ground_energies.csv sidecar consulted and extended. */
HUBVQE_API hubvqe_status hubvqe_ground_energy(const hubvqe_instance* inst, const char* cache_path, double* out);

/* Newline-separated instance ids for a benchmark list ("1,2", "all") or
 * "sweep" for the sweeping set. */
HUBVQE_API hubvqe_status hubvqe_list_instances(const char* which, char* buf, size_t cap, size_t* needed);

/* ---- cost functions ---- */

typedef struct hubvqe_cost hubvqe_cost;

/* exact != 0 selects the noiseless cost; nshots <= 0 uses the instance's. */
HUBVQE_API hubvqe_status hubvqe_cost_create(const hubvqe_instance* inst, int exact, uint64_t seed, int64_t nshots,
                                            hubvqe_cost** out);
HUBVQE_API void hubvqe_cost_destroy(hubvqe_cost* cost);
/* Any of the output pointers may be NULL. */
HUBVQE_API hubvqe_status hubvqe_cost_evaluate(hubvqe_cost* cost, const double* params, size_t n, double* value,
                                              double* std_error, int64_t* nmeas, double* exact_value);

/* ---- optimizer runs ---- */

typedef struct hubvqe_run_options {
  const char* optimizer;        /* registry name, e.g. "spsa", "adam", "qng-nat" */
  const char* gradient;         /* NULL, "fd", "sp" or "exact" */
  double gradient_step;         /* <= 0: the gradient's default step */
  const char* hparams_json;     /* NULL: defaults; else a JSON object */
  uint64_t seed;
  int64_t max_calls;
  double max_wall_seconds;
  int exact_cost;               /* nonzero: noiseless cost function */
  int record_time;              /* zero writes 0.0 into the time column */
  const char* external_command; /* for optimizer "external" */
} hubvqe_run_options;

typedef struct hubvqe_run_result {
  double best_value;
  int64_t calls;
  int64_t iterations;
  int stop_reason; /* hubvqe_stop_reason */
} hubvqe_run_result;

HUBVQE_API void hubvqe_run_options_init(hubvqe_run_options* opts);
/* Names of the native optimizers, newline separated. */
HUBVQE_API hubvqe_status hubvqe_list_optimizers(char* buf, size_t cap, size_t* needed);
/* Runs one optimizer and writes the trace to csv_path (NULL: no file). */
HUBVQE_API hubvqe_status hubvqe_run(const hubvqe_instance* inst, const hubvqe_run_options* opts,
                                    const char* csv_path, hubvqe_run_result* out);
/* File name {label}_{hparamset}_{instance}_{seed}.csv for the options. */
HUBVQE_API hubvqe_status hubvqe_run_file_name(const hubvqe_instance* inst, const hubvqe_run_options* opts, char* buf,
                                              size_t cap, size_t* needed);

/* ---- gradient step-size sweep ---- */

typedef struct hubvqe_step_sweep_options {
  int points;
  int eps_count;
  double eps_min;
  double eps_step;
  int64_t nshots; /* <= 0: the instance's */
  uint64_t seed;
  int jobs;
} hubvqe_step_sweep_options;

HUBVQE_API void hubvqe_step_sweep_options_init(hubvqe_step_sweep_options* opts);
/* points_csv gets point,best_eps,err_at_best; curve_csv (optional) gets the
 * mean error per step size. */
HUBVQE_API hubvqe_status hubvqe_step_sweep(const hubvqe_instance* inst, const hubvqe_step_sweep_options* opts,
                                           const char* points_csv, const char* curve_csv, double* mean_best_eps);

/* ---- hyperparameter sweep ---- */

/* Random search on one instance (instance_id) or on every sweeping instance
 * (instance_id NULL). Writes trials_{optimizer}_{instance}.csv per instance
 * and hparams_{optimizer}.json with the carried sets into out_dir. */
HUBVQE_API hubvqe_status hubvqe_sweep_hparams(const char* optimizer, const char* gradient, const char* instance_id,
                                              int trials, int64_t eval_budget, uint64_t seed, int jobs,
                                              const char* out_dir);

/* ---- campaigns ---- */

typedef struct hubvqe_campaign_options {
  const char* benchmarks; /* "1,2" or "all" */
  const char* optimizers; /* "all" or comma-separated registry names */
  int seeds;
  uint64_t master_seed;
  int presets; /* nonzero: carry the tabled swept sets besides defaults */
  int64_t max_calls;
  double max_wall_seconds;
  int record_time;
  int jobs;
  int max_qubits;
  const char* out_dir;
  const char* instances; /* NULL or comma-separated instance ids; overrides benchmarks */
} hubvqe_campaign_options;

typedef struct hubvqe_campaign_stats {
  int64_t planned, ran, skipped, failed;
} hubvqe_campaign_stats;

HUBVQE_API void hubvqe_campaign_options_init(hubvqe_campaign_options* opts);
HUBVQE_API hubvqe_status hubvqe_campaign(const hubvqe_campaign_options* opts, hubvqe_campaign_stats* out);

/* Noiseless-suite run on exact costs; writes one row per instance. */
HUBVQE_API hubvqe_status hubvqe_expressivity(const char* benchmarks, int max_qubits, int64_t max_calls,
                                             const char* external_commands, int jobs, const char* out_csv);

/* ---- analysis ---- */

typedef struct hubvqe_analyze_stats {
  int64_t runs, incomplete, unmatched;
} hubvqe_analyze_stats;

HUBVQE_API hubvqe_status hubvqe_analyze(const char* runs_dir, const char* out_dir, const double* tolerances,
                                        size_t ntol, hubvqe_analyze_stats* out);

#ifdef __cplusplus
}
#endif

#endif  /* HUBVQE_HUBVQE_H_ */
