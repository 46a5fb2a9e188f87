// Copyright 2026 The superrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the superrep library. Every call returns an srp_status;
 * on failure srp_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Strings returned through
 * char** are owned by the caller and released with srp_string_free. */

#ifndef SUPERREP_SUPERREP_H
#define SUPERREP_SUPERREP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SRP_API __declspec(dllexport)
#else
#define SRP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srp_status {
    SRP_OK = 0,
    SRP_INVALID_ARGUMENT = 1,
    SRP_NUMERICAL = 2,
    SRP_IO = 3,
    SRP_UNIDENTIFIABLE = 4,
    SRP_IMPOSSIBLE_OUTCOME = 5,
    SRP_CAPACITY = 6,
    SRP_INVALID_CONFIG = 7,
    SRP_INTERNAL = 8
} srp_status;

SRP_API const char *srp_version(void);
SRP_API const char *srp_last_error(void);
SRP_API const char *srp_status_name(srp_status status);
SRP_API void srp_string_free(char *s);

/* Two-qubit replication fidelities and baselines. */
SRP_API srp_status srp_fidelity_replicas(double phi, double *out);
SRP_API srp_status srp_twirled_mean_fidelity(int grid, double phi, double *out);
SRP_API srp_status srp_baseline_single_copy(double phi, double *out);
SRP_API srp_status srp_baseline_single_copy_mean(int grid, double *out);
SRP_API srp_status srp_baseline_measure_prepare(int intervals, double *out);
SRP_API srp_status srp_optimal_cloner_fidelity(double phi, double *out);
SRP_API srp_status srp_optimal_cloner_mean_fidelity(int grid, double *out);

/* N -> M superreplication. */
SRP_API srp_status srp_replication_fidelity(int copies, int replicas, double phi, double *out);
SRP_API srp_status srp_replication_fidelity_dense(int copies, int replicas, double phi, double *out);
/* Writes the basis permutation of V; `len` must equal 2^(copies + replicas). */
SRP_API srp_status srp_build_v(int copies, int replicas, uint64_t *image, size_t len);
/* Worst case over a uniform grid of `phase_points` phases on [0, 2pi). */
SRP_API srp_status srp_worst_case_fidelity(int copies, int replicas, int phase_points, double *worst_phi,
                                           double *worst_fidelity);

/* Linear-optical gate model. */
typedef struct srp_optics_params {
    double reflectance_v;
    double reflectance_h;
    double visibility;
    double phase_jitter_sigma;
} srp_optics_params;

/* name is "ideal" or "measured"; sigma sets the phase jitter. */
SRP_API srp_status srp_optics_preset(const char *name, double sigma, srp_optics_params *out);
SRP_API srp_status srp_toffoli_fidelity(const srp_optics_params *params, double *fidelity,
                                        double *success_probability);

/* Two-qubit process matrices (Choi, reference factor first). */
typedef struct srp_process srp_process;

/* Conditional channel of the optical replication experiment, unit trace.
 * success_probability may be NULL. */
SRP_API srp_status srp_process_from_experiment(double phi, const srp_optics_params *params, srp_process **out,
                                               double *success_probability);
SRP_API srp_status srp_process_cu_phase(double phi, srp_process **out);
SRP_API srp_status srp_process_from_json(const char *json, srp_process **out);
SRP_API srp_status srp_process_to_json(const srp_process *process, double phi, int phase_id, char **out);
/* Process fidelities to CU(phi) and U(phi) (x) U(phi). */
SRP_API srp_status srp_process_fidelities(const srp_process *process, double phi, double *f_cu, double *f_uu);
SRP_API srp_status srp_process_dim(const srp_process *process, int *dim);
SRP_API srp_status srp_process_entry(const srp_process *process, int row, int col, double *re, double *im);
SRP_API void srp_process_free(srp_process *process);

/* Tomography records on the default design (36 inputs x 9 settings x 4 outcomes). */
typedef struct srp_dataset srp_dataset;

SRP_API size_t srp_record_count(void);
SRP_API srp_status srp_expected_counts(const srp_process *process, double rate, double *counts, size_t len);
SRP_API srp_status srp_dataset_simulate(const srp_process *process, double rate, uint64_t seed, srp_dataset **out);
SRP_API srp_status srp_dataset_from_counts(const uint64_t *counts, size_t len, srp_dataset **out);
SRP_API srp_status srp_dataset_counts(const srp_dataset *dataset, uint64_t *counts, size_t len);
SRP_API void srp_dataset_free(srp_dataset *dataset);

typedef enum srp_mle_method { SRP_MLE_POLISHED = 0, SRP_MLE_DILUTED_FIXED_POINT = 1 } srp_mle_method;

typedef struct srp_mle_options {
    srp_mle_method method;
    int max_iterations;
    double tolerance;
} srp_mle_options;

SRP_API void srp_mle_default_options(srp_mle_options *out);
/* options may be NULL; iterations and converged may be NULL. */
SRP_API srp_status srp_mle_reconstruct(const srp_dataset *dataset, const srp_mle_options *options, srp_process **out,
                                       int *iterations, int *converged);
/* Same, from real-valued (e.g. expected) counts of length srp_record_count(). */
SRP_API srp_status srp_mle_reconstruct_counts(const double *counts, size_t len, const srp_mle_options *options,
                                              srp_process **out, int *iterations, int *converged);

typedef struct srp_fidelity_stats {
    int trials;
    double mean_cu;
    double std_cu;
    double mean_uu;
    double std_uu;
} srp_fidelity_stats;

SRP_API srp_status srp_monte_carlo(const srp_dataset *dataset, int trials, double phi, uint64_t seed,
                                   const srp_mle_options *options, srp_fidelity_stats *out);
/* Least squares of f = A + B cos(phi). residual_rms may be NULL. */
SRP_API srp_status srp_fit_cosine(const double *phases, const double *fidelities, size_t n, double *offset,
                                  double *amplitude, double *residual_rms);

/* Command runner behind the CLI. command: replicate, superrep, tomo, optics-scan.
 * config_json and overrides_json may be NULL or empty; overrides win.
 * summary_json may be NULL. */
SRP_API srp_status srp_run_command(const char *command, const char *config_json, const char *overrides_json,
                                   char **summary_json);
SRP_API srp_status srp_config_schema(char **out);
SRP_API srp_status srp_parse_phase(const char *text, double *out);

#ifdef __cplusplus
}
#endif

#endif
