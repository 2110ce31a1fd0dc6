/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The fdra Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/* C interface to the fdra resource-allocation library.
 *
 * Every function returns an fdra_status. On failure a message (and, for
 * configuration errors, the offending "section.key") is available from
 * fdra_last_error() and fdra_last_error_field() on the calling thread until
 * the next call into the library. Handles are opaque and must be released
 * with the matching *_free function. */

#ifndef FDRA_FDRA_H
#define FDRA_FDRA_H

#include <stddef.h>
#include <stdint.h>

#if defined(FDRA_BUILDING_LIBRARY)
#define FDRA_API __attribute__((visibility("default")))
#else
#define FDRA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdra_status {
  FDRA_OK = 0,
  FDRA_ERR_INVALID_ARGUMENT = 1,
  FDRA_ERR_CONFIG = 2,
  FDRA_ERR_IO = 3,
  FDRA_ERR_SOLVER = 4,
  FDRA_ERR_UNKNOWN_PRESET = 5,
  FDRA_ERR_BUFFER_TOO_SMALL = 6,
  FDRA_ERR_INTERNAL = 7
} fdra_status;

typedef struct fdra_config fdra_config;
typedef struct fdra_run fdra_run;

FDRA_API const char* fdra_version(void);
FDRA_API const char* fdra_git_revision(void);
FDRA_API const char* fdra_status_string(fdra_status status);
FDRA_API const char* fdra_last_error(void);
FDRA_API const char* fdra_last_error_field(void);

/* Scenario configuration (INI text). */
FDRA_API fdra_status fdra_config_load(const char* path, fdra_config** out);
FDRA_API fdra_status fdra_config_parse(const char* text, fdra_config** out);
FDRA_API fdra_status fdra_config_preset(const char* name, int desk_scale, fdra_config** out);
/* Number of preset names and the i-th name. */
FDRA_API size_t fdra_preset_count(void);
FDRA_API const char* fdra_preset_name(size_t index);
/* Sets one "section.key" without validating the whole document. */
FDRA_API fdra_status fdra_config_set(fdra_config* cfg, const char* key, const char* value);
FDRA_API fdra_status fdra_config_validate(const fdra_config* cfg);
/* Copies the INI form into buf (NUL-terminated). *needed receives the
 * required size including the terminator; buf may be NULL to query it. */
FDRA_API fdra_status fdra_config_to_ini(const fdra_config* cfg, char* buf, size_t capacity,
                                        size_t* needed);
/* Borrowed pointer valid until the next change to cfg. */
FDRA_API const char* fdra_config_output(const fdra_config* cfg);
FDRA_API void fdra_config_free(fdra_config* cfg);

/* Experiment runs. */
typedef struct fdra_result_row {
  uint64_t seed;
  double sweep_value; /* NaN when the run has no sweep */
  char scheme[16];
  double sum_rate;
  double dl_rate;
  double ul_rate;
  int iterations; /* -1 for a failed row */
  double wall_time_ms;
  int ok;
} fdra_result_row;

FDRA_API fdra_status fdra_run_scenario(const fdra_config* cfg, fdra_run** out);
FDRA_API size_t fdra_run_row_count(const fdra_run* run);
FDRA_API size_t fdra_run_failure_count(const fdra_run* run);
FDRA_API fdra_status fdra_run_get_row(const fdra_run* run, size_t index, fdra_result_row* out);
/* Number of points in the threshold CDF (threshold_cdf mode). */
FDRA_API size_t fdra_run_cdf_count(const fdra_run* run);
FDRA_API fdra_status fdra_run_get_cdf(const fdra_run* run, size_t index, double* beta_db,
                                      double* cdf_value);
/* Writes the CSV at path plus its sidecar files. */
FDRA_API fdra_status fdra_run_write(const fdra_run* run, const char* path);
FDRA_API void fdra_run_free(fdra_run* run);

/* Single sub-channel power pair. */
typedef enum fdra_pair_mode {
  FDRA_PAIR_FULL = 0,
  FDRA_PAIR_DOWNLINK_ONLY = 1,
  FDRA_PAIR_UPLINK_ONLY = 2,
  FDRA_PAIR_EITHER_DIRECTION = 3
} fdra_pair_mode;

typedef struct fdra_pair_problem {
  double w, v;
  double g_d, g_u;
  double inter;
  double beta;
  double n_d, n_b;
  double pmax_d, pmax_u;
  fdra_pair_mode mode;
} fdra_pair_problem;

typedef struct fdra_pair_solution {
  double p_d, p_u;
  double value;
  int candidate; /* 0 idle, 1 uplink only, 2 downlink only, 3 both full,
                    4 downlink interior, 5 uplink interior */
} fdra_pair_solution;

FDRA_API fdra_status fdra_solve_pair(const fdra_pair_problem* problem, fdra_pair_solution* out);

/* Closed-form full-duplex threshold of the symmetric scenario. */
typedef struct fdra_symmetric_scenario {
  double p_bs, p_user, n0;
  double g_max, g_a, g_b, g_ab;
} fdra_symmetric_scenario;

typedef struct fdra_threshold_result {
  double beta1, beta2, beta3, beta_threshold;
} fdra_threshold_result;

FDRA_API fdra_status fdra_threshold(const fdra_symmetric_scenario* scenario,
                                    fdra_threshold_result* out);

#ifdef __cplusplus
}
#endif

#endif /* FDRA_FDRA_H */
