/*
 * Copyright (c) 2026 The Bochner Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BOCHNER_BOCHNER_H
#define BOCHNER_BOCHNER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BOCHNER_BUILDING)
#define BOCHNER_API __declspec(dllexport)
#else
#define BOCHNER_API __declspec(dllimport)
#endif
#else
#define BOCHNER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bochner_status {
  BOCHNER_OK = 0,
  BOCHNER_INVALID_ARGUMENT = 1,
  BOCHNER_STRUCTURAL = 2,
  BOCHNER_DOMAIN = 3,
  BOCHNER_PARSE = 4,
  BOCHNER_PRECONDITION = 5,
  BOCHNER_NOT_ELEMENTARY = 6,
  BOCHNER_NOT_CONVERGING = 7,
  BOCHNER_RESOLUTION = 8,
  BOCHNER_IO = 9,
  BOCHNER_INTERNAL = 10
} bochner_status;

typedef enum bochner_norm { BOCHNER_NORM_ONE = 0, BOCHNER_NORM_TWO = 1, BOCHNER_NORM_INF = 2 } bochner_norm;
typedef enum bochner_format { BOCHNER_FORMAT_RECORDS = 0, BOCHNER_FORMAT_CSV = 1 } bochner_format;

typedef struct bochner_complex {
  double re;
  double im;
} bochner_complex;

typedef struct bochner_space bochner_space;
typedef struct bochner_map bochner_map;
typedef struct bochner_scenario bochner_scenario;
typedef struct bochner_report bochner_report;

BOCHNER_API const char* bochner_version(void);
/* Message of the last failing call on this thread; empty after success. */
BOCHNER_API const char* bochner_last_error_message(void);
BOCHNER_API void bochner_string_free(char* text);

/* Measure spaces: [0,1) with total_mass times Lebesgue measure, or atoms. */
BOCHNER_API bochner_status bochner_space_create_interval(double total_mass, bochner_space** out);
BOCHNER_API bochner_status bochner_space_create_discrete(const double* weights, size_t count,
                                                         bochner_space** out);
BOCHNER_API void bochner_space_destroy(bochner_space* space);
BOCHNER_API bochner_status bochner_space_total_mass(const bochner_space* space, double* out);

/* Simple maps. dim == 0 means scalar values (norm ignored). values holds
 * dim (or 1) components per piece, piece-major. Step maps take pieces + 1
 * breaks running from 0 to 1; atom maps one value per atom. */
BOCHNER_API bochner_status bochner_map_create_step(const bochner_space* space, size_t dim,
                                                   bochner_norm norm, const double* breaks,
                                                   size_t pieces, const bochner_complex* values,
                                                   bochner_map** out);
BOCHNER_API bochner_status bochner_map_create_atoms(const bochner_space* space, size_t dim,
                                                    bochner_norm norm, const bochner_complex* values,
                                                    bochner_map** out);
BOCHNER_API void bochner_map_destroy(bochner_map* map);
BOCHNER_API bochner_status bochner_map_cell_count(const bochner_map* map, size_t* out);
BOCHNER_API bochner_status bochner_map_dim(const bochner_map* map, size_t* out);
/* Writes dim components (1 for scalar maps); capacity is the array length. */
BOCHNER_API bochner_status bochner_map_integrate(const bochner_map* map, bochner_complex* out,
                                                 size_t capacity);
BOCHNER_API bochner_status bochner_map_norm_integral(const bochner_map* map, double* out);

BOCHNER_API bochner_status bochner_l1_distance(const bochner_map* s, const bochner_map* t, double* out);
BOCHNER_API bochner_status bochner_ky_fan_distance(const bochner_map* s, const bochner_map* t,
                                                   double* out);

typedef struct bochner_inequality_slack {
  double epsilon;
  double markov_slack;
  double truncation_slack;
  double triangle_slack;
} bochner_inequality_slack;

BOCHNER_API bochner_status bochner_inequality_audit(const bochner_map* s, const bochner_map* t,
                                                    double epsilon, bochner_inequality_slack* out);
/* sup of the integral of |s| over sets of measure <= delta. */
BOCHNER_API bochner_status bochner_worst_subset_value(const bochner_map* s, double delta,
                                                      double* value, int* exact);

/* Integral of a scalar expression in x over [0,1) with mass total_mass,
 * along the dyadic left-endpoint (midpoint != 0: midpoint) scheme. */
BOCHNER_API bochner_status bochner_extend_expression(const char* expression, double total_mass,
                                                     double tol, int depth, int midpoint,
                                                     bochner_complex* value, double* cauchy_bound,
                                                     int64_t* n_used);

/* Scenarios. */
BOCHNER_API bochner_status bochner_scenario_parse(const char* text, bochner_scenario** out);
BOCHNER_API bochner_status bochner_scenario_load(const char* path, bochner_scenario** out);
BOCHNER_API bochner_status bochner_scenario_create_default(bochner_scenario** out);
BOCHNER_API void bochner_scenario_destroy(bochner_scenario* scenario);
/* Accepts integrate, welldef, vitali, riesz_fischer (or riesz-fischer),
 * inequalities, ui_report (or ui-report), density. */
BOCHNER_API bochner_status bochner_scenario_set_experiment(bochner_scenario* scenario, const char* name);
BOCHNER_API bochner_status bochner_scenario_set_seed(bochner_scenario* scenario, uint64_t seed);
BOCHNER_API bochner_status bochner_scenario_set_cauchy_tol(bochner_scenario* scenario, double tol);
BOCHNER_API bochner_status bochner_scenario_set_horizon(bochner_scenario* scenario, int64_t horizon);
BOCHNER_API bochner_status bochner_scenario_set_format(bochner_scenario* scenario, bochner_format format);
BOCHNER_API bochner_status bochner_scenario_get_format(const bochner_scenario* scenario,
                                                       bochner_format* out);
/* Scenario as JSON text with defaults filled in; free with bochner_string_free. */
BOCHNER_API bochner_status bochner_scenario_echo(const bochner_scenario* scenario, char** out);

/* Runs and reports. */
BOCHNER_API bochner_status bochner_run(const bochner_scenario* scenario, bochner_report** out);
BOCHNER_API void bochner_report_destroy(bochner_report* report);
BOCHNER_API bochner_status bochner_report_record_count(const bochner_report* report, size_t* out);
/* counts[0..2]: success, inapplicable, violation. */
BOCHNER_API bochner_status bochner_report_outcome_counts(const bochner_report* report, size_t counts[3]);
/* 0 success, 1 inapplicable or failed precondition, 2 violation. */
BOCHNER_API bochner_status bochner_report_exit_code(const bochner_report* report, int* out);
BOCHNER_API bochner_status bochner_report_emit(const bochner_report* report, bochner_format format,
                                               char** out);
BOCHNER_API bochner_status bochner_report_write(const bochner_report* report, bochner_format format,
                                                const char* path);

#ifdef __cplusplus
}
#endif

#endif
