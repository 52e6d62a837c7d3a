/* Copyright 2026 The polylab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the polylab experiment engine. All objects are opaque
 * handles; every function returns a pl_status, with outputs through
 * pointers. Strings returned via char** are heap-allocated and must be
 * released with pl_string_free. */

#ifndef POLYLAB_POLYLAB_H
#define POLYLAB_POLYLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_PARSE = 1,       /* malformed config or report text */
  PL_ERR_VALIDATION = 2,  /* well-formed but inconsistent input */
  PL_ERR_DIMENSION = 3,   /* dimension mismatch */
  PL_ERR_DEGENERATE = 4,  /* degenerate geometry (affinely dependent) */
  PL_ERR_NUMERIC = 5,     /* solver failed to converge, moment <= 0, ... */
  PL_ERR_EMPTY = 6,       /* empty input where data is required */
  PL_ERR_ARGUMENT = 7,    /* null pointer or bad argument */
  PL_ERR_INTERNAL = 8
} pl_status;

typedef struct pl_experiment pl_experiment;
typedef struct pl_report pl_report;

/* Library version, static storage, do not free. */
const char* pl_version(void);

/* Message for the most recent error on this thread; static storage. */
const char* pl_last_error(void);

void pl_string_free(char* s);

/* --- experiment configuration ------------------------------------- */

pl_status pl_experiment_parse(const char* text, pl_experiment** out);
pl_status pl_experiment_from_file(const char* path, pl_experiment** out);

/* Override one key with the same syntax as a config line value. */
pl_status pl_experiment_set(pl_experiment* e, const char* key,
                            const char* value);

pl_status pl_experiment_serialize(const pl_experiment* e, char** out);
void pl_experiment_free(pl_experiment* e);

/* --- running and reports ------------------------------------------ */

pl_status pl_experiment_run(const pl_experiment* e, pl_report** out);

pl_status pl_report_json(const pl_report* r, char** out);
pl_status pl_report_csv(const pl_report* r, char** out);
pl_status pl_report_plot_csv(const pl_report* r, char** out);
pl_status pl_report_all_passed(const pl_report* r, int* out);
void pl_report_free(pl_report* r);

/* Pass/fail matrix over serialized JSON reports. all_passed may be NULL. */
pl_status pl_summarize(const char* const* report_jsons, size_t count,
                       char** out, int* all_passed);

/* --- small direct entry points ------------------------------------ */

/* Convex hull of n points in dimension d (row-major n x d). Outputs the
 * number of extreme points and the hull volume. */
pl_status pl_hull_stats(const double* points, long n, int d,
                        long* vertex_count, double* volume);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLYLAB_POLYLAB_H */
