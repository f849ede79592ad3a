/*
Copyright 2026 The hsg Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/* C interface of the stochastic Galerkin solver library.
 *
 * Every function that can fail returns an hsg_status. On failure a message
 * is available from hsg_last_error() on the calling thread until the next
 * call into the library. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function (which accepts NULL).
 */

#ifndef HSG_H
#define HSG_H

#include <stddef.h>
#include <stdint.h>

#if defined(HSG_BUILDING_LIBRARY)
#define HSG_API __attribute__((visibility("default")))
#else
#define HSG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hsg_status {
  HSG_OK = 0,
  HSG_ERR_INVALID_ARGUMENT = 1,
  HSG_ERR_CONFIG = 2,
  HSG_ERR_SOLVER = 3,
  HSG_ERR_IO = 4,
  HSG_ERR_ADMISSIBILITY = 5,
  HSG_ERR_INTERNAL = 6
} hsg_status;

typedef struct hsg_config hsg_config;
typedef struct hsg_result hsg_result;

typedef struct hsg_member_info {
  int level;       /* -1 outside a level sweep */
  int basis_size;
  int steps;
  int components;  /* entries available from hsg_result_error, 0 without reference */
  double min_admissible; /* +inf for unconstrained models */
  double seconds;
} hsg_member_info;

HSG_API const char* hsg_version(void);

/* Message of the last failure on this thread, "" if none. */
HSG_API const char* hsg_last_error(void);

HSG_API const char* hsg_status_name(hsg_status status);

/* Configuration ---------------------------------------------------------- */

HSG_API hsg_status hsg_config_parse(const char* text, hsg_config** out);
HSG_API hsg_status hsg_config_load(const char* path, hsg_config** out);
HSG_API void hsg_config_free(hsg_config* config);

/* Setters re-validate; on failure the config is left unchanged. */
HSG_API hsg_status hsg_config_set_output_dir(hsg_config* config, const char* dir);
HSG_API hsg_status hsg_config_set_seed(hsg_config* config, uint64_t seed);
HSG_API hsg_status hsg_config_set_threads(hsg_config* config, int threads);
/* Accepts "J0..J1" or a single level. */
HSG_API hsg_status hsg_config_set_level_sweep(hsg_config* config, const char* sweep);

/* Copies the rendered text (NUL terminated) into buffer when it fits and
 * stores the required size including the terminator in *needed. */
HSG_API hsg_status hsg_config_render(const hsg_config* config, char* buffer, size_t size,
                                     size_t* needed);

/* Output directory of the config; valid until the config changes. */
HSG_API const char* hsg_config_output_dir(const hsg_config* config);

/* Parses "J0..J1" into *first and *last. */
HSG_API hsg_status hsg_parse_level_sweep(const char* text, int* first, int* last);

/* Experiments ------------------------------------------------------------ */

HSG_API hsg_status hsg_run(const hsg_config* config, hsg_result** out);
HSG_API void hsg_result_free(hsg_result* result);
HSG_API int hsg_result_members(const hsg_result* result);
HSG_API hsg_status hsg_result_member(const hsg_result* result, int index, hsg_member_info* out);
/* Mean squared error and L1 distance of one member and component. */
HSG_API hsg_status hsg_result_error(const hsg_result* result, int index, int component,
                                    double* mse, double* l1);
HSG_API int hsg_result_reference_failures(const hsg_result* result);

/* Writes basis.csv and triples.csv. A negative level uses the configured
 * basis, or every level of the configured sweep in out_dir/level-J. */
HSG_API hsg_status hsg_dump_basis(const hsg_config* config, int level, const char* out_dir);

/* Projects one expression in x, y, xi per component onto the configured
 * basis and grid; writes modes.csv and statistics.csv. */
HSG_API hsg_status hsg_project(const hsg_config* config, const char* const* expressions,
                               int count, const char* out_dir);

HSG_API hsg_status hsg_write_reference(const hsg_config* config, const char* out_dir);

/* Compares the latest snapshot of a modes CSV with the configured reference.
 * Fills up to capacity entries of mse and l1 and stores the component count
 * in *components. */
HSG_API hsg_status hsg_mse_from_csv(const hsg_config* config, const char* csv_path, double* mse,
                                    double* l1, int capacity, int* components);

#ifdef __cplusplus
}
#endif

#endif /* HSG_H */
