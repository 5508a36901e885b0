// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hwmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HWMIMO_HWMIMO_H
#define HWMIMO_HWMIMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(HWMIMO_BUILDING_LIBRARY)
#define HM_API __attribute__((visibility("default")))
#else
#define HM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status
{
    HM_OK = 0,
    HM_ERR_INVALID_ARGUMENT = 1,
    HM_ERR_CONFIG = 2,
    HM_ERR_NUMERICAL = 3,
    HM_ERR_IO = 4,
    HM_ERR_INTERNAL = 5
} hm_status;

typedef enum hm_lo_mode
{
    HM_LO_COMMON = 0,
    HM_LO_SEPARATE = 1
} hm_lo_mode;

typedef enum hm_pilot_book
{
    HM_BOOK_TEMPORAL = 0,
    HM_BOOK_DFT = 1
} hm_pilot_book;

typedef enum hm_placement
{
    HM_PLACE_BEGINNING = 0,
    HM_PLACE_MIDDLE = 1,
    HM_PLACE_UNIFORM = 2,
    HM_PLACE_PREAMBLE = 3
} hm_placement;

typedef enum hm_filter
{
    HM_FILTER_MRC = 0,
    HM_FILTER_MMSE = 1
} hm_filter;

typedef struct hm_hardware
{
    double delta;  /* phase-drift innovation variance per channel use */
    double kappa2; /* distortion proportionality */
    double xi;     /* receiver noise variance */
    int lo_mode;   /* hm_lo_mode */
} hm_hardware;

typedef struct hm_pilots
{
    int book;      /* hm_pilot_book */
    int placement; /* hm_placement */
    int length;    /* B; 0 means K */
} hm_pilots;

typedef struct hm_scaling
{
    double z1, z2, z3;
    double kappa2_0, xi_0, delta_0;
} hm_scaling;

typedef struct hm_scenario hm_scenario;
typedef struct hm_estimator hm_estimator;

/* Library version, static storage. */
HM_API const char *hm_version(void);

/* Message of the last failure on the calling thread, "" if none. */
HM_API const char *hm_last_error(void);

/* Releases strings returned through char ** out-parameters. */
HM_API void hm_string_free(char *s);

/* ---- scenarios ---- */

/* Zero gains, unit powers. */
HM_API hm_status hm_scenario_create(int cells, int users, int antennas, int subarrays, int block_length,
                                    double sigma2, hm_scenario **out);
HM_API hm_status hm_scenario_from_json(const char *json, hm_scenario **out);
/* Generator keys as in the "generate" configuration block; *cell receives the centre cell. */
HM_API hm_status hm_scenario_generate(const char *generator_json, uint64_t seed, uint64_t drop, hm_scenario **out,
                                      int *cell);
HM_API hm_status hm_scenario_to_json(const hm_scenario *s, char **out);
HM_API hm_status hm_scenario_dims(const hm_scenario *s, int *cells, int *users, int *antennas, int *subarrays,
                                  int *block_length);
HM_API hm_status hm_scenario_set_gain(hm_scenario *s, int j, int l, int k, int a, double value);
HM_API hm_status hm_scenario_set_power(hm_scenario *s, int l, int k, double p);
HM_API hm_status hm_scenario_set_block_length(hm_scenario *s, int block_length);
HM_API hm_status hm_scenario_validate(const hm_scenario *s, const hm_hardware *hw, char **report);
HM_API void hm_scenario_free(hm_scenario *s);

/* ---- estimation and closed-form MRC rates ---- */

HM_API hm_status hm_estimator_create(const hm_scenario *s, const hm_hardware *hw, const hm_pilots *pilots, int cell,
                                     hm_estimator **out);
HM_API void hm_estimator_free(hm_estimator *e);
/* Writes up to `capacity` instants; *count receives the total. */
HM_API hm_status hm_estimator_data_instants(const hm_estimator *e, int *instants, size_t capacity, size_t *count);
HM_API hm_status hm_estimator_pilot_instants(const hm_estimator *e, int *instants, size_t capacity, size_t *count);
/* tr(C), the estimation MSE of UE (l,k) at channel use t. */
HM_API hm_status hm_estimator_mse(const hm_estimator *e, int l, int k, int t, double *mse);
/* MRC SINR of UE k in the served cell at data instant t with `antennas` antennas. */
HM_API hm_status hm_mrc_sinr(const hm_estimator *e, int k, int t, int antennas, double *sinr);
/* rates[i * K + k] for antennas[i]. */
HM_API hm_status hm_mrc_rates(const hm_estimator *e, const int *antennas, size_t count, double *rates);
HM_API hm_status hm_asymptotic_sinr(const hm_estimator *e, int k, int t, double *value, int *infinite);

/* Monte Carlo rates for every UE of `cell`; rates has K entries. */
HM_API hm_status hm_mc_rates(const hm_scenario *s, const hm_hardware *hw, const hm_pilots *pilots, int cell,
                             long trials, uint64_t seed, int filter, int threads, int instant_stride,
                             double *rates);

/* ---- scaling laws and circuits ---- */

HM_API hm_status hm_scaling_check(const hm_scaling *e, int lo_mode, int t, const int *tau, size_t pilots,
                                  int *satisfied, double *margin);
HM_API hm_status hm_scaled_profile(const hm_scaling *e, int lo_mode, double antennas, double sigma2,
                                   hm_hardware *out);
/* Circuit keys as in the "circuit" configuration block. */
HM_API hm_status hm_circuit_profile(const char *circuit_json, double sigma2, hm_hardware *out);

/* ---- experiment runner ---- */

/* request: {"command", "preset", "config", "seed", "out", "threads", "tables"}.
 * With "out" set the result files are written there. The result holds the
 * manifest and, when "tables" is true, every table as CSV text. */
HM_API hm_status hm_run(const char *request_json, char **result_json);
/* JSON array of command names, then preset names under "presets". */
HM_API hm_status hm_list(char **result_json);
HM_API hm_status hm_preset(const char *name, char **config_json);

#ifdef __cplusplus
}
#endif

#endif
