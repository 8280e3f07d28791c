/* SPDX-License-Identifier: Apache-2.0
 *
 * subthz-sense  sub-THz link blockage sensing and passive localization
 * Copyright (C) 2026 subthz-sense developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C API of the subthz shared library.
 *
 * Conventions:
 *  - every fallible call returns subthz_status; SUBTHZ_OK is 0
 *  - on failure, subthz_last_error_message() returns a thread-local detail
 *    string valid until the next failing call on the same thread
 *  - objects returned through subthz_*  out-pointers are owned by the caller
 *    and released with the matching subthz_*_free function
 *  - all quantities are SI (meters, seconds, Hz) unless the name says dB/cm
 */

#ifndef SUBTHZ_H
#define SUBTHZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ---------------------------------------------------------------- status -- */

typedef enum subthz_status
{
    SUBTHZ_OK = 0,
    SUBTHZ_ERROR_INVALID_ARGUMENT = 1,
    SUBTHZ_ERROR_PARSE = 2, /* malformed file content */
    SUBTHZ_ERROR_IO = 3,
    SUBTHZ_ERROR_MISMATCH = 4, /* grids or bin edges disagree */
    SUBTHZ_ERROR_NUMERIC = 5,  /* model / numerical failure */
    SUBTHZ_ERROR_INTERNAL = 6
} subthz_status;

const char *subthz_status_name(subthz_status status);
const char *subthz_last_error_message(void);
const char *subthz_version(void);

/* ------------------------------------------------------- config structs -- */

typedef struct subthz_point2
{
    double x_m;
    double y_m;
} subthz_point2;

typedef struct subthz_scene_config
{
    subthz_point2 tx;
    subthz_point2 rx;
    double plane_height_m;
    double room_width_m; /* extent along x */
    double room_depth_m; /* extent along y */
    double room_height_m;
    subthz_point2 room_origin; /* floor-plan low corner, scene coordinates */
    double floor_loss_db;
    double ceiling_loss_db;
    double wall_loss_db;
} subthz_scene_config;

enum
{
    SUBTHZ_MATERIAL_ABSORBING = 0,
    SUBTHZ_MATERIAL_CONDUCTING = 1
};

typedef struct subthz_target_config
{
    subthz_point2 center;
    double diameter_m;
    double height_m;
    int material;
} subthz_target_config;

typedef struct subthz_band_config
{
    char band_id[16];
    double f_start_hz;
    double f_stop_hz;
    int32_t n_points;
} subthz_band_config;

enum
{
    SUBTHZ_BLOCKAGE_SINGLE_KNIFE_EDGE = 0,
    SUBTHZ_BLOCKAGE_DOUBLE_KNIFE_EDGE = 1
};

typedef struct subthz_synth_config
{
    double noise_floor_db; /* relative to the LoS amplitude, <= 0 */
    int noise_enabled;
    uint64_t seed;
    int blockage_model;
    int max_bounce_order;
    int scatter_enabled;
    double scatter_gain;
    double clear_zone_factor;
} subthz_synth_config;

enum
{
    SUBTHZ_CONVENTION_AMPLITUDE_20LOG = 0,
    SUBTHZ_CONVENTION_POWER_10LOG = 1
};

enum
{
    SUBTHZ_WINDOW_RECTANGULAR = 0,
    SUBTHZ_WINDOW_HANN = 1,
    SUBTHZ_WINDOW_KAISER = 2
};

enum
{
    SUBTHZ_REGIME_LOS_BLOCKING = 0,
    SUBTHZ_REGIME_NEAR_FIELD_ATTENUATION = 1,
    SUBTHZ_REGIME_SCATTER_PATH = 2
};

/* laboratory defaults: 4x4x3 m room, d = 0.92 m link at 1 m height,
 * 6 cm x 50 cm cylinder, W/G band sweep settings */
void subthz_scene_defaults(subthz_scene_config *scene);
void subthz_target_defaults(subthz_target_config *target);
void subthz_band_w(subthz_band_config *band);
void subthz_band_g(subthz_band_config *band);
void subthz_synth_defaults(subthz_synth_config *synth);

/* --------------------------------------------------------------- geometry -- */

/* grid[k] = f_start + k (f_stop - f_start) / (n_points - 1); capacity must be
 * >= n_points */
subthz_status subthz_frequency_grid(const subthz_band_config *band, double *grid, int32_t capacity);

subthz_status subthz_los_path_length(const subthz_scene_config *scene, double *length_m);

subthz_status subthz_image_path_count(const subthz_scene_config *scene, int32_t max_order, int32_t *count);

/* lengths sorted ascending (LoS first); bounce_counts may be NULL */
subthz_status subthz_image_path_lengths(const subthz_scene_config *scene, int32_t max_order,
                                        double *lengths_m, int32_t *bounce_counts, int32_t capacity);

/* ---------------------------------------------------------- channel synth -- */

/* nu = h_c sqrt(2 (d1+d2) / (lambda d1 d2)) for the edge between tx and rx */
subthz_status subthz_fresnel_parameter(subthz_point2 tx, subthz_point2 rx, subthz_point2 edge,
                                       double f_hz, double *nu);

/* excess knife-edge loss -20 log10 |F(nu)| in dB; F(0) = 1/2 */
subthz_status subthz_knife_edge_loss(double nu, double *loss_db);

/* diffraction gain of the LoS ray past the target at frequency f */
subthz_status subthz_blockage_gain(const subthz_scene_config *scene, const subthz_target_config *target,
                                   double f_hz, int blockage_model, double *gain_re, double *gain_im);

typedef struct subthz_sweep subthz_sweep;

/* target == NULL synthesizes the target-free calibration sweep */
subthz_status subthz_synthesize(const subthz_scene_config *scene, const subthz_target_config *target,
                                const subthz_band_config *band, const subthz_synth_config *synth,
                                subthz_sweep **sweep);

/* ------------------------------------------------------------------ sweeps -- */

subthz_status subthz_sweep_create(const subthz_band_config *band, const double *re, const double *im,
                                  const char *label, subthz_sweep **sweep);
void subthz_sweep_free(subthz_sweep *sweep);
int32_t subthz_sweep_n_points(const subthz_sweep *sweep);
subthz_status subthz_sweep_band(const subthz_sweep *sweep, subthz_band_config *band);
subthz_status subthz_sweep_label(const subthz_sweep *sweep, char *buffer, size_t capacity);
subthz_status subthz_sweep_values(const subthz_sweep *sweep, double *re, double *im, int32_t capacity);
subthz_status subthz_sweep_read(const char *path, subthz_sweep **sweep);
subthz_status subthz_sweep_write(const subthz_sweep *sweep, const char *path);

/* ------------------------------------------------------------- attenuation -- */

typedef struct subthz_atten subthz_atten;

subthz_status subthz_excess_attenuation(const subthz_sweep *measured, const subthz_sweep *baseline,
                                        int convention, subthz_atten **series);
void subthz_atten_free(subthz_atten *series);
int32_t subthz_atten_n_points(const subthz_atten *series);
subthz_status subthz_atten_values(const subthz_atten *series, double *a_db, int32_t capacity);
subthz_status subthz_atten_stats(const subthz_atten *series, double *mean_db, double *std_db);
subthz_status subthz_atten_write_csv(const subthz_atten *series, const char *path);
/* label NULL or empty defaults to the filename stem */
subthz_status subthz_atten_read_csv(const char *path, const char *label, subthz_atten **series);

/* ------------------------------------------------- frequency classification -- */

typedef struct subthz_models subthz_models;
typedef struct subthz_classification subthz_classification;

/* shared bin edges over the pooled series; bin_count 0 selects the
 * Freedman-Diaconis count clamped to [8, 64] */
subthz_status subthz_fit_models(const subthz_atten *const *series, int32_t n_series, int32_t bin_count,
                                double epsilon, subthz_models **models);
void subthz_models_free(subthz_models *models);
int32_t subthz_models_count(const subthz_models *models);
int32_t subthz_models_bin_count(const subthz_models *models);
subthz_status subthz_models_label(const subthz_models *models, int32_t index, char *buffer,
                                  size_t capacity);
subthz_status subthz_models_write(const subthz_models *models, const char *path);
subthz_status subthz_models_read(const char *path, subthz_models **models);

/* Gamma_{i,j}(a) = log Pr(a|F_i) - log Pr(a|F_j), nats */
subthz_status subthz_llr(const subthz_models *models, int32_t i, int32_t j, double a_db, double *llr_nats);

subthz_status subthz_classify(const subthz_models *models, const subthz_atten *observed,
                              subthz_classification **result);
void subthz_classification_free(subthz_classification *result);
int32_t subthz_classification_winner(const subthz_classification *result);
int32_t subthz_classification_ambiguous(const subthz_classification *result);
int32_t subthz_classification_out_of_range(const subthz_classification *result);
subthz_status subthz_classification_votes(const subthz_classification *result, int32_t *votes,
                                          int32_t capacity);
/* row-major [n_hypotheses x n_hypotheses] pairwise win counts */
subthz_status subthz_classification_vote_matrix(const subthz_classification *result, int32_t *matrix,
                                                int32_t capacity);

/* ----------------------------------------------------- power delay profiles -- */

typedef struct subthz_pdp subthz_pdp;

/* c / (f_stop - f_start) in meters */
subthz_status subthz_delay_resolution(const subthz_band_config *band, double *resolution_m);

subthz_status subthz_pdp_compute(const subthz_sweep *sweep, int window, double kaiser_beta,
                                 int32_t zero_pad_factor, subthz_pdp **pdp);
void subthz_pdp_free(subthz_pdp *pdp);
int32_t subthz_pdp_n_bins(const subthz_pdp *pdp);
subthz_status subthz_pdp_values(const subthz_pdp *pdp, double *path_length_m, double *power_db,
                                int32_t capacity);
subthz_status subthz_pdp_info(const subthz_pdp *pdp, double *delay_resolution_m,
                              double *alias_free_range_m, double *bin_spacing_m, int32_t *aliasing_warning);
subthz_status subthz_pdp_write_csv(const subthz_pdp *pdp, const char *path, int centimeters);

/* ------------------------------------------------------------ CIR features -- */

typedef struct subthz_features subthz_features;
typedef struct subthz_perturbation subthz_perturbation;

subthz_status subthz_extract_features(const subthz_pdp *pdp, int32_t max_components,
                                      double min_prominence_db, int32_t min_separation_bins,
                                      subthz_features **features);
/* amplitudes linear relative to the profile peak; delays strictly increasing */
subthz_status subthz_features_create(const double *amplitude, const double *delay_s, int32_t count,
                                     double delay_resolution_s, subthz_features **features);
void subthz_features_free(subthz_features *features);
int32_t subthz_features_count(const subthz_features *features);
double subthz_features_delay_resolution(const subthz_features *features);
subthz_status subthz_features_values(const subthz_features *features, double *amplitude, double *delay_s,
                                     double *path_length_m, int32_t capacity);
subthz_status subthz_features_write(const subthz_features *features, const char *path);
subthz_status subthz_features_read(const char *path, subthz_features **features);

subthz_status subthz_match_features(const subthz_features *baseline, const subthz_features *observed,
                                    double delay_tolerance_s, subthz_perturbation **report);
void subthz_perturbation_free(subthz_perturbation *report);
int32_t subthz_perturbation_matched_count(const subthz_perturbation *report);
int32_t subthz_perturbation_delta_k(const subthz_perturbation *report);
int32_t subthz_perturbation_unmatched_count(const subthz_perturbation *report);
/* rho_db positive = attenuation; any output pointer may be NULL */
subthz_status subthz_perturbation_matched(const subthz_perturbation *report, int32_t *baseline_index,
                                          int32_t *observed_index, double *rho_db, int32_t capacity);
subthz_status subthz_perturbation_new_components(const subthz_perturbation *report,
                                                 subthz_features **features);
subthz_status subthz_perturbation_unmatched(const subthz_perturbation *report, int32_t *baseline_index,
                                            int32_t capacity);
subthz_status subthz_perturbation_write(const subthz_perturbation *report, const char *path);

/* ------------------------------------------------------------- localization -- */

typedef struct subthz_localize_config
{
    double rho_threshold_db;
    double los_block_threshold_db;
    double assumed_x_m; /* < 0 selects the link midpoint */
} subthz_localize_config;

void subthz_localize_defaults(subthz_localize_config *config);

typedef struct subthz_offset_estimate
{
    int32_t regime;
    int32_t has_estimate;
    double y_m;
    double y_sigma_m;
    int32_t no_target;
    int32_t delta_k;
    double mean_rho_db;
    double mean_new_path_length_m;
} subthz_offset_estimate;

subthz_status subthz_classify_regime(const subthz_perturbation *report, double rho_threshold_db,
                                     int32_t *regime);

/* solve l = sqrt(x^2+y^2) + sqrt((d-x)^2+y^2) for y >= 0 */
subthz_status subthz_invert_scatter_path(double mean_new_path_length_m, const subthz_scene_config *scene,
                                         double assumed_x_m, double *y_m);

subthz_status subthz_estimate_offset(const subthz_perturbation *report, const subthz_scene_config *scene,
                                     const subthz_localize_config *config,
                                     subthz_offset_estimate *estimate);

/* --------------------------------------------------------------- sessions -- */

typedef struct subthz_session subthz_session;

subthz_status subthz_session_default(subthz_session **session);
subthz_status subthz_session_read(const char *path, subthz_session **session);
void subthz_session_free(subthz_session *session);
subthz_status subthz_session_set_seed(subthz_session *session, uint64_t seed);

/* scene file (scene.* / target.* keys); target may be NULL */
subthz_status subthz_scene_read(const char *path, subthz_scene_config *scene,
                                subthz_target_config *target);

/* sweeps only: <out>/<band>/baseline.sweep and <out>/<band>/<label>/measured.sweep */
subthz_status subthz_session_simulate(const subthz_session *session, const char *out_dir);

/* full bundle: sweeps, attenuation + stats summary, models + classification,
 * PDP/features/perturbation/estimate per offset */
subthz_status subthz_session_run(const subthz_session *session, const char *out_dir);

#ifdef __cplusplus
}
#endif

#endif /* SUBTHZ_H */
