// SPDX-License-Identifier: Apache-2.0
//
// subthz-sense  sub-THz link blockage sensing and passive localization
// Copyright (C) 2026 subthz-sense developers
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
//
// extern-C surface of the shared library. Opaque handles wrap the C++ core
// types; every entry point catches and converts exceptions to status codes.

#include "subthz/subthz.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "attenuation.hpp"
#include "cir.hpp"
#include "error.hpp"
#include "features.hpp"
#include "freqclass.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "localize.hpp"
#include "session.hpp"
#include "synth.hpp"

using namespace subthz;

// ----------------------------------------------------------- handle types --

struct subthz_sweep
{
    FrequencySweep value;
};
struct subthz_atten
{
    AttenuationSeries value;
};
struct subthz_models
{
    std::vector<SampleDistribution> value;
};
struct subthz_classification
{
    ClassificationResult value;
};
struct subthz_pdp
{
    PowerDelayProfile value;
};
struct subthz_features
{
    CirFeatureSet value;
};
struct subthz_perturbation
{
    PerturbationReport value;
};
struct subthz_session
{
    SessionConfig value;
};

// ------------------------------------------------------------ error state --

namespace
{

thread_local std::string g_last_error;

subthz_status fail(subthz_status status, const char *message)
{
    g_last_error = message != nullptr ? message : "";
    return status;
}

template <typename Fn> subthz_status guarded(Fn &&fn)
{
    try
    {
        fn();
        return SUBTHZ_OK;
    }
    catch (const parse_error &e)
    {
        return fail(SUBTHZ_ERROR_PARSE, e.what());
    }
    catch (const io_error &e)
    {
        return fail(SUBTHZ_ERROR_IO, e.what());
    }
    catch (const mismatch_error &e)
    {
        return fail(SUBTHZ_ERROR_MISMATCH, e.what());
    }
    catch (const numeric_error &e)
    {
        return fail(SUBTHZ_ERROR_NUMERIC, e.what());
    }
    catch (const std::invalid_argument &e)
    {
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(SUBTHZ_ERROR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(SUBTHZ_ERROR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(SUBTHZ_ERROR_INTERNAL, "unknown error");
    }
}

subthz_status require(bool condition, const char *message)
{
    return condition ? SUBTHZ_OK : fail(SUBTHZ_ERROR_INVALID_ARGUMENT, message);
}

// ------------------------------------------------------ struct conversions --

Scene to_scene(const subthz_scene_config &c)
{
    Scene s;
    s.tx = {c.tx.x_m, c.tx.y_m};
    s.rx = {c.rx.x_m, c.rx.y_m};
    s.plane_height_m = c.plane_height_m;
    s.room_width_m = c.room_width_m;
    s.room_depth_m = c.room_depth_m;
    s.room_height_m = c.room_height_m;
    s.room_origin = {c.room_origin.x_m, c.room_origin.y_m};
    s.floor_loss_db = c.floor_loss_db;
    s.ceiling_loss_db = c.ceiling_loss_db;
    s.wall_loss_db = c.wall_loss_db;
    return s;
}

void from_scene(const Scene &s, subthz_scene_config &c)
{
    c.tx = {s.tx.x_m, s.tx.y_m};
    c.rx = {s.rx.x_m, s.rx.y_m};
    c.plane_height_m = s.plane_height_m;
    c.room_width_m = s.room_width_m;
    c.room_depth_m = s.room_depth_m;
    c.room_height_m = s.room_height_m;
    c.room_origin = {s.room_origin.x_m, s.room_origin.y_m};
    c.floor_loss_db = s.floor_loss_db;
    c.ceiling_loss_db = s.ceiling_loss_db;
    c.wall_loss_db = s.wall_loss_db;
}

Target to_target(const subthz_target_config &c)
{
    Target t;
    t.center = {c.center.x_m, c.center.y_m};
    t.diameter_m = c.diameter_m;
    t.height_m = c.height_m;
    t.material = c.material == SUBTHZ_MATERIAL_CONDUCTING ? TargetMaterial::perfectly_conducting
                                                          : TargetMaterial::perfectly_absorbing;
    return t;
}

void from_target(const Target &t, subthz_target_config &c)
{
    c.center = {t.center.x_m, t.center.y_m};
    c.diameter_m = t.diameter_m;
    c.height_m = t.height_m;
    c.material = t.material == TargetMaterial::perfectly_conducting ? SUBTHZ_MATERIAL_CONDUCTING
                                                                    : SUBTHZ_MATERIAL_ABSORBING;
}

BandConfig to_band(const subthz_band_config &c)
{
    BandConfig b;
    b.band_id = c.band_id;
    b.f_start_hz = c.f_start_hz;
    b.f_stop_hz = c.f_stop_hz;
    b.n_points = c.n_points;
    return b;
}

void from_band(const BandConfig &b, subthz_band_config &c)
{
    std::snprintf(c.band_id, sizeof(c.band_id), "%s", b.band_id.c_str());
    c.f_start_hz = b.f_start_hz;
    c.f_stop_hz = b.f_stop_hz;
    c.n_points = b.n_points;
}

SynthesisConfig to_synth(const subthz_synth_config &c)
{
    SynthesisConfig s;
    s.noise_floor_db = c.noise_floor_db;
    s.noise_enabled = c.noise_enabled != 0;
    s.seed = c.seed;
    s.blockage_model = c.blockage_model == SUBTHZ_BLOCKAGE_SINGLE_KNIFE_EDGE
                           ? BlockageModel::single_knife_edge
                           : BlockageModel::double_knife_edge;
    s.max_bounce_order = c.max_bounce_order;
    s.scatter_enabled = c.scatter_enabled != 0;
    s.scatter_gain = c.scatter_gain;
    s.clear_zone_factor = c.clear_zone_factor;
    return s;
}

WindowType to_window(int window)
{
    switch (window)
    {
    case SUBTHZ_WINDOW_RECTANGULAR:
        return WindowType::rectangular;
    case SUBTHZ_WINDOW_HANN:
        return WindowType::hann;
    case SUBTHZ_WINDOW_KAISER:
        return WindowType::kaiser;
    default:
        throw std::invalid_argument("unknown window id " + std::to_string(window));
    }
}

subthz_status copy_label(const std::string &label, char *buffer, size_t capacity)
{
    if (buffer == nullptr || capacity == 0)
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "null/empty output buffer");
    std::snprintf(buffer, capacity, "%s", label.c_str());
    return SUBTHZ_OK;
}

} // namespace

// ------------------------------------------------------------------ status --

const char *subthz_status_name(subthz_status status)
{
    switch (status)
    {
    case SUBTHZ_OK:
        return "ok";
    case SUBTHZ_ERROR_INVALID_ARGUMENT:
        return "invalid_argument";
    case SUBTHZ_ERROR_PARSE:
        return "parse_error";
    case SUBTHZ_ERROR_IO:
        return "io_error";
    case SUBTHZ_ERROR_MISMATCH:
        return "mismatch_error";
    case SUBTHZ_ERROR_NUMERIC:
        return "numeric_error";
    case SUBTHZ_ERROR_INTERNAL:
        return "internal_error";
    }
    return "unknown";
}

const char *subthz_last_error_message(void) { return g_last_error.c_str(); }

const char *subthz_version(void) { return "0.1.0"; }

// ---------------------------------------------------------------- defaults --

void subthz_scene_defaults(subthz_scene_config *scene)
{
    if (scene != nullptr)
        from_scene(Scene{}, *scene);
}

void subthz_target_defaults(subthz_target_config *target)
{
    if (target != nullptr)
        from_target(Target{}, *target);
}

void subthz_band_w(subthz_band_config *band)
{
    if (band != nullptr)
        from_band(subthz::band_w(), *band);
}

void subthz_band_g(subthz_band_config *band)
{
    if (band != nullptr)
        from_band(subthz::band_g(), *band);
}

void subthz_synth_defaults(subthz_synth_config *synth)
{
    if (synth == nullptr)
        return;
    const SynthesisConfig s;
    synth->noise_floor_db = s.noise_floor_db;
    synth->noise_enabled = s.noise_enabled ? 1 : 0;
    synth->seed = s.seed;
    synth->blockage_model = SUBTHZ_BLOCKAGE_DOUBLE_KNIFE_EDGE;
    synth->max_bounce_order = s.max_bounce_order;
    synth->scatter_enabled = s.scatter_enabled ? 1 : 0;
    synth->scatter_gain = s.scatter_gain;
    synth->clear_zone_factor = s.clear_zone_factor;
}

void subthz_localize_defaults(subthz_localize_config *config)
{
    if (config == nullptr)
        return;
    const LocalizeOptions o;
    config->rho_threshold_db = o.rho_threshold_db;
    config->los_block_threshold_db = o.los_block_threshold_db;
    config->assumed_x_m = o.assumed_x_m;
}

// ---------------------------------------------------------------- geometry --

subthz_status subthz_frequency_grid(const subthz_band_config *band, double *grid, int32_t capacity)
{
    if (subthz_status s = require(band != nullptr && grid != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const auto values = frequency_grid(to_band(*band));
        if (capacity < static_cast<int32_t>(values.size()))
            throw std::invalid_argument("grid capacity too small");
        std::memcpy(grid, values.data(), values.size() * sizeof(double));
    });
}

subthz_status subthz_los_path_length(const subthz_scene_config *scene, double *length_m)
{
    if (subthz_status s = require(scene != nullptr && length_m != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { *length_m = los_path_length(to_scene(*scene)); });
}

subthz_status subthz_image_path_count(const subthz_scene_config *scene, int32_t max_order, int32_t *count)
{
    if (subthz_status s = require(scene != nullptr && count != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { *count = static_cast<int32_t>(image_paths(to_scene(*scene), max_order).size()); });
}

subthz_status subthz_image_path_lengths(const subthz_scene_config *scene, int32_t max_order,
                                        double *lengths_m, int32_t *bounce_counts, int32_t capacity)
{
    if (subthz_status s = require(scene != nullptr && lengths_m != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const auto paths = image_paths(to_scene(*scene), max_order);
        if (capacity < static_cast<int32_t>(paths.size()))
            throw std::invalid_argument("path capacity too small");
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            lengths_m[i] = paths[i].length_m;
            if (bounce_counts != nullptr)
                bounce_counts[i] = paths[i].bounce_count;
        }
    });
}

// -------------------------------------------------------------- channel synth --

subthz_status subthz_fresnel_parameter(subthz_point2 tx, subthz_point2 rx, subthz_point2 edge,
                                       double f_hz, double *nu)
{
    if (subthz_status s = require(nu != nullptr, "null output"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        *nu = fresnel_parameter(Point2{tx.x_m, tx.y_m}, Point2{rx.x_m, rx.y_m},
                                Point2{edge.x_m, edge.y_m}, f_hz);
    });
}

subthz_status subthz_knife_edge_loss(double nu, double *loss_db)
{
    if (subthz_status s = require(loss_db != nullptr, "null output"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { *loss_db = knife_edge_loss(nu); });
}

subthz_status subthz_blockage_gain(const subthz_scene_config *scene, const subthz_target_config *target,
                                   double f_hz, int blockage_model, double *gain_re, double *gain_im)
{
    if (subthz_status s =
            require(scene != nullptr && target != nullptr && gain_re != nullptr && gain_im != nullptr,
                    "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const Scene scn = to_scene(*scene);
        const Target tgt = to_target(*target);
        const BlockageModel model = blockage_model == SUBTHZ_BLOCKAGE_SINGLE_KNIFE_EDGE
                                        ? BlockageModel::single_knife_edge
                                        : BlockageModel::double_knife_edge;
        // stand-alone LoS ray with the target crossing geometry resolved
        SynthesisConfig cfg;
        cfg.max_bounce_order = 0;
        cfg.noise_enabled = false;
        cfg.scatter_enabled = false;
        BandConfig probe{"probe", f_hz * 0.999, f_hz * 1.001, 3};
        const auto rays = make_ray_components(scn, tgt, probe, cfg);
        const auto gain = blockage_gain(scn, tgt, rays.front(), f_hz, model);
        *gain_re = gain.real();
        *gain_im = gain.imag();
    });
}

subthz_status subthz_synthesize(const subthz_scene_config *scene, const subthz_target_config *target,
                                const subthz_band_config *band, const subthz_synth_config *synth,
                                subthz_sweep **sweep)
{
    if (subthz_status s =
            require(scene != nullptr && band != nullptr && synth != nullptr && sweep != nullptr,
                    "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        std::optional<Target> tgt;
        if (target != nullptr)
            tgt = to_target(*target);
        auto out = std::make_unique<subthz_sweep>();
        out->value = synthesize_sweep(to_scene(*scene), tgt, to_band(*band), to_synth(*synth));
        *sweep = out.release();
    });
}

// ---------------------------------------------------------------------- sweeps --

subthz_status subthz_sweep_create(const subthz_band_config *band, const double *re, const double *im,
                                  const char *label, subthz_sweep **sweep)
{
    if (subthz_status s =
            require(band != nullptr && re != nullptr && im != nullptr && sweep != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_sweep>();
        out->value.band = to_band(*band);
        out->value.band.validate();
        out->value.label = label != nullptr ? label : "";
        out->value.values.resize(static_cast<std::size_t>(out->value.band.n_points));
        for (std::size_t k = 0; k < out->value.values.size(); ++k)
            out->value.values[k] = {re[k], im[k]};
        out->value.validate();
        *sweep = out.release();
    });
}

void subthz_sweep_free(subthz_sweep *sweep) { delete sweep; }

int32_t subthz_sweep_n_points(const subthz_sweep *sweep)
{
    return sweep != nullptr ? static_cast<int32_t>(sweep->value.values.size()) : 0;
}

subthz_status subthz_sweep_band(const subthz_sweep *sweep, subthz_band_config *band)
{
    if (subthz_status s = require(sweep != nullptr && band != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    from_band(sweep->value.band, *band);
    return SUBTHZ_OK;
}

subthz_status subthz_sweep_label(const subthz_sweep *sweep, char *buffer, size_t capacity)
{
    if (subthz_status s = require(sweep != nullptr, "null sweep"); s != SUBTHZ_OK)
        return s;
    return copy_label(sweep->value.label, buffer, capacity);
}

subthz_status subthz_sweep_values(const subthz_sweep *sweep, double *re, double *im, int32_t capacity)
{
    if (subthz_status s = require(sweep != nullptr && re != nullptr && im != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    if (capacity < static_cast<int32_t>(sweep->value.values.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "value capacity too small");
    for (std::size_t k = 0; k < sweep->value.values.size(); ++k)
    {
        re[k] = sweep->value.values[k].real();
        im[k] = sweep->value.values[k].imag();
    }
    return SUBTHZ_OK;
}

subthz_status subthz_sweep_read(const char *path, subthz_sweep **sweep)
{
    if (subthz_status s = require(path != nullptr && sweep != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_sweep>();
        out->value = read_sweep(path);
        *sweep = out.release();
    });
}

subthz_status subthz_sweep_write(const subthz_sweep *sweep, const char *path)
{
    if (subthz_status s = require(sweep != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_sweep(sweep->value, path); });
}

// ------------------------------------------------------------------ attenuation --

subthz_status subthz_excess_attenuation(const subthz_sweep *measured, const subthz_sweep *baseline,
                                        int convention, subthz_atten **series)
{
    if (subthz_status s =
            require(measured != nullptr && baseline != nullptr && series != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const DbConvention conv = convention == SUBTHZ_CONVENTION_POWER_10LOG ? DbConvention::power_10log
                                                                              : DbConvention::amplitude_20log;
        auto out = std::make_unique<subthz_atten>();
        out->value = excess_attenuation(measured->value, baseline->value, conv);
        *series = out.release();
    });
}

void subthz_atten_free(subthz_atten *series) { delete series; }

int32_t subthz_atten_n_points(const subthz_atten *series)
{
    return series != nullptr ? static_cast<int32_t>(series->value.a_db.size()) : 0;
}

subthz_status subthz_atten_values(const subthz_atten *series, double *a_db, int32_t capacity)
{
    if (subthz_status s = require(series != nullptr && a_db != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    if (capacity < static_cast<int32_t>(series->value.a_db.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "value capacity too small");
    std::memcpy(a_db, series->value.a_db.data(), series->value.a_db.size() * sizeof(double));
    return SUBTHZ_OK;
}

subthz_status subthz_atten_stats(const subthz_atten *series, double *mean_db, double *std_db)
{
    if (subthz_status s = require(series != nullptr && mean_db != nullptr && std_db != nullptr,
                                  "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const AttenuationStats st = stats(series->value);
        *mean_db = st.mean_db;
        *std_db = st.std_db;
    });
}

subthz_status subthz_atten_write_csv(const subthz_atten *series, const char *path)
{
    if (subthz_status s = require(series != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_attenuation_csv(series->value, path); });
}

subthz_status subthz_atten_read_csv(const char *path, const char *label, subthz_atten **series)
{
    if (subthz_status s = require(path != nullptr && series != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_atten>();
        out->value = read_attenuation_csv(path, label != nullptr ? label : "");
        *series = out.release();
    });
}

// ------------------------------------------------- frequency classification --

subthz_status subthz_fit_models(const subthz_atten *const *series, int32_t n_series, int32_t bin_count,
                                double epsilon, subthz_models **models)
{
    if (subthz_status s = require(series != nullptr && models != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        std::vector<AttenuationSeries> all;
        all.reserve(static_cast<std::size_t>(n_series));
        for (int32_t i = 0; i < n_series; ++i)
        {
            if (series[i] == nullptr)
                throw std::invalid_argument("null series in list");
            all.push_back(series[i]->value);
        }
        auto out = std::make_unique<subthz_models>();
        out->value = fit_models(all, bin_count, epsilon);
        *models = out.release();
    });
}

void subthz_models_free(subthz_models *models) { delete models; }

int32_t subthz_models_count(const subthz_models *models)
{
    return models != nullptr ? static_cast<int32_t>(models->value.size()) : 0;
}

int32_t subthz_models_bin_count(const subthz_models *models)
{
    return models != nullptr && !models->value.empty() ? models->value.front().bin_count() : 0;
}

subthz_status subthz_models_label(const subthz_models *models, int32_t index, char *buffer,
                                  size_t capacity)
{
    if (subthz_status s = require(models != nullptr, "null models"); s != SUBTHZ_OK)
        return s;
    if (index < 0 || index >= static_cast<int32_t>(models->value.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "hypothesis index out of range");
    return copy_label(models->value[static_cast<std::size_t>(index)].hypothesis_label, buffer, capacity);
}

subthz_status subthz_models_write(const subthz_models *models, const char *path)
{
    if (subthz_status s = require(models != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_models(models->value, path); });
}

subthz_status subthz_models_read(const char *path, subthz_models **models)
{
    if (subthz_status s = require(path != nullptr && models != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_models>();
        out->value = read_models(path);
        *models = out.release();
    });
}

subthz_status subthz_llr(const subthz_models *models, int32_t i, int32_t j, double a_db, double *llr_nats)
{
    if (subthz_status s = require(models != nullptr && llr_nats != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    const int32_t n = static_cast<int32_t>(models->value.size());
    if (i < 0 || i >= n || j < 0 || j >= n)
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "hypothesis index out of range");
    return guarded([&] {
        *llr_nats = llr(models->value[static_cast<std::size_t>(i)],
                        models->value[static_cast<std::size_t>(j)], a_db);
    });
}

subthz_status subthz_classify(const subthz_models *models, const subthz_atten *observed,
                              subthz_classification **result)
{
    if (subthz_status s =
            require(models != nullptr && observed != nullptr && result != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_classification>();
        out->value = classify(observed->value, models->value);
        *result = out.release();
    });
}

void subthz_classification_free(subthz_classification *result) { delete result; }

int32_t subthz_classification_winner(const subthz_classification *result)
{
    return result != nullptr ? result->value.winner_index : -1;
}

int32_t subthz_classification_ambiguous(const subthz_classification *result)
{
    return result != nullptr && result->value.ambiguous_flag ? 1 : 0;
}

int32_t subthz_classification_out_of_range(const subthz_classification *result)
{
    return result != nullptr ? result->value.out_of_range_count : 0;
}

subthz_status subthz_classification_votes(const subthz_classification *result, int32_t *votes,
                                          int32_t capacity)
{
    if (subthz_status s = require(result != nullptr && votes != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    const auto &v = result->value.per_sample_votes;
    if (capacity < static_cast<int32_t>(v.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "vote capacity too small");
    for (std::size_t i = 0; i < v.size(); ++i)
        votes[i] = v[i];
    return SUBTHZ_OK;
}

subthz_status subthz_classification_vote_matrix(const subthz_classification *result, int32_t *matrix,
                                                int32_t capacity)
{
    if (subthz_status s = require(result != nullptr && matrix != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    const auto &m = result->value.vote_matrix;
    const int32_t n = static_cast<int32_t>(m.size());
    if (capacity < n * n)
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "matrix capacity too small");
    for (int32_t i = 0; i < n; ++i)
        for (int32_t j = 0; j < n; ++j)
            matrix[i * n + j] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return SUBTHZ_OK;
}

// ----------------------------------------------------- power delay profiles --

subthz_status subthz_delay_resolution(const subthz_band_config *band, double *resolution_m)
{
    if (subthz_status s = require(band != nullptr && resolution_m != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] { *resolution_m = delay_resolution_m(to_band(*band)); });
}

subthz_status subthz_pdp_compute(const subthz_sweep *sweep, int window, double kaiser_beta,
                                 int32_t zero_pad_factor, subthz_pdp **out)
{
    if (subthz_status s = require(sweep != nullptr && out != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto result = std::make_unique<subthz_pdp>();
        result->value = pdp(sweep->value, to_window(window), kaiser_beta, zero_pad_factor);
        *out = result.release();
    });
}

void subthz_pdp_free(subthz_pdp *pdp) { delete pdp; }

int32_t subthz_pdp_n_bins(const subthz_pdp *pdp)
{
    return pdp != nullptr ? static_cast<int32_t>(pdp->value.power_db.size()) : 0;
}

subthz_status subthz_pdp_values(const subthz_pdp *pdp, double *path_length_m, double *power_db,
                                int32_t capacity)
{
    if (subthz_status s = require(pdp != nullptr, "null pdp"); s != SUBTHZ_OK)
        return s;
    const auto &v = pdp->value;
    if (capacity < static_cast<int32_t>(v.power_db.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "pdp capacity too small");
    if (path_length_m != nullptr)
        std::memcpy(path_length_m, v.path_length_m.data(), v.path_length_m.size() * sizeof(double));
    if (power_db != nullptr)
        std::memcpy(power_db, v.power_db.data(), v.power_db.size() * sizeof(double));
    return SUBTHZ_OK;
}

subthz_status subthz_pdp_info(const subthz_pdp *pdp, double *delay_resolution_m,
                              double *alias_free_range_m, double *bin_spacing_m, int32_t *aliasing_warning)
{
    if (subthz_status s = require(pdp != nullptr, "null pdp"); s != SUBTHZ_OK)
        return s;
    if (delay_resolution_m != nullptr)
        *delay_resolution_m = pdp->value.delay_resolution_m;
    if (alias_free_range_m != nullptr)
        *alias_free_range_m = pdp->value.alias_free_range_m;
    if (bin_spacing_m != nullptr)
        *bin_spacing_m = pdp->value.bin_spacing_m;
    if (aliasing_warning != nullptr)
        *aliasing_warning = pdp->value.aliasing_warning ? 1 : 0;
    return SUBTHZ_OK;
}

subthz_status subthz_pdp_write_csv(const subthz_pdp *pdp, const char *path, int centimeters)
{
    if (subthz_status s = require(pdp != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_pdp_csv(pdp->value, path, centimeters != 0); });
}

// ------------------------------------------------------------ CIR features --

subthz_status subthz_extract_features(const subthz_pdp *pdp, int32_t max_components,
                                      double min_prominence_db, int32_t min_separation_bins,
                                      subthz_features **features)
{
    if (subthz_status s = require(pdp != nullptr && features != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_features>();
        out->value = extract_features(pdp->value, max_components, min_prominence_db, min_separation_bins);
        *features = out.release();
    });
}

subthz_status subthz_features_create(const double *amplitude, const double *delay_s, int32_t count,
                                     double delay_resolution_s, subthz_features **features)
{
    if (subthz_status s =
            require(amplitude != nullptr && delay_s != nullptr && features != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_features>();
        for (int32_t k = 0; k < count; ++k)
        {
            out->value.amplitude.push_back(amplitude[k]);
            out->value.delay_s.push_back(delay_s[k]);
            out->value.path_length_m.push_back(delay_s[k] * speed_of_light_m_s);
        }
        out->value.delay_resolution_s = delay_resolution_s;
        out->value.validate();
        *features = out.release();
    });
}

void subthz_features_free(subthz_features *features) { delete features; }

int32_t subthz_features_count(const subthz_features *features)
{
    return features != nullptr ? features->value.count() : 0;
}

double subthz_features_delay_resolution(const subthz_features *features)
{
    return features != nullptr ? features->value.delay_resolution_s : 0.0;
}

subthz_status subthz_features_values(const subthz_features *features, double *amplitude, double *delay_s,
                                     double *path_length_m, int32_t capacity)
{
    if (subthz_status s = require(features != nullptr, "null features"); s != SUBTHZ_OK)
        return s;
    const auto &v = features->value;
    if (capacity < v.count())
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "feature capacity too small");
    for (int k = 0; k < v.count(); ++k)
    {
        if (amplitude != nullptr)
            amplitude[k] = v.amplitude[static_cast<std::size_t>(k)];
        if (delay_s != nullptr)
            delay_s[k] = v.delay_s[static_cast<std::size_t>(k)];
        if (path_length_m != nullptr)
            path_length_m[k] = v.path_length_m[static_cast<std::size_t>(k)];
    }
    return SUBTHZ_OK;
}

subthz_status subthz_features_write(const subthz_features *features, const char *path)
{
    if (subthz_status s = require(features != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_features(features->value, path); });
}

subthz_status subthz_features_read(const char *path, subthz_features **features)
{
    if (subthz_status s = require(path != nullptr && features != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_features>();
        out->value = read_features(path);
        *features = out.release();
    });
}

subthz_status subthz_match_features(const subthz_features *baseline, const subthz_features *observed,
                                    double delay_tolerance_s, subthz_perturbation **report)
{
    if (subthz_status s =
            require(baseline != nullptr && observed != nullptr && report != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_perturbation>();
        out->value = match_and_perturb(baseline->value, observed->value, delay_tolerance_s);
        *report = out.release();
    });
}

void subthz_perturbation_free(subthz_perturbation *report) { delete report; }

int32_t subthz_perturbation_matched_count(const subthz_perturbation *report)
{
    return report != nullptr ? static_cast<int32_t>(report->value.matched_pairs.size()) : 0;
}

int32_t subthz_perturbation_delta_k(const subthz_perturbation *report)
{
    return report != nullptr ? report->value.delta_k : 0;
}

int32_t subthz_perturbation_unmatched_count(const subthz_perturbation *report)
{
    return report != nullptr ? static_cast<int32_t>(report->value.unmatched_baseline.size()) : 0;
}

subthz_status subthz_perturbation_matched(const subthz_perturbation *report, int32_t *baseline_index,
                                          int32_t *observed_index, double *rho_db, int32_t capacity)
{
    if (subthz_status s = require(report != nullptr, "null report"); s != SUBTHZ_OK)
        return s;
    const auto &pairs = report->value.matched_pairs;
    if (capacity < static_cast<int32_t>(pairs.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "pair capacity too small");
    for (std::size_t k = 0; k < pairs.size(); ++k)
    {
        if (baseline_index != nullptr)
            baseline_index[k] = pairs[k].baseline_index;
        if (observed_index != nullptr)
            observed_index[k] = pairs[k].observed_index;
        if (rho_db != nullptr)
            rho_db[k] = report->value.rho_db[k];
    }
    return SUBTHZ_OK;
}

subthz_status subthz_perturbation_new_components(const subthz_perturbation *report,
                                                 subthz_features **features)
{
    if (subthz_status s = require(report != nullptr && features != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_features>();
        out->value = report->value.new_components;
        *features = out.release();
    });
}

subthz_status subthz_perturbation_unmatched(const subthz_perturbation *report, int32_t *baseline_index,
                                            int32_t capacity)
{
    if (subthz_status s = require(report != nullptr && baseline_index != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    const auto &lost = report->value.unmatched_baseline;
    if (capacity < static_cast<int32_t>(lost.size()))
        return fail(SUBTHZ_ERROR_INVALID_ARGUMENT, "index capacity too small");
    for (std::size_t k = 0; k < lost.size(); ++k)
        baseline_index[k] = lost[k];
    return SUBTHZ_OK;
}

subthz_status subthz_perturbation_write(const subthz_perturbation *report, const char *path)
{
    if (subthz_status s = require(report != nullptr && path != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { write_perturbation_report(report->value, path); });
}

// ------------------------------------------------------------- localization --

subthz_status subthz_classify_regime(const subthz_perturbation *report, double rho_threshold_db,
                                     int32_t *regime)
{
    if (subthz_status s = require(report != nullptr && regime != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { *regime = static_cast<int32_t>(classify_regime(report->value, rho_threshold_db)); });
}

subthz_status subthz_invert_scatter_path(double mean_new_path_length_m, const subthz_scene_config *scene,
                                         double assumed_x_m, double *y_m)
{
    if (subthz_status s = require(scene != nullptr && y_m != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] { *y_m = invert_scatter_path(mean_new_path_length_m, to_scene(*scene), assumed_x_m); });
}

subthz_status subthz_estimate_offset(const subthz_perturbation *report, const subthz_scene_config *scene,
                                     const subthz_localize_config *config,
                                     subthz_offset_estimate *estimate)
{
    if (subthz_status s =
            require(report != nullptr && scene != nullptr && estimate != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        LocalizeOptions options;
        if (config != nullptr)
        {
            options.rho_threshold_db = config->rho_threshold_db;
            options.los_block_threshold_db = config->los_block_threshold_db;
            options.assumed_x_m = config->assumed_x_m;
        }
        const OffsetEstimate e = estimate_offset(report->value, to_scene(*scene), options);
        estimate->regime = static_cast<int32_t>(e.regime);
        estimate->has_estimate = e.has_estimate ? 1 : 0;
        estimate->y_m = e.y_m;
        estimate->y_sigma_m = e.y_sigma_m;
        estimate->no_target = e.no_target_flag ? 1 : 0;
        estimate->delta_k = e.delta_k;
        estimate->mean_rho_db = e.mean_rho_db;
        estimate->mean_new_path_length_m = e.mean_new_path_length_m;
    });
}

// ----------------------------------------------------------------- sessions --

subthz_status subthz_session_default(subthz_session **session)
{
    if (subthz_status s = require(session != nullptr, "null output"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_session>();
        out->value = default_session();
        *session = out.release();
    });
}

subthz_status subthz_session_read(const char *path, subthz_session **session)
{
    if (subthz_status s = require(path != nullptr && session != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        auto out = std::make_unique<subthz_session>();
        out->value = read_session(path);
        *session = out.release();
    });
}

void subthz_session_free(subthz_session *session) { delete session; }

subthz_status subthz_session_set_seed(subthz_session *session, uint64_t seed)
{
    if (subthz_status s = require(session != nullptr, "null session"); s != SUBTHZ_OK)
        return s;
    session->value.synth.seed = seed;
    return SUBTHZ_OK;
}

subthz_status subthz_scene_read(const char *path, subthz_scene_config *scene,
                                subthz_target_config *target)
{
    if (subthz_status s = require(path != nullptr && scene != nullptr, "null argument"); s != SUBTHZ_OK)
        return s;
    return guarded([&] {
        const SceneFile file = read_scene(path);
        from_scene(file.scene, *scene);
        if (target != nullptr)
            from_target(file.target, *target);
    });
}

subthz_status subthz_session_simulate(const subthz_session *session, const char *out_dir)
{
    if (subthz_status s = require(session != nullptr && out_dir != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] { simulate_session(session->value, out_dir); });
}

subthz_status subthz_session_run(const subthz_session *session, const char *out_dir)
{
    if (subthz_status s = require(session != nullptr && out_dir != nullptr, "null argument");
        s != SUBTHZ_OK)
        return s;
    return guarded([&] { run_experiment(session->value, out_dir); });
}
