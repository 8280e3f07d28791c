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
// Command line front end. Uses only the public C API of libsubthz.
//
// Exit codes: 0 success, 2 usage error, 3 data/parse error,
//             4 numerical/model error.

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <subthz/subthz.h>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_model = 4;

int exit_code_for(subthz_status status)
{
    switch (status)
    {
    case SUBTHZ_OK:
        return exit_ok;
    case SUBTHZ_ERROR_PARSE:
    case SUBTHZ_ERROR_IO:
    case SUBTHZ_ERROR_MISMATCH:
        return exit_data;
    case SUBTHZ_ERROR_INVALID_ARGUMENT:
    case SUBTHZ_ERROR_NUMERIC:
    case SUBTHZ_ERROR_INTERNAL:
    default:
        return exit_model;
    }
}

// fail hard on the first library error, reporting the detail message
[[noreturn]] void die(subthz_status status)
{
    std::fprintf(stderr, "subthz: %s: %s\n", subthz_status_name(status), subthz_last_error_message());
    std::exit(exit_code_for(status));
}

void check(subthz_status status)
{
    if (status != SUBTHZ_OK)
        die(status);
}

int window_id(const std::string &name)
{
    if (name == "rectangular")
        return SUBTHZ_WINDOW_RECTANGULAR;
    if (name == "hann")
        return SUBTHZ_WINDOW_HANN;
    return SUBTHZ_WINDOW_KAISER;
}

struct SweepPtr
{
    subthz_sweep *p = nullptr;
    ~SweepPtr() { subthz_sweep_free(p); }
};
struct AttenPtr
{
    subthz_atten *p = nullptr;
    ~AttenPtr() { subthz_atten_free(p); }
};
struct ModelsPtr
{
    subthz_models *p = nullptr;
    ~ModelsPtr() { subthz_models_free(p); }
};
struct PdpPtr
{
    subthz_pdp *p = nullptr;
    ~PdpPtr() { subthz_pdp_free(p); }
};
struct FeaturesPtr
{
    subthz_features *p = nullptr;
    ~FeaturesPtr() { subthz_features_free(p); }
};
struct PerturbationPtr
{
    subthz_perturbation *p = nullptr;
    ~PerturbationPtr() { subthz_perturbation_free(p); }
};
struct SessionPtr
{
    subthz_session *p = nullptr;
    ~SessionPtr() { subthz_session_free(p); }
};
struct ClassificationPtr
{
    subthz_classification *p = nullptr;
    ~ClassificationPtr() { subthz_classification_free(p); }
};

SessionPtr load_session(const std::string &path)
{
    SessionPtr session;
    if (path.empty())
        check(subthz_session_default(&session.p));
    else
        check(subthz_session_read(path.c_str(), &session.p));
    return session;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sub-THz link blockage sensing and passive localization toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // ---- simulate ------------------------------------------------------
    std::string sim_session;
    std::string sim_out;
    std::uint64_t sim_seed = 0;
    bool sim_has_seed = false;
    auto *simulate = app.add_subcommand("simulate", "synthesize the session's sweeps");
    simulate->add_option("--session", sim_session, "session config file (defaults when omitted)");
    simulate->add_option("--out", sim_out, "output directory")->required();
    simulate->add_option("--seed", sim_seed, "override the synthesis seed")
        ->each([&](const std::string &) { sim_has_seed = true; });

    // ---- run -------------------------------------------------------------
    std::string run_session;
    std::string run_out;
    std::uint64_t run_seed = 0;
    bool run_has_seed = false;
    auto *run = app.add_subcommand("run", "run the full experiment pipeline");
    run->add_option("--session", run_session, "session config file (defaults when omitted)");
    run->add_option("--out", run_out, "output directory")->required();
    run->add_option("--seed", run_seed, "override the synthesis seed")
        ->each([&](const std::string &) { run_has_seed = true; });

    // ---- attenuate -------------------------------------------------------
    std::string att_sweep;
    std::string att_baseline;
    std::string att_out;
    std::string att_convention = "amplitude_20log";
    auto *attenuate = app.add_subcommand("attenuate", "excess attenuation of a sweep vs a baseline");
    attenuate->add_option("--sweep", att_sweep, "measured sweep file")->required();
    attenuate->add_option("--baseline", att_baseline, "calibration sweep file")->required();
    attenuate->add_option("--out", att_out, "output CSV (freq_hz,a_db)")->required();
    attenuate->add_option("--convention", att_convention, "amplitude_20log|power_10log")
        ->check(CLI::IsMember({"amplitude_20log", "power_10log"}));

    // ---- stats ----------------------------------------------------------
    std::string stats_atten;
    auto *stats_cmd = app.add_subcommand("stats", "mean/std of an attenuation series");
    stats_cmd->add_option("--atten", stats_atten, "attenuation CSV")->required();

    // ---- fit -------------------------------------------------------------
    std::vector<std::string> fit_atten;
    std::string fit_out;
    int fit_bins = 0;
    double fit_epsilon = 1e-6;
    auto *fit = app.add_subcommand("fit", "fit per-hypothesis sample distributions");
    fit->add_option("--atten", fit_atten, "attenuation CSV (repeat per hypothesis)")
        ->required()
        ->expected(-1);
    fit->add_option("--out", fit_out, "output models file")->required();
    fit->add_option("--bins", fit_bins, "bin count (0 = automatic)");
    fit->add_option("--epsilon", fit_epsilon, "smoothing probability mass per bin");

    // ---- classify ---------------------------------------------------------
    std::string cls_models;
    std::string cls_sweep;
    std::string cls_baseline;
    std::string cls_atten;
    std::string cls_convention = "amplitude_20log";
    auto *classify = app.add_subcommand("classify", "classify an observation against trained models");
    classify->add_option("--models", cls_models, "models file")->required();
    classify->add_option("--sweep", cls_sweep, "observed sweep file (needs --baseline)");
    classify->add_option("--baseline", cls_baseline, "calibration sweep file");
    classify->add_option("--atten", cls_atten, "precomputed attenuation CSV");
    classify->add_option("--convention", cls_convention, "amplitude_20log|power_10log")
        ->check(CLI::IsMember({"amplitude_20log", "power_10log"}));

    // ---- pdp --------------------------------------------------------------
    std::string pdp_sweep;
    std::string pdp_out;
    std::string pdp_window = "kaiser";
    double pdp_beta = 6.0;
    int pdp_pad = 8;
    bool pdp_cm = false;
    auto *pdp_cmd = app.add_subcommand("pdp", "power delay profile of a sweep");
    pdp_cmd->add_option("--sweep", pdp_sweep, "sweep file")->required();
    pdp_cmd->add_option("--out", pdp_out, "output CSV (path_length,power_db)")->required();
    pdp_cmd->add_option("--window", pdp_window, "rectangular|hann|kaiser")
        ->check(CLI::IsMember({"rectangular", "hann", "kaiser"}));
    pdp_cmd->add_option("--beta", pdp_beta, "kaiser beta");
    pdp_cmd->add_option("--pad", pdp_pad, "zero padding factor");
    pdp_cmd->add_flag("--cm", pdp_cm, "emit path lengths in centimeters");

    // ---- features ------------------------------------------------------------
    std::string feat_sweep;
    std::string feat_out;
    std::string feat_window = "kaiser";
    double feat_beta = 6.0;
    int feat_pad = 8;
    int feat_max = 9;
    double feat_prominence = 6.0;
    int feat_separation = 3;
    auto *features = app.add_subcommand("features", "extract CIR multipath features from a sweep");
    features->add_option("--sweep", feat_sweep, "sweep file")->required();
    features->add_option("--out", feat_out, "output features file")->required();
    features->add_option("--window", feat_window, "rectangular|hann|kaiser")
        ->check(CLI::IsMember({"rectangular", "hann", "kaiser"}));
    features->add_option("--beta", feat_beta, "kaiser beta");
    features->add_option("--pad", feat_pad, "zero padding factor");
    features->add_option("--max-components", feat_max, "maximum components to keep");
    features->add_option("--min-prominence-db", feat_prominence, "minimum peak prominence");
    features->add_option("--min-separation-bins", feat_separation, "minimum peak separation (padded bins)");

    // ---- localize ------------------------------------------------------------
    std::string loc_baseline;
    std::string loc_observed;
    std::string loc_scene;
    double loc_tolerance_bins = 2.0;
    double loc_rho_threshold = 3.0;
    double loc_assumed_x = -1.0;
    auto *localize = app.add_subcommand("localize", "estimate the target offset from CIR features");
    localize->add_option("--baseline", loc_baseline, "baseline features file")->required();
    localize->add_option("--observed", loc_observed, "observed features file")->required();
    localize->add_option("--scene", loc_scene, "scene config file")->required();
    localize->add_option("--delay-tolerance-bins", loc_tolerance_bins, "matching tolerance (resolution bins)");
    localize->add_option("--rho-threshold-db", loc_rho_threshold, "near-field attenuation threshold");
    localize->add_option("--assumed-x", loc_assumed_x, "scatter abscissa in m (<0 = midpoint)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    if (simulate->parsed())
    {
        SessionPtr session = load_session(sim_session);
        if (sim_has_seed)
            check(subthz_session_set_seed(session.p, sim_seed));
        check(subthz_session_simulate(session.p, sim_out.c_str()));
        return exit_ok;
    }

    if (run->parsed())
    {
        SessionPtr session = load_session(run_session);
        if (run_has_seed)
            check(subthz_session_set_seed(session.p, run_seed));
        check(subthz_session_run(session.p, run_out.c_str()));
        return exit_ok;
    }

    if (attenuate->parsed())
    {
        SweepPtr measured;
        SweepPtr baseline;
        check(subthz_sweep_read(att_sweep.c_str(), &measured.p));
        check(subthz_sweep_read(att_baseline.c_str(), &baseline.p));
        AttenPtr series;
        const int convention = att_convention == "power_10log" ? SUBTHZ_CONVENTION_POWER_10LOG
                                                               : SUBTHZ_CONVENTION_AMPLITUDE_20LOG;
        check(subthz_excess_attenuation(measured.p, baseline.p, convention, &series.p));
        check(subthz_atten_write_csv(series.p, att_out.c_str()));
        return exit_ok;
    }

    if (stats_cmd->parsed())
    {
        AttenPtr series;
        check(subthz_atten_read_csv(stats_atten.c_str(), nullptr, &series.p));
        double mean = 0.0;
        double sd = 0.0;
        check(subthz_atten_stats(series.p, &mean, &sd));
        std::printf("mean_db %.17g\nstd_db %.17g\n", mean, sd);
        return exit_ok;
    }

    if (fit->parsed())
    {
        std::vector<AttenPtr> series(fit_atten.size());
        std::vector<const subthz_atten *> raw;
        for (std::size_t i = 0; i < fit_atten.size(); ++i)
        {
            check(subthz_atten_read_csv(fit_atten[i].c_str(), nullptr, &series[i].p));
            raw.push_back(series[i].p);
        }
        ModelsPtr models;
        check(subthz_fit_models(raw.data(), static_cast<int32_t>(raw.size()), fit_bins, fit_epsilon,
                                &models.p));
        check(subthz_models_write(models.p, fit_out.c_str()));
        return exit_ok;
    }

    if (classify->parsed())
    {
        ModelsPtr models;
        check(subthz_models_read(cls_models.c_str(), &models.p));

        AttenPtr observed;
        if (!cls_atten.empty())
        {
            check(subthz_atten_read_csv(cls_atten.c_str(), nullptr, &observed.p));
        }
        else if (!cls_sweep.empty() && !cls_baseline.empty())
        {
            SweepPtr sweep;
            SweepPtr baseline;
            check(subthz_sweep_read(cls_sweep.c_str(), &sweep.p));
            check(subthz_sweep_read(cls_baseline.c_str(), &baseline.p));
            const int convention = cls_convention == "power_10log" ? SUBTHZ_CONVENTION_POWER_10LOG
                                                                   : SUBTHZ_CONVENTION_AMPLITUDE_20LOG;
            check(subthz_excess_attenuation(sweep.p, baseline.p, convention, &observed.p));
        }
        else
        {
            std::fprintf(stderr, "subthz: classify needs --atten, or --sweep together with --baseline\n");
            return exit_usage;
        }

        ClassificationPtr result;
        check(subthz_classify(models.p, observed.p, &result.p));

        const int32_t n = subthz_models_count(models.p);
        char label[128] = {0};
        check(subthz_models_label(models.p, subthz_classification_winner(result.p), label, sizeof(label)));
        std::printf("winner_index %d\n", subthz_classification_winner(result.p));
        std::printf("winner_label %s\n", label);
        std::printf("ambiguous %d\n", subthz_classification_ambiguous(result.p));
        std::printf("out_of_range %d\n", subthz_classification_out_of_range(result.p));
        std::vector<int32_t> votes(static_cast<std::size_t>(n));
        check(subthz_classification_votes(result.p, votes.data(), n));
        std::printf("votes");
        for (int32_t v : votes)
            std::printf(" %d", v);
        std::printf("\n");
        return exit_ok;
    }

    if (pdp_cmd->parsed())
    {
        SweepPtr sweep;
        check(subthz_sweep_read(pdp_sweep.c_str(), &sweep.p));
        PdpPtr profile;
        check(subthz_pdp_compute(sweep.p, window_id(pdp_window), pdp_beta, pdp_pad, &profile.p));
        check(subthz_pdp_write_csv(profile.p, pdp_out.c_str(), pdp_cm ? 1 : 0));
        double resolution = 0.0;
        double alias = 0.0;
        int32_t warn = 0;
        check(subthz_pdp_info(profile.p, &resolution, &alias, nullptr, &warn));
        std::printf("delay_resolution_m %.17g\nalias_free_range_m %.17g\naliasing_warning %d\n", resolution,
                    alias, warn);
        return exit_ok;
    }

    if (features->parsed())
    {
        SweepPtr sweep;
        check(subthz_sweep_read(feat_sweep.c_str(), &sweep.p));
        PdpPtr profile;
        check(subthz_pdp_compute(sweep.p, window_id(feat_window), feat_beta, feat_pad, &profile.p));
        FeaturesPtr feats;
        check(subthz_extract_features(profile.p, feat_max, feat_prominence, feat_separation, &feats.p));
        check(subthz_features_write(feats.p, feat_out.c_str()));
        std::printf("n_components %d\n", subthz_features_count(feats.p));
        return exit_ok;
    }

    if (localize->parsed())
    {
        FeaturesPtr baseline;
        FeaturesPtr observed;
        check(subthz_features_read(loc_baseline.c_str(), &baseline.p));
        check(subthz_features_read(loc_observed.c_str(), &observed.p));

        subthz_scene_config scene;
        check(subthz_scene_read(loc_scene.c_str(), &scene, nullptr));

        // tolerance in seconds: bins of the resolution carried in the features file
        double resolution_s = subthz_features_delay_resolution(observed.p);
        if (resolution_s <= 0.0)
            resolution_s = subthz_features_delay_resolution(baseline.p);
        if (resolution_s <= 0.0)
        {
            std::fprintf(stderr, "subthz: features files carry no delay resolution\n");
            return exit_data;
        }

        PerturbationPtr report;
        check(subthz_match_features(baseline.p, observed.p, loc_tolerance_bins * resolution_s, &report.p));

        subthz_localize_config config;
        subthz_localize_defaults(&config);
        config.rho_threshold_db = loc_rho_threshold;
        config.assumed_x_m = loc_assumed_x;

        subthz_offset_estimate estimate;
        check(subthz_estimate_offset(report.p, &scene, &config, &estimate));

        const char *regime = estimate.regime == SUBTHZ_REGIME_LOS_BLOCKING ? "los_blocking"
                             : estimate.regime == SUBTHZ_REGIME_SCATTER_PATH
                                 ? "scatter_path"
                                 : "near_field_attenuation";
        std::printf("regime %s\n", regime);
        std::printf("has_estimate %d\n", estimate.has_estimate);
        if (estimate.has_estimate != 0)
        {
            std::printf("y_m %.17g\n", estimate.y_m);
            std::printf("y_sigma_m %.17g\n", estimate.y_sigma_m);
        }
        std::printf("no_target %d\n", estimate.no_target);
        std::printf("delta_k %d\n", estimate.delta_k);
        std::printf("mean_rho_db %.17g\n", estimate.mean_rho_db);
        std::printf("mean_new_path_length_m %.17g\n", estimate.mean_new_path_length_m);
        return exit_ok;
    }

    return exit_usage;
}
