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

#include "session.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

#include "error.hpp"
#include "freqclass.hpp"
#include "io.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace subthz
{

void SessionConfig::validate() const
{
    scene.validate();
    target_template.validate();
    synth.validate();
    if (bands.empty())
        throw std::invalid_argument("session: at least one band is required");
    for (const BandConfig &band : bands)
    {
        band.validate();
        int hits = 0;
        for (const BandConfig &other : bands)
            if (other.band_id == band.band_id)
                ++hits;
        if (hits != 1)
            throw std::invalid_argument("session: duplicate band id '" + band.band_id + "'");
    }
    for (std::size_t i = 0; i < offsets_cm.size(); ++i)
        for (std::size_t j = i + 1; j < offsets_cm.size(); ++j)
            if (offsets_cm[i] == offsets_cm[j])
                throw std::invalid_argument("session: target offsets must be distinct");
    if (!(classifier_epsilon > 0.0))
        throw std::invalid_argument("session: classifier epsilon must be positive");
    if (classifier_bins < 0)
        throw std::invalid_argument("session: classifier bin count must be >= 0");
    if (zero_pad_factor < 1)
        throw std::invalid_argument("session: zero_pad_factor must be >= 1");
    if (max_components < 1)
        throw std::invalid_argument("session: max_components must be >= 1");
    if (min_separation_bins < 0)
        throw std::invalid_argument("session: min_separation_bins must be >= 0");
    if (!(delay_tolerance_bins >= 0.0))
        throw std::invalid_argument("session: delay_tolerance_bins must be >= 0");
    if (target_x_m)
    {
        const double d = los_path_length(scene);
        if (!(*target_x_m > 0.0 && *target_x_m < d))
            throw std::invalid_argument("session: target.x_m must lie strictly between TX and RX");
    }
}

Target SessionConfig::target_at_offset(double offset_cm) const
{
    Target t = target_template;
    t.center.x_m = target_x_m.value_or(los_path_length(scene) / 2.0);
    t.center.y_m = offset_cm / 100.0;
    return t;
}

std::string SessionConfig::offset_label(double offset_cm) const
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "y_%gcm", offset_cm);
    return buf;
}

SessionConfig default_session() { return SessionConfig{}; }

namespace
{

void ensure_dir(const fs::path &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create directory '" + dir.string() + "': " + ec.message());
}

SynthesisConfig stream_config(const SessionConfig &session, std::size_t band_index, std::size_t stream)
{
    SynthesisConfig cfg = session.synth;
    cfg.seed = mix_seed(session.synth.seed, band_index * 1024 + stream);
    return cfg;
}

struct OffsetOutputs
{
    AttenuationSeries series;
    AttenuationStats statistics;
};

OffsetOutputs process_offset(const SessionConfig &session, const BandConfig &band,
                             std::size_t band_index, std::size_t offset_index,
                             const FrequencySweep &baseline, const CirFeatureSet &baseline_features,
                             const fs::path &band_dir)
{
    const double offset_cm = session.offsets_cm[offset_index];
    const std::string label = session.offset_label(offset_cm);
    const fs::path dir = band_dir / label;
    ensure_dir(dir);

    const Target target = session.target_at_offset(offset_cm);
    const SynthesisConfig cfg = stream_config(session, band_index, offset_index + 1);
    FrequencySweep sweep = synthesize_sweep(session.scene, target, band, cfg);
    sweep.label = label;
    write_sweep(sweep, (dir / "measured.sweep").string());

    OffsetOutputs out;
    out.series = excess_attenuation(sweep, baseline, session.convention);
    out.statistics = stats(out.series);
    write_attenuation_csv(out.series, (dir / "attenuation.csv").string());

    const PowerDelayProfile profile = pdp(sweep, session.window, session.kaiser_beta, session.zero_pad_factor);
    write_pdp_csv(profile, (dir / "pdp.csv").string(), /*centimeters=*/true);

    const CirFeatureSet features = extract_features(profile, session.max_components,
                                                    session.min_prominence_db, session.min_separation_bins);
    write_features(features, (dir / "features.txt").string());

    const double tolerance_s = session.delay_tolerance_bins / band.span_hz();
    const PerturbationReport report = match_and_perturb(baseline_features, features, tolerance_s);
    write_perturbation_report(report, (dir / "perturbation.txt").string());

    // a failed inversion (aliased or otherwise unphysical path lengths) is a
    // per-offset result, not a reason to abort the experiment
    std::string record;
    try
    {
        record = format_offset_estimate(estimate_offset(report, session.scene, session.localize));
    }
    catch (const numeric_error &e)
    {
        OffsetEstimate fallback;
        fallback.regime = classify_regime(report, session.localize.rho_threshold_db,
                                          session.localize.los_block_threshold_db);
        fallback.delta_k = report.delta_k;
        record = format_offset_estimate(fallback) + "estimate_error " + e.what() + "\n";
    }
    std::ofstream est((dir / "estimate.txt").string());
    if (!est)
        throw io_error("cannot open '" + (dir / "estimate.txt").string() + "' for writing");
    est << record;

    return out;
}

void run_band(const SessionConfig &session, std::size_t band_index, const fs::path &out_dir,
              bool sweeps_only)
{
    const BandConfig &band = session.bands[band_index];
    const fs::path band_dir = out_dir / band.band_id;
    ensure_dir(band_dir);

    FrequencySweep baseline =
        synthesize_sweep(session.scene, std::nullopt, band, stream_config(session, band_index, 0));
    write_sweep(baseline, (band_dir / "baseline.sweep").string());

    if (sweeps_only)
    {
        for (std::size_t i = 0; i < session.offsets_cm.size(); ++i)
        {
            const std::string label = session.offset_label(session.offsets_cm[i]);
            const fs::path dir = band_dir / label;
            ensure_dir(dir);
            const Target target = session.target_at_offset(session.offsets_cm[i]);
            FrequencySweep sweep =
                synthesize_sweep(session.scene, target, band, stream_config(session, band_index, i + 1));
            sweep.label = label;
            write_sweep(sweep, (dir / "measured.sweep").string());
        }
        return;
    }

    const PowerDelayProfile baseline_pdp =
        pdp(baseline, session.window, session.kaiser_beta, session.zero_pad_factor);
    write_pdp_csv(baseline_pdp, (band_dir / "baseline.pdp.csv").string(), /*centimeters=*/true);
    const CirFeatureSet baseline_features = extract_features(
        baseline_pdp, session.max_components, session.min_prominence_db, session.min_separation_bins);
    write_features(baseline_features, (band_dir / "baseline.features.txt").string());

    // independent offsets run concurrently; each writes only its own directory
    std::vector<std::future<OffsetOutputs>> futures;
    futures.reserve(session.offsets_cm.size());
    for (std::size_t i = 0; i < session.offsets_cm.size(); ++i)
        futures.push_back(std::async(std::launch::async, [&, i] {
            return process_offset(session, band, band_index, i, baseline, baseline_features, band_dir);
        }));

    std::vector<OffsetOutputs> results;
    results.reserve(futures.size());
    for (auto &f : futures)
        results.push_back(f.get());

    // summary table in offset order: y_cm, mean, std
    {
        std::ofstream out((band_dir / "summary.csv").string());
        if (!out)
            throw io_error("cannot open '" + (band_dir / "summary.csv").string() + "' for writing");
        out << "y_cm,mean_db,std_db\n";
        for (std::size_t i = 0; i < results.size(); ++i)
            out << format_double(session.offsets_cm[i]) << ","
                << format_double(results[i].statistics.mean_db) << ","
                << format_double(results[i].statistics.std_db) << "\n";
    }

    // hypothesis models and self-consistency classification
    if (results.size() >= 2)
    {
        std::vector<AttenuationSeries> all_series;
        all_series.reserve(results.size());
        for (const OffsetOutputs &r : results)
            all_series.push_back(r.series);
        const std::vector<SampleDistribution> models =
            fit_models(all_series, session.classifier_bins, session.classifier_epsilon);
        write_models(models, (band_dir / "models.txt").string());

        std::ofstream out((band_dir / "classification.txt").string());
        if (!out)
            throw io_error("cannot open '" + (band_dir / "classification.txt").string() + "' for writing");
        out << "subthz-classification v1\n";
        out << "n_hypotheses " << models.size() << "\n";
        out << "label winner_index winner_label ambiguous out_of_range votes\n";
        for (const OffsetOutputs &r : results)
        {
            const ClassificationResult c = classify(r.series, models);
            out << r.series.hypothesis_label << " " << c.winner_index << " "
                << models[static_cast<std::size_t>(c.winner_index)].hypothesis_label << " "
                << (c.ambiguous_flag ? 1 : 0) << " " << c.out_of_range_count;
            for (int v : c.per_sample_votes)
                out << " " << v;
            out << "\n";
        }
    }
}

} // namespace

void simulate_session(const SessionConfig &session, const std::string &out_dir)
{
    session.validate();
    ensure_dir(out_dir);
    for (std::size_t b = 0; b < session.bands.size(); ++b)
        run_band(session, b, out_dir, /*sweeps_only=*/true);
}

void run_experiment(const SessionConfig &session, const std::string &out_dir)
{
    session.validate();
    ensure_dir(out_dir);
    for (std::size_t b = 0; b < session.bands.size(); ++b)
        run_band(session, b, out_dir, /*sweeps_only=*/false);
}

} // namespace subthz
