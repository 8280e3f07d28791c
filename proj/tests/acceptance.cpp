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
// End-to-end acceptance runner. Each numbered criterion prints one
// pass/fail line; the process exits nonzero if any criterion fails.
// Criterion 9 spawns the CLI named by the SUBTHZ_CLI environment variable
// (set automatically when run through ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "attenuation.hpp"
#include "cir.hpp"
#include "features.hpp"
#include "freqclass.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "localize.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "session.hpp"
#include "synth.hpp"

using namespace subthz;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;
};

double now_seconds()
{
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(const char *format, ...)
{
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

// synthetic pipeline helpers -------------------------------------------------

FrequencySweep baseline_sweep(std::uint64_t seed)
{
    SynthesisConfig cfg;
    cfg.seed = mix_seed(seed, 0);
    return synthesize_sweep(Scene{}, std::nullopt, band_g(), cfg);
}

FrequencySweep offset_sweep(double offset_cm, std::uint64_t seed)
{
    SynthesisConfig cfg;
    cfg.seed = mix_seed(seed, 1);
    Target target;
    target.center = {0.46, offset_cm / 100.0};
    return synthesize_sweep(Scene{}, target, band_g(), cfg);
}

// ---- criterion 1: calibration identity --------------------------------------

Outcome criterion_calibration()
{
    const double t0 = now_seconds();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        FrequencySweep sweep;
        sweep.band = band_g();
        sweep.label = "cal";
        sweep.values.resize(1001);
        for (auto &v : sweep.values)
            v = {value(rng), value(rng) + 2.5};
        const AttenuationSeries series = excess_attenuation(sweep, sweep);
        for (double a : series.a_db)
            worst = std::max(worst, std::abs(a));
    }
    const double elapsed = now_seconds() - t0;
    Outcome out;
    out.pass = worst <= 1e-12 && elapsed < 1.0;
    out.detail = fmt("max |A| = %.3g dB over 100 sweeps, %.2f s", worst, elapsed);
    return out;
}

// ---- criterion 2: knife-edge oracle ------------------------------------------

Outcome criterion_knife_edge()
{
    Outcome out;
    const double grazing = knife_edge_loss(0.0);
    double worst = std::abs(grazing - 6.02);
    out.pass = worst <= 0.01;

    double worst_vs_oracle = 0.0;
    for (double nu : {-3.0, -1.0, 0.0, 1.0, 2.4, 5.0})
    {
        const double gap = std::abs(knife_edge_loss(nu) - test::oracle_knife_edge_loss_db(nu));
        worst_vs_oracle = std::max(worst_vs_oracle, gap);
        if (gap > 0.01)
            out.pass = false;
    }
    out.detail = fmt("loss(0) = %.4f dB, max |impl - quadrature| = %.2e dB", grazing, worst_vs_oracle);
    return out;
}

// ---- criterion 3: blockage sanity range ----------------------------------------

Outcome criterion_blockage_range()
{
    Outcome out;
    double min_blocked = 1e9;
    double max_blocked = -1e9;
    double worst_far = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const FrequencySweep baseline = baseline_sweep(seed);
        const double mean_blocked = stats(excess_attenuation(offset_sweep(0.0, seed), baseline)).mean_db;
        const double mean_far = stats(excess_attenuation(offset_sweep(50.0, seed), baseline)).mean_db;
        min_blocked = std::min(min_blocked, mean_blocked);
        max_blocked = std::max(max_blocked, mean_blocked);
        worst_far = std::max(worst_far, std::abs(mean_far));
        if (mean_blocked < 10.0 || mean_blocked > 25.0 || std::abs(mean_far) >= 1.0)
            out.pass = false;
    }
    out.detail = fmt("y=0 means in [%.2f, %.2f] dB, max |y=50cm mean| = %.3f dB, 20 seeds", min_blocked,
                     max_blocked, worst_far);
    return out;
}

// ---- criterion 4: spread ordering ------------------------------------------------

Outcome criterion_std_ordering()
{
    int ordered = 0;
    for (std::uint64_t seed = 21; seed <= 40; ++seed)
    {
        const FrequencySweep baseline = baseline_sweep(seed);
        const double std_blocked = stats(excess_attenuation(offset_sweep(0.0, seed), baseline)).std_db;
        const double std_far = stats(excess_attenuation(offset_sweep(50.0, seed), baseline)).std_db;
        if (std_blocked > std_far)
            ++ordered;
    }
    Outcome out;
    out.pass = ordered >= 19;
    out.detail = fmt("spread(y=0) > spread(y=50cm) in %d of 20 runs", ordered);
    return out;
}

// ---- criterion 5: classifier self-consistency ---------------------------------------

Outcome criterion_classifier()
{
    const double offsets[6] = {0.0, 3.0, 6.0, 12.0, 25.0, 50.0};
    std::vector<AttenuationSeries> training;
    for (int i = 0; i < 6; ++i)
    {
        const std::uint64_t seed = 900 + static_cast<std::uint64_t>(i);
        AttenuationSeries series = excess_attenuation(offset_sweep(offsets[i], seed), baseline_sweep(seed));
        series.hypothesis_label = fmt("y_%gcm", offsets[i]);
        training.push_back(std::move(series));
    }
    const std::vector<SampleDistribution> models = fit_models(training, 0, 1e-6);

    int correct = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t)
    {
        const std::uint64_t seed = 20000 + static_cast<std::uint64_t>(t);
        const AttenuationSeries observed =
            excess_attenuation(offset_sweep(0.0, seed), baseline_sweep(seed));
        if (classify(observed, models).winner_index == 0)
            ++correct;
    }
    Outcome out;
    out.pass = correct >= static_cast<int>(0.95 * trials);
    out.detail = fmt("y=0 recognized in %d of %d held-out trials", correct, trials);
    return out;
}

// ---- criterion 6: PDP correctness -----------------------------------------------------

Outcome criterion_pdp()
{
    Outcome out;
    const BandConfig band = band_g();
    const double resolution = speed_of_light_m_s / band.span_hz();
    const double alias = speed_of_light_m_s / band.spacing_hz();

    // 6a: 50 random single taps localized within one resolution bin
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> delay_frac(0.02, 0.95);
    double worst_peak_err = 0.0;
    for (int trial = 0; trial < 50; ++trial)
    {
        const double tau = delay_frac(rng) * alias / speed_of_light_m_s;
        const PowerDelayProfile profile = pdp(test::tap_sweep(band, {1.0}, {tau}));
        const std::size_t peak =
            static_cast<std::size_t>(std::max_element(profile.power_db.begin(), profile.power_db.end()) -
                                     profile.power_db.begin());
        const double err = std::abs(profile.path_length_m[peak] - tau * speed_of_light_m_s);
        worst_peak_err = std::max(worst_peak_err, err);
        if (err > resolution)
            out.pass = false;
    }

    // 6b: Parseval under the rectangular window without padding
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    FrequencySweep sweep;
    sweep.band = band;
    sweep.label = "parseval";
    sweep.values.resize(1001);
    for (auto &v : sweep.values)
        v = {value(rng), value(rng) + 1.5};
    const PowerDelayProfile profile = pdp(sweep, WindowType::rectangular, 0.0, 1);
    double pdp_sum = 0.0;
    for (double db : profile.power_db)
        pdp_sum += std::pow(10.0, db / 10.0) * profile.peak_power_linear;
    double ref_sum = 0.0;
    for (const auto &v : sweep.values)
        ref_sum += std::norm(v);
    ref_sum /= static_cast<double>(sweep.values.size());
    const double parseval_err = std::abs(pdp_sum - ref_sum) / ref_sum;
    if (parseval_err > 1e-9)
        out.pass = false;

    // 6c: reported resolution and alias-free range for the G band
    const double reported_res = delay_resolution_m(band);
    if (std::abs(reported_res - 3.33e-3) > 0.01e-3)
        out.pass = false;
    if (std::abs(profile.alias_free_range_m - 3.33) > 0.01)
        out.pass = false;

    out.detail = fmt("peak err <= %.3g m (bin %.3g m), Parseval %.2e, res %.4g mm, range %.4g m",
                     worst_peak_err, resolution, parseval_err, reported_res * 1e3,
                     profile.alias_free_range_m);
    return out;
}

// ---- criterion 7: feature oracle --------------------------------------------------------

Outcome criterion_features()
{
    Outcome out;
    const BandConfig band = band_g();
    const double resolution_s = 1.0 / band.span_hz();
    const WindowType window = WindowType::kaiser;
    const double beta = 7.0; // narrow enough to split 5-bin spacings, -50 dB leakage
    const int pad = 8;
    const int min_separation = 16; // padded bins = 2 resolution bins
    const double tolerance = 2.0 * resolution_s;

    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> gap_bins(5.0, 15.0);
    std::uniform_real_distribution<double> level_db(-25.0, 0.0);
    std::uniform_real_distribution<double> rho_db_dist(6.0, 21.0);

    int failures = 0;
    double worst_amp_err = 0.0;
    double worst_rho_err = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const int k = 1 + static_cast<int>(rng() % 9);
        std::vector<double> delays;
        std::vector<double> levels_db;
        double t = (30.0 + gap_bins(rng)) * resolution_s;
        for (int i = 0; i < k; ++i)
        {
            delays.push_back(t);
            levels_db.push_back(i == 0 ? 0.0 : level_db(rng));
            t += gap_bins(rng) * resolution_s;
        }
        std::vector<double> amps;
        for (double db : levels_db)
            amps.push_back(std::pow(10.0, db / 20.0));

        const auto sweep = test::tap_sweep(band, amps, delays);
        CirFeatureSet found;
        try
        {
            found = extract_features(pdp(sweep, window, beta, pad), k, 6.0, min_separation);
        }
        catch (const std::exception &)
        {
            ++failures;
            continue;
        }
        if (found.count() != k)
        {
            ++failures;
            continue;
        }
        const double top_db = *std::max_element(levels_db.begin(), levels_db.end());
        const double found_top = *std::max_element(found.amplitude.begin(), found.amplitude.end());
        bool ok = true;
        for (int i = 0; i < k; ++i)
        {
            const double delay_err = std::abs(found.delay_s[static_cast<std::size_t>(i)] -
                                              delays[static_cast<std::size_t>(i)]);
            const double amp_err =
                std::abs(20.0 * std::log10(found.amplitude[static_cast<std::size_t>(i)] / found_top) -
                         (levels_db[static_cast<std::size_t>(i)] - top_db));
            worst_amp_err = std::max(worst_amp_err, amp_err);
            if (delay_err > resolution_s || amp_err > 0.5)
                ok = false;
        }

        // perturbed copy: attenuate a subset, append up to 3 new components
        std::vector<double> p_delays = delays;
        std::vector<double> p_levels = levels_db;
        std::vector<double> injected_rho(static_cast<std::size_t>(k), 0.0);
        for (int i = 0; i < k; ++i)
        {
            if (rng() % 2 != 0)
                continue;
            const double rho = rho_db_dist(rng);
            if (p_levels[static_cast<std::size_t>(i)] - rho < -25.0)
                continue; // keep every component above the leakage floor
            p_levels[static_cast<std::size_t>(i)] -= rho;
            injected_rho[static_cast<std::size_t>(i)] = rho;
        }
        const int delta_k = static_cast<int>(rng() % 4);
        for (int i = 0; i < delta_k; ++i)
        {
            p_delays.push_back(t);
            p_levels.push_back(-6.0 - static_cast<double>(rng() % 15));
            t += gap_bins(rng) * resolution_s;
        }
        std::vector<double> p_amps;
        for (double db : p_levels)
            p_amps.push_back(std::pow(10.0, db / 20.0));

        CirFeatureSet perturbed;
        try
        {
            perturbed = extract_features(pdp(test::tap_sweep(band, p_amps, p_delays), window, beta, pad),
                                         k + delta_k, 6.0, min_separation);
        }
        catch (const std::exception &)
        {
            ++failures;
            continue;
        }
        if (perturbed.count() != k + delta_k)
        {
            ++failures;
            continue;
        }

        const PerturbationReport report = match_and_perturb(found, perturbed, tolerance);
        if (report.delta_k != delta_k || static_cast<int>(report.matched_pairs.size()) != k)
            ok = false;
        else
            for (std::size_t m = 0; m < report.matched_pairs.size(); ++m)
            {
                const int b = report.matched_pairs[m].baseline_index;
                const double err = std::abs(report.rho_db[m] - injected_rho[static_cast<std::size_t>(b)]);
                worst_rho_err = std::max(worst_rho_err, err);
                if (err > 0.5)
                    ok = false;
            }
        if (!ok)
            ++failures;
    }

    out.pass = failures == 0;
    out.detail = fmt("%d of 100 tap sets failed; worst amp err %.3f dB, worst rho err %.3f dB", failures,
                     worst_amp_err, worst_rho_err);
    return out;
}

// ---- criterion 8: localization round trip ------------------------------------------------

Outcome criterion_localization()
{
    Outcome out;
    const double t0 = now_seconds();
    const Scene scene;
    const double d = los_path_length(scene);

    // 8a: closed-form round trip across the experiment range
    double worst_rt = 0.0;
    for (int i = 1; i <= 50; ++i)
    {
        const double y = 0.01 * static_cast<double>(i);
        const double l = std::hypot(d / 2.0, y) * 2.0;
        worst_rt = std::max(worst_rt, std::abs(invert_scatter_path(l, scene, -1.0) - y));
    }
    if (worst_rt > 1e-9)
        out.pass = false;

    // 8b: end-to-end synthetic experiments at y = 12 cm
    const BandConfig band = band_g();
    std::vector<double> errors;
    for (std::uint64_t seed = 3000; seed < 3100; ++seed)
    {
        SynthesisConfig cfg;
        cfg.seed = mix_seed(seed, 0);
        const FrequencySweep base = synthesize_sweep(scene, std::nullopt, band, cfg);
        cfg.seed = mix_seed(seed, 1);
        Target target;
        target.center = {0.46, 0.12};
        const FrequencySweep obs = synthesize_sweep(scene, target, band, cfg);

        const CirFeatureSet base_features = extract_features(pdp(base), 9, 6.0, 3);
        const CirFeatureSet obs_features = extract_features(pdp(obs), 9, 6.0, 3);
        const PerturbationReport report =
            match_and_perturb(base_features, obs_features, 2.0 / band.span_hz());
        const OffsetEstimate estimate = estimate_offset(report, scene);
        errors.push_back(estimate.has_estimate ? std::abs(estimate.y_m - 0.12) : 1.0);
    }
    std::sort(errors.begin(), errors.end());
    const double median = 0.5 * (errors[49] + errors[50]);
    const double elapsed = now_seconds() - t0;
    if (median > 0.03 || elapsed >= 30.0)
        out.pass = false;

    out.detail = fmt("round trip err <= %.2e m; median |y-0.12| = %.4f m over 100 seeds; %.1f s", worst_rt,
                     median, elapsed);
    return out;
}

// ---- criterion 9: CLI determinism ------------------------------------------------------------

std::string tree_digest(const fs::path &root)
{
    std::vector<fs::path> files;
    for (const auto &entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            files.push_back(fs::relative(entry.path(), root));
    std::sort(files.begin(), files.end());

    std::ostringstream digest;
    for (const fs::path &rel : files)
    {
        std::ifstream in(root / rel, std::ios::binary);
        std::ostringstream content;
        content << in.rdbuf();
        digest << rel.string() << "\x1f" << content.str().size() << "\x1f" << content.str() << "\x1e";
    }
    return digest.str();
}

Outcome criterion_determinism()
{
    Outcome out;
    const char *cli = std::getenv("SUBTHZ_CLI");
    if (cli == nullptr || std::string(cli).empty())
    {
        out.pass = false;
        out.detail = "SUBTHZ_CLI is not set (run through ctest)";
        return out;
    }

    const fs::path root = fs::temp_directory_path() / "subthz-acceptance-run";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path out_a = root / "a";
    const fs::path out_b = root / "b";

    const std::string base = std::string("\"") + cli + "\" run --seed 7 --out ";
    const int rc_a = std::system((base + "\"" + out_a.string() + "\" > /dev/null 2>&1").c_str());
    const int rc_b = std::system((base + "\"" + out_b.string() + "\" > /dev/null 2>&1").c_str());
    if (rc_a != 0 || rc_b != 0)
    {
        out.pass = false;
        out.detail = fmt("CLI runs exited with %d / %d", rc_a, rc_b);
        return out;
    }

    const std::string digest_a = tree_digest(out_a);
    const std::string digest_b = tree_digest(out_b);
    std::size_t file_count = 0;
    for (const auto &entry : fs::recursive_directory_iterator(out_a))
        if (entry.is_regular_file())
            ++file_count;

    // default session: six offsets + baseline, so the summary carries 6 rows
    std::size_t summary_rows = 0;
    {
        std::ifstream summary(out_a / "G" / "summary.csv");
        std::string line;
        while (std::getline(summary, line))
            ++summary_rows;
    }

    out.pass = !digest_a.empty() && digest_a == digest_b && file_count >= 30 && summary_rows == 7;
    out.detail = fmt("two `run --seed 7` trees, %zu files, %zu summary rows, byte-identical: %s",
                     file_count, summary_rows > 0 ? summary_rows - 1 : 0,
                     digest_a == digest_b ? "yes" : "no");
    fs::remove_all(root);
    return out;
}

} // namespace

int main()
{
    struct Entry
    {
        int index;
        const char *name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> criteria = {
        {1, "calibration identity", criterion_calibration},
        {2, "knife-edge oracle", criterion_knife_edge},
        {3, "blockage sanity range", criterion_blockage_range},
        {4, "attenuation spread ordering", criterion_std_ordering},
        {5, "classifier self-consistency", criterion_classifier},
        {6, "PDP correctness", criterion_pdp},
        {7, "feature oracle", criterion_features},
        {8, "localization round trip", criterion_localization},
        {9, "run determinism", criterion_determinism},
    };

    int failures = 0;
    for (const Entry &entry : criteria)
    {
        Outcome outcome;
        try
        {
            outcome = entry.run();
        }
        catch (const std::exception &e)
        {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.pass)
            ++failures;
        std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", entry.index, entry.name,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria: %zu passed, %d failed\n", criteria.size(), criteria.size() - failures,
                failures);
    return failures == 0 ? 0 : 1;
}
