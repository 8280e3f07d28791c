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

#include "features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "error.hpp"

namespace subthz
{

void CirFeatureSet::validate() const
{
    if (amplitude.size() != delay_s.size() || amplitude.size() != path_length_m.size())
        throw std::invalid_argument("feature set: amplitude/delay size mismatch");
    for (double a : amplitude)
        if (!(a > 0.0))
            throw std::invalid_argument("feature set: amplitudes must be positive");
    for (std::size_t i = 1; i < delay_s.size(); ++i)
        if (!(delay_s[i] > delay_s[i - 1]))
            throw std::invalid_argument("feature set: delays must be strictly increasing");
}

namespace
{

// peaks this close (dB) to the leakage envelope of a stronger accepted peak
// are treated as that peak's sidelobes
constexpr double sidelobe_margin_db = 3.0;
// peaks closer than this (dB) to the median bin power are treated as noise
constexpr double noise_guard_db = 15.0;
// observability limit: components below this relative to the profile peak
// are outside the measurable dynamic range
constexpr double dynamic_range_db = 40.0;

struct Peak
{
    int bin;
    double power_db;
    double prominence_db;
};

// |transform|^2 of the bare analysis window on the profile's own grid,
// normalized to 0 dB at zero offset; used to reject sidelobe candidates
std::vector<double> window_leakage_envelope_db(const PowerDelayProfile &profile)
{
    const int n = static_cast<int>(profile.power_db.size());
    const int nf = n / std::max(profile.zero_pad_factor, 1);
    FrequencySweep impulse;
    impulse.band = BandConfig{"envelope", 1.0, 2.0, nf};
    impulse.label = "window";
    impulse.values.assign(static_cast<std::size_t>(nf), {1.0, 0.0});
    const PowerDelayProfile response =
        pdp(impulse, profile.window, profile.kaiser_beta, profile.zero_pad_factor);
    return response.power_db;
}

// topographic prominence on the periodic delay axis: walk out from the peak
// both ways (wrapping) until a higher sample appears; the base on each side
// is the minimum seen, prominence = peak - max(left base, right base).
double prominence_at(const std::vector<double> &p, int idx)
{
    const int n = static_cast<int>(p.size());
    const double peak = p[static_cast<std::size_t>(idx)];
    double bases[2] = {peak, peak};
    for (int direction = 0; direction < 2; ++direction)
    {
        const int step = direction == 0 ? -1 : 1;
        double base = peak;
        for (int k = 1; k < n; ++k)
        {
            const int i = ((idx + step * k) % n + n) % n;
            if (p[static_cast<std::size_t>(i)] > peak)
                break;
            base = std::min(base, p[static_cast<std::size_t>(i)]);
        }
        bases[direction] = base;
    }
    return peak - std::max(bases[0], bases[1]);
}

} // namespace

CirFeatureSet extract_features(const PowerDelayProfile &profile, int max_components,
                               double min_prominence_db, int min_separation_bins)
{
    if (max_components < 1)
        throw std::invalid_argument("extract_features: max_components must be >= 1");
    if (min_separation_bins < 0)
        throw std::invalid_argument("extract_features: min_separation_bins must be >= 0");
    const int n = static_cast<int>(profile.power_db.size());
    if (n < 3)
        throw std::invalid_argument("extract_features: profile too short");

    const std::vector<double> &p = profile.power_db;

    // noise guard: candidates must clear the median bin power comfortably
    std::vector<double> sorted_power = p;
    std::nth_element(sorted_power.begin(), sorted_power.begin() + n / 2, sorted_power.end());
    const double noise_floor_db = sorted_power[static_cast<std::size_t>(n) / 2] + noise_guard_db;

    std::vector<Peak> candidates;
    for (int i = 0; i < n; ++i)
    {
        // the delay axis is periodic, so the local-max test wraps as well
        const double left = p[static_cast<std::size_t>((i + n - 1) % n)];
        const double right = p[static_cast<std::size_t>((i + 1) % n)];
        if (!(p[static_cast<std::size_t>(i)] > left && p[static_cast<std::size_t>(i)] >= right))
            continue;
        if (p[static_cast<std::size_t>(i)] < -dynamic_range_db)
            continue;
        if (p[static_cast<std::size_t>(i)] < noise_floor_db && p[static_cast<std::size_t>(i)] < 0.0)
            continue;
        const double prom = prominence_at(p, i);
        if (prom >= min_prominence_db)
            candidates.push_back({i, p[static_cast<std::size_t>(i)], prom});
    }
    if (candidates.empty())
        throw numeric_error("extract_features: no peak satisfies the prominence threshold");

    // strongest first; a candidate sitting on the leakage envelope of an
    // already accepted peak is that peak's sidelobe, not a multipath component
    const std::vector<double> envelope_db = window_leakage_envelope_db(profile);
    std::sort(candidates.begin(), candidates.end(), [](const Peak &a, const Peak &b) {
        return a.power_db != b.power_db ? a.power_db > b.power_db : a.bin < b.bin;
    });
    std::vector<Peak> accepted;
    for (const Peak &c : candidates)
    {
        bool clear = true;
        for (const Peak &a : accepted)
        {
            const int gap = std::min(std::abs(a.bin - c.bin), n - std::abs(a.bin - c.bin));
            if (gap < min_separation_bins)
            {
                clear = false;
                break;
            }
            if (c.power_db <= a.power_db + envelope_db[static_cast<std::size_t>(gap)] + sidelobe_margin_db)
            {
                clear = false;
                break;
            }
        }
        if (clear)
            accepted.push_back(c);
        if (static_cast<int>(accepted.size()) == max_components)
            break;
    }
    if (accepted.empty())
        throw numeric_error("extract_features: no peak satisfies the separation constraint");

    std::sort(accepted.begin(), accepted.end(), [](const Peak &a, const Peak &b) { return a.bin < b.bin; });

    // amplitudes carry the profile's absolute scale so that baseline/target
    // sets stay comparable after each profile's own peak normalization
    const double scale = profile.peak_power_linear > 0.0 ? std::sqrt(profile.peak_power_linear) : 1.0;
    CirFeatureSet out;
    out.delay_resolution_s = profile.delay_resolution_m / speed_of_light_m_s;
    for (const Peak &peak : accepted)
    {
        out.amplitude.push_back(std::pow(10.0, peak.power_db / 20.0) * scale);
        out.path_length_m.push_back(profile.path_length_m[static_cast<std::size_t>(peak.bin)]);
        out.delay_s.push_back(out.path_length_m.back() / speed_of_light_m_s);
    }
    out.validate();
    return out;
}

PerturbationReport match_and_perturb(const CirFeatureSet &baseline, const CirFeatureSet &observed,
                                     double delay_tolerance_s)
{
    baseline.validate();
    observed.validate();
    if (!(delay_tolerance_s >= 0.0))
        throw std::invalid_argument("match_and_perturb: delay tolerance must be >= 0");

    struct Candidate
    {
        double delay_gap;
        int baseline_index;
        int observed_index;
    };
    std::vector<Candidate> candidates;
    for (int b = 0; b < baseline.count(); ++b)
        for (int o = 0; o < observed.count(); ++o)
        {
            const double gap = std::abs(baseline.delay_s[static_cast<std::size_t>(b)] -
                                        observed.delay_s[static_cast<std::size_t>(o)]);
            if (gap <= delay_tolerance_s)
                candidates.push_back({gap, b, o});
        }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        if (a.delay_gap != b.delay_gap)
            return a.delay_gap < b.delay_gap;
        if (a.baseline_index != b.baseline_index)
            return a.baseline_index < b.baseline_index;
        return a.observed_index < b.observed_index;
    });

    PerturbationReport report;
    report.baseline = baseline;
    report.delay_resolution_s =
        observed.delay_resolution_s > 0.0 ? observed.delay_resolution_s : baseline.delay_resolution_s;

    std::vector<bool> baseline_used(static_cast<std::size_t>(baseline.count()), false);
    std::vector<bool> observed_used(static_cast<std::size_t>(observed.count()), false);
    for (const Candidate &c : candidates)
    {
        if (baseline_used[static_cast<std::size_t>(c.baseline_index)] ||
            observed_used[static_cast<std::size_t>(c.observed_index)])
            continue;
        baseline_used[static_cast<std::size_t>(c.baseline_index)] = true;
        observed_used[static_cast<std::size_t>(c.observed_index)] = true;

        MatchedPair pair;
        pair.baseline_index = c.baseline_index;
        pair.observed_index = c.observed_index;
        pair.rho_linear = observed.amplitude[static_cast<std::size_t>(c.observed_index)] /
                          baseline.amplitude[static_cast<std::size_t>(c.baseline_index)];
        report.matched_pairs.push_back(pair);
        report.rho_db.push_back(-20.0 * std::log10(pair.rho_linear));
    }

    // keep matched pairs ordered by baseline component for stable reporting
    std::vector<std::size_t> order(report.matched_pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.matched_pairs[a].baseline_index < report.matched_pairs[b].baseline_index;
    });
    std::vector<MatchedPair> sorted_pairs;
    std::vector<double> sorted_rho;
    for (std::size_t i : order)
    {
        sorted_pairs.push_back(report.matched_pairs[i]);
        sorted_rho.push_back(report.rho_db[i]);
    }
    report.matched_pairs = std::move(sorted_pairs);
    report.rho_db = std::move(sorted_rho);

    report.new_components.delay_resolution_s = observed.delay_resolution_s;
    for (int o = 0; o < observed.count(); ++o)
        if (!observed_used[static_cast<std::size_t>(o)])
        {
            report.new_components.amplitude.push_back(observed.amplitude[static_cast<std::size_t>(o)]);
            report.new_components.delay_s.push_back(observed.delay_s[static_cast<std::size_t>(o)]);
            report.new_components.path_length_m.push_back(observed.path_length_m[static_cast<std::size_t>(o)]);
        }
    report.delta_k = report.new_components.count();

    for (int b = 0; b < baseline.count(); ++b)
        if (!baseline_used[static_cast<std::size_t>(b)])
            report.unmatched_baseline.push_back(b);

    return report;
}

} // namespace subthz
