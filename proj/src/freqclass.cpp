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

#include "freqclass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "error.hpp"

namespace subthz
{

int SampleDistribution::locate_bin(double a_db, bool *clamped) const
{
    if (clamped != nullptr)
        *clamped = false;
    if (a_db < bin_edges.front())
    {
        if (clamped != nullptr)
            *clamped = true;
        return 0;
    }
    if (a_db >= bin_edges.back())
    {
        if (clamped != nullptr)
            *clamped = a_db > bin_edges.back();
        return bin_count() - 1;
    }
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), a_db);
    return static_cast<int>(it - bin_edges.begin()) - 1;
}

void SampleDistribution::validate() const
{
    if (bin_edges.size() < 3)
        throw std::invalid_argument("distribution '" + hypothesis_label + "': need at least 2 bins");
    if (probabilities.size() + 1 != bin_edges.size())
        throw std::invalid_argument("distribution '" + hypothesis_label + "': edge/probability size mismatch");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i] > bin_edges[i - 1]))
            throw std::invalid_argument("distribution '" + hypothesis_label + "': edges not strictly increasing");
    double sum = 0.0;
    for (double p : probabilities)
    {
        if (!(p > 0.0))
            throw std::invalid_argument("distribution '" + hypothesis_label + "': non-positive bin probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution '" + hypothesis_label + "': probabilities do not sum to 1");
}

namespace
{

std::vector<double> equal_width_edges(double lo, double hi, int bins)
{
    if (!(hi > lo))
    {
        // degenerate data range: pad by half a dB each side
        lo -= 0.5;
        hi += 0.5;
    }
    // nudge the top edge so the maximum sample lands inside the last bin
    const double width = (hi - lo) / bins;
    hi += 1e-9 * std::max(1.0, std::abs(hi)) + 1e-12 * width;
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * static_cast<double>(b) / bins;
    return edges;
}

// Freedman-Diaconis bin count over pooled samples, clamped to [8, 64].
int freedman_diaconis_count(std::vector<double> pooled)
{
    std::sort(pooled.begin(), pooled.end());
    const std::size_t n = pooled.size();
    const double q1 = pooled[n / 4];
    const double q3 = pooled[(3 * n) / 4];
    const double iqr = q3 - q1;
    const double range = pooled.back() - pooled.front();
    if (iqr <= 0.0 || range <= 0.0)
        return 8;
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
    const int count = static_cast<int>(std::ceil(range / width));
    return std::clamp(count, 8, 64);
}

SampleDistribution histogram_on_edges(const AttenuationSeries &series, std::vector<double> edges,
                                      double epsilon)
{
    const int bins = static_cast<int>(edges.size()) - 1;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);

    SampleDistribution dist;
    dist.bin_edges = std::move(edges);
    dist.probabilities.assign(static_cast<std::size_t>(bins), 0.0);
    dist.smoothing_epsilon = epsilon;
    dist.hypothesis_label = series.hypothesis_label;

    std::size_t inside = 0;
    for (double a : series.a_db)
    {
        if (!std::isfinite(a))
            throw numeric_error("fit_distribution: non-finite attenuation sample");
        if (a >= dist.bin_edges.front() && a <= dist.bin_edges.back())
            ++inside;
        bool clamped = false;
        const int b = dist.locate_bin(a, &clamped);
        counts[static_cast<std::size_t>(b)] += 1.0;
    }
    if (inside == 0)
        throw numeric_error("fit_distribution: every sample lies outside the bin range");

    // add epsilon probability mass per bin, then renormalize
    const double n = static_cast<double>(series.a_db.size());
    double total = 0.0;
    for (int b = 0; b < bins; ++b)
    {
        dist.probabilities[static_cast<std::size_t>(b)] = counts[static_cast<std::size_t>(b)] / n + epsilon;
        total += dist.probabilities[static_cast<std::size_t>(b)];
    }
    for (double &p : dist.probabilities)
        p /= total;

    dist.validate();
    return dist;
}

} // namespace

SampleDistribution fit_distribution(const AttenuationSeries &series, const BinningSpec &binning,
                                    double epsilon)
{
    if (series.a_db.empty())
        throw std::invalid_argument("fit_distribution: empty series");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("fit_distribution: smoothing epsilon must be positive");

    std::vector<double> edges;
    if (!binning.edges.empty())
    {
        if (binning.edges.size() < 3)
            throw std::invalid_argument("fit_distribution: need at least 2 bins");
        edges = binning.edges;
    }
    else
    {
        int bins = binning.bin_count;
        if (bins == 0)
            bins = freedman_diaconis_count(series.a_db);
        if (bins < 2)
            throw std::invalid_argument("fit_distribution: need at least 2 bins");
        const auto [lo, hi] = std::minmax_element(series.a_db.begin(), series.a_db.end());
        edges = equal_width_edges(*lo, *hi, bins);
    }
    return histogram_on_edges(series, std::move(edges), epsilon);
}

std::vector<SampleDistribution> fit_models(const std::vector<AttenuationSeries> &series, int bin_count,
                                           double epsilon)
{
    if (series.size() < 2)
        throw std::invalid_argument("fit_models: need at least two hypotheses");

    std::vector<double> pooled;
    for (const AttenuationSeries &s : series)
    {
        if (s.a_db.empty())
            throw std::invalid_argument("fit_models: empty series '" + s.hypothesis_label + "'");
        pooled.insert(pooled.end(), s.a_db.begin(), s.a_db.end());
    }

    int bins = bin_count;
    if (bins == 0)
        bins = freedman_diaconis_count(pooled);
    if (bins < 2)
        throw std::invalid_argument("fit_models: need at least 2 bins");

    const auto [lo, hi] = std::minmax_element(pooled.begin(), pooled.end());
    const std::vector<double> edges = equal_width_edges(*lo, *hi, bins);

    std::vector<SampleDistribution> models;
    models.reserve(series.size());
    for (const AttenuationSeries &s : series)
        models.push_back(histogram_on_edges(s, edges, epsilon));
    return models;
}

double llr(const SampleDistribution &d_i, const SampleDistribution &d_j, double a_db, bool *out_of_range)
{
    if (d_i.bin_edges != d_j.bin_edges)
        throw mismatch_error("llr: distributions use different bin edges");

    bool clamped = false;
    const int b = d_i.locate_bin(a_db, &clamped);
    if (out_of_range != nullptr)
        *out_of_range = clamped;
    return std::log(d_i.probabilities[static_cast<std::size_t>(b)] /
                    d_j.probabilities[static_cast<std::size_t>(b)]);
}

ClassificationResult classify(const AttenuationSeries &observed,
                              const std::vector<SampleDistribution> &models)
{
    const int m = static_cast<int>(models.size());
    if (m < 2)
        throw std::invalid_argument("classify: need at least two hypothesis models");
    for (const SampleDistribution &d : models)
    {
        d.validate();
        if (d.bin_edges != models.front().bin_edges)
            throw mismatch_error("classify: models use different bin edges");
    }
    if (observed.a_db.empty())
        throw std::invalid_argument("classify: empty observation");

    ClassificationResult result;
    result.per_sample_votes.assign(static_cast<std::size_t>(m), 0);
    result.vote_matrix.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));

    for (double a : observed.a_db)
    {
        bool clamped = false;
        const int b = models.front().locate_bin(a, &clamped);
        if (clamped)
            ++result.out_of_range_count;

        int winner = -1;
        for (int i = 0; i < m; ++i)
        {
            bool wins_all = true;
            for (int j = 0; j < m; ++j)
            {
                if (i == j)
                    continue;
                const double pi = models[static_cast<std::size_t>(i)].probabilities[static_cast<std::size_t>(b)];
                const double pj = models[static_cast<std::size_t>(j)].probabilities[static_cast<std::size_t>(b)];
                if (pi > pj)
                    ++result.vote_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                else
                    wins_all = false;
            }
            if (wins_all && winner < 0)
                winner = i;
        }
        if (winner >= 0)
            ++result.per_sample_votes[static_cast<std::size_t>(winner)];
    }

    int best = 0;
    bool tie = false;
    for (int i = 1; i < m; ++i)
    {
        if (result.per_sample_votes[static_cast<std::size_t>(i)] >
            result.per_sample_votes[static_cast<std::size_t>(best)])
        {
            best = i;
            tie = false;
        }
        else if (result.per_sample_votes[static_cast<std::size_t>(i)] ==
                 result.per_sample_votes[static_cast<std::size_t>(best)])
        {
            tie = true;
        }
    }
    result.winner_index = best;
    result.ambiguous_flag = tie;
    return result;
}

} // namespace subthz
