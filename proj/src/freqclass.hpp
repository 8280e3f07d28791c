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
// Hypothesis testing on excess-attenuation samples: histogram sample
// distributions, pairwise log-likelihood ratios and one-vs-all majority
// voting across the frequency samples.

#ifndef SUBTHZ_FREQCLASS_HPP
#define SUBTHZ_FREQCLASS_HPP

#include <string>
#include <vector>

#include "attenuation.hpp"

namespace subthz
{

// Discretized Pr(A | F_i) for one target-offset hypothesis.
struct SampleDistribution
{
    std::vector<double> bin_edges;     // size B+1, strictly increasing
    std::vector<double> probabilities; // size B, all > 0, sums to 1
    double smoothing_epsilon = 1e-6;
    std::string hypothesis_label;

    int bin_count() const { return static_cast<int>(probabilities.size()); }
    // bin containing a, clamped to the boundary bins; sets *clamped on overflow
    int locate_bin(double a_db, bool *clamped = nullptr) const;
    void validate() const;
};

// Binning request: explicit edges win; else equal-width bins over the data
// range; else (bin_count == 0) Freedman-Diaconis count clamped to [8, 64].
struct BinningSpec
{
    std::vector<double> edges;
    int bin_count = 0;
};

// Histogram of the series samples on the requested bins, with epsilon
// probability mass added per bin before normalization. Throws numeric_error
// when every sample falls outside explicit edges.
SampleDistribution fit_distribution(const AttenuationSeries &series, const BinningSpec &binning,
                                    double epsilon = 1e-6);

// Distributions for several hypotheses on one shared set of edges computed
// from the pooled samples (Freedman-Diaconis when bin_count == 0).
std::vector<SampleDistribution> fit_models(const std::vector<AttenuationSeries> &series, int bin_count = 0,
                                           double epsilon = 1e-6);

// Gamma_{i,j}(a) = log[ Pr(a | F_i) / Pr(a | F_j) ] in nats, using the
// smoothed bin probabilities. Out-of-range values use the boundary bin.
double llr(const SampleDistribution &d_i, const SampleDistribution &d_j, double a_db,
           bool *out_of_range = nullptr);

struct ClassificationResult
{
    int winner_index = -1;
    bool ambiguous_flag = false;
    std::vector<int> per_sample_votes;     // outright one-vs-all wins per hypothesis
    std::vector<std::vector<int>> vote_matrix; // [i][j] = samples where i beats j
    int out_of_range_count = 0;
};

// One-vs-all with majority voting: hypothesis i earns a vote at sample k only
// if Gamma_{i,j}(a_k) > 0 for every j != i; winner is the vote argmax, ties
// resolved to the lowest index with ambiguous_flag set.
ClassificationResult classify(const AttenuationSeries &observed,
                              const std::vector<SampleDistribution> &models);

} // namespace subthz

#endif
