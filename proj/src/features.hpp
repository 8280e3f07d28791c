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
// Discrete CIR features: (amplitude, delay) multipath components extracted
// from a power delay profile, and matching of a target observation against
// the target-free baseline into perturbation factors and new components.

#ifndef SUBTHZ_FEATURES_HPP
#define SUBTHZ_FEATURES_HPP

#include <string>
#include <vector>

#include "cir.hpp"

namespace subthz
{

// K multipath components sorted by delay. Amplitudes are linear magnitudes
// relative to the profile peak; dB only appears at reporting boundaries.
struct CirFeatureSet
{
    std::vector<double> amplitude;     // linear, > 0
    std::vector<double> delay_s;       // strictly increasing
    std::vector<double> path_length_m; // delay * c
    double delay_resolution_s = 0.0;   // carried from the source profile

    int count() const { return static_cast<int>(amplitude.size()); }
    void validate() const;
};

// Local PDP maxima by topographic prominence, strongest `max_components`
// kept, sorted by delay. Throws numeric_error when nothing satisfies the
// thresholds.
CirFeatureSet extract_features(const PowerDelayProfile &profile, int max_components = 9,
                               double min_prominence_db = 6.0, int min_separation_bins = 3);

struct MatchedPair
{
    int baseline_index = -1;
    int observed_index = -1;
    double rho_linear = 1.0; // observed amplitude / baseline amplitude
};

// Matched differences between a baseline and an observed feature set:
// amplitude perturbation factors for matched components, additional
// components introduced by the target, and baseline components that vanished.
struct PerturbationReport
{
    std::vector<MatchedPair> matched_pairs;
    std::vector<double> rho_db; // -20*log10(rho), positive = attenuation
    CirFeatureSet new_components;
    int delta_k = 0;
    std::vector<int> unmatched_baseline;
    CirFeatureSet baseline; // retained for downstream regime decisions
    double delay_resolution_s = 0.0;
};

// Greedy nearest-delay matching within `delay_tolerance_s`; closest pairs
// first, each component used at most once.
PerturbationReport match_and_perturb(const CirFeatureSet &baseline, const CirFeatureSet &observed,
                                     double delay_tolerance_s);

} // namespace subthz

#endif
