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
// Text file formats. Everything is written with 17 significant digits so a
// write/read round trip reproduces doubles exactly, and deterministically so
// reruns produce byte-identical artifacts.

#ifndef SUBTHZ_IO_HPP
#define SUBTHZ_IO_HPP

#include <string>
#include <vector>

#include "attenuation.hpp"
#include "features.hpp"
#include "freqclass.hpp"
#include "localize.hpp"
#include "session.hpp"

namespace subthz
{

// "%.17g"
std::string format_double(double v);

// --- sweep files -----------------------------------------------------------

void write_sweep(const FrequencySweep &sweep, const std::string &path);
FrequencySweep read_sweep(const std::string &path);

// --- attenuation series ----------------------------------------------------

void write_attenuation_csv(const AttenuationSeries &series, const std::string &path);
// band is inferred from the frequency column; label defaults to the filename stem
AttenuationSeries read_attenuation_csv(const std::string &path, const std::string &label = "");

// --- classifier model sets -------------------------------------------------

void write_models(const std::vector<SampleDistribution> &models, const std::string &path);
std::vector<SampleDistribution> read_models(const std::string &path);

// --- CIR feature sets and perturbation reports ------------------------------

void write_features(const CirFeatureSet &features, const std::string &path);
CirFeatureSet read_features(const std::string &path);
void write_perturbation_report(const PerturbationReport &report, const std::string &path);
std::string format_perturbation_report(const PerturbationReport &report);

// --- PDP tables --------------------------------------------------------------

void write_pdp_csv(const PowerDelayProfile &profile, const std::string &path, bool centimeters);

// --- localization records ----------------------------------------------------

std::string format_offset_estimate(const OffsetEstimate &estimate);

// --- scene / session configs -------------------------------------------------

struct SceneFile
{
    Scene scene;
    Target target;
    bool has_target = false;
};

SceneFile read_scene(const std::string &path);
SessionConfig read_session(const std::string &path);

} // namespace subthz

#endif
