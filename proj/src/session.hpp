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
// Experiment session: one scene, a list of target offsets, one or more
// bands, and the per-stage processing options. run_experiment produces the
// full deterministic output bundle (sweeps, attenuation stats, classifier
// report, PDPs, features, localization records).

#ifndef SUBTHZ_SESSION_HPP
#define SUBTHZ_SESSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attenuation.hpp"
#include "cir.hpp"
#include "features.hpp"
#include "geometry.hpp"
#include "localize.hpp"
#include "synth.hpp"

namespace subthz
{

struct SessionConfig
{
    Scene scene;
    Target target_template;               // center.y is replaced per offset
    std::optional<double> target_x_m;     // along-link abscissa; empty = link midpoint
    std::vector<double> offsets_cm{0.0, 3.0, 6.0, 12.0, 25.0, 50.0};
    std::vector<BandConfig> bands{band_g()};
    SynthesisConfig synth;
    DbConvention convention = DbConvention::amplitude_20log;

    int classifier_bins = 0; // 0 = Freedman-Diaconis
    double classifier_epsilon = 1e-6;

    WindowType window = WindowType::kaiser;
    double kaiser_beta = 6.0;
    int zero_pad_factor = 8;
    int max_components = 9;
    double min_prominence_db = 6.0;
    int min_separation_bins = 3;
    double delay_tolerance_bins = 2.0; // in resolution bins (c / span)

    LocalizeOptions localize;

    void validate() const;
    // target instance for one lateral offset (cm)
    Target target_at_offset(double offset_cm) const;
    std::string offset_label(double offset_cm) const;
};

SessionConfig default_session();

// Write the baseline and per-offset sweeps for every band under out_dir
// (<band>/baseline.sweep, <band>/<label>/measured.sweep).
void simulate_session(const SessionConfig &session, const std::string &out_dir);

// Full pipeline: simulate, calibrate, fit + classify, PDP + features +
// perturbations + localization, summary tables. Independent offsets run
// concurrently; outputs are byte-deterministic for a given seed.
void run_experiment(const SessionConfig &session, const std::string &out_dir);

} // namespace subthz

#endif
