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
// Target-offset inference from CIR perturbations: regime classification and
// geometric inversion of new-component path lengths (single-scatter ellipse).

#ifndef SUBTHZ_LOCALIZE_HPP
#define SUBTHZ_LOCALIZE_HPP

#include <utility>
#include <vector>

#include "features.hpp"
#include "geometry.hpp"

namespace subthz
{

enum class Regime
{
    los_blocking = 0,
    near_field_attenuation = 1,
    scatter_path = 2,
};

const char *regime_name(Regime r);

struct LocalizeOptions
{
    double rho_threshold_db = 3.0;       // mean matched attenuation -> near field
    double los_block_threshold_db = 10.0; // LoS component attenuation -> blocking
    double assumed_x_m = -1.0;           // along-link scatter abscissa; < 0 = link midpoint
    // optional calibrated map mean_rho_db -> y_m (extension hook); entries
    // sorted by rho ascending, linear interpolation, clamped at the ends
    std::vector<std::pair<double, double>> attenuation_map;
};

struct OffsetEstimate
{
    Regime regime = Regime::near_field_attenuation;
    bool has_estimate = false;
    double y_m = 0.0;
    double y_sigma_m = 0.0;
    bool no_target_flag = false; // identity-like report: nothing to localize
    // evidence
    int delta_k = 0;
    double mean_rho_db = 0.0;
    double mean_new_path_length_m = 0.0;
};

// delta_K > 0 -> scatter_path; else LoS attenuation >= los threshold ->
// los_blocking; else near_field_attenuation (flagged as no-target by
// estimate_offset when the attenuation evidence is ~0).
Regime classify_regime(const PerturbationReport &report, double rho_threshold_db = 3.0,
                       double los_block_threshold_db = 10.0);

// Solve l = sqrt(x^2+y^2) + sqrt((d-x)^2+y^2) for y >= 0 given the assumed
// along-link abscissa x (TX at 0). Throws numeric_error for l < LoS length.
double invert_scatter_path(double mean_new_path_length_m, const Scene &scene, double assumed_x_m);

OffsetEstimate estimate_offset(const PerturbationReport &report, const Scene &scene,
                               const LocalizeOptions &options = {});

} // namespace subthz

#endif
