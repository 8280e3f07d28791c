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
// Power delay profile estimation from the complex frequency response:
// window, zero-pad, inverse transform, report power versus path length
// z = c*tau.

#ifndef SUBTHZ_CIR_HPP
#define SUBTHZ_CIR_HPP

#include <vector>

#include "attenuation.hpp"

namespace subthz
{

inline constexpr double speed_of_light_m_s = 299792458.0;

enum class WindowType
{
    rectangular = 0,
    hann = 1,
    kaiser = 2,
};

const char *window_name(WindowType w);
WindowType window_from_name(const std::string &name); // throws std::invalid_argument

// Power versus path length, normalized so the global peak sits at 0 dB.
// `peak_power_linear` keeps the pre-normalization peak so energy bookkeeping
// (Parseval) stays possible after normalization.
struct PowerDelayProfile
{
    std::vector<double> path_length_m; // strictly increasing, starts at 0
    std::vector<double> power_db;      // relative to peak, max = 0
    double peak_power_linear = 0.0;
    double delay_resolution_m = 0.0;  // c / band span
    double alias_free_range_m = 0.0;  // c / frequency spacing
    double bin_spacing_m = 0.0;       // c / (pad * N_f * spacing)
    WindowType window = WindowType::kaiser;
    double kaiser_beta = 6.0;
    int zero_pad_factor = 8;
    bool aliasing_warning = false; // > 1% of energy beyond half the alias range
};

// Window taps (symmetric definitions), length n, peak value 1 for kaiser.
std::vector<double> make_window(WindowType type, double kaiser_beta, int n);

// Windowed, zero-padded inverse discrete transform of the sweep.
// Delay-bin spacing is 1 / (zero_pad_factor * N_f * spacing).
PowerDelayProfile pdp(const FrequencySweep &sweep, WindowType window = WindowType::kaiser,
                      double kaiser_beta = 6.0, int zero_pad_factor = 8);

// c / (f_stop - f_start)
double delay_resolution_m(const BandConfig &cfg);

} // namespace subthz

#endif
