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
// Calibration against the target-free sweep and per-frequency excess
// attenuation statistics.

#ifndef SUBTHZ_ATTENUATION_HPP
#define SUBTHZ_ATTENUATION_HPP

#include <complex>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace subthz
{

// One band's complex transmission coefficients T(f_k) on the band's grid.
struct FrequencySweep
{
    BandConfig band;
    std::vector<std::complex<double>> values;
    std::string label;

    void validate() const; // size match, all finite, none exactly zero
};

// Per-frequency excess attenuation in dB relative to a calibration sweep.
struct AttenuationSeries
{
    BandConfig band;
    std::vector<double> a_db;
    std::string hypothesis_label;
};

struct AttenuationStats
{
    double mean_db = 0.0;
    double std_db = 0.0;
};

// The measured transmission coefficients are voltage-like ratios; the dB
// conversion convention is configurable because full-blockage levels around
// 14-17 dB only come out of the amplitude reading.
enum class DbConvention
{
    amplitude_20log = 0,
    power_10log = 1,
};

// A_k = -factor * log10(|T(f_k)| / |T0(f_k)|), factor 20 or 10 by convention.
// Throws mismatch_error when the grids differ and numeric_error on degenerate
// (zero/non-finite) inputs.
AttenuationSeries excess_attenuation(const FrequencySweep &measured, const FrequencySweep &baseline,
                                     DbConvention convention = DbConvention::amplitude_20log);

// Population mean and standard deviation (1/N normalization).
AttenuationStats stats(const AttenuationSeries &series);

} // namespace subthz

#endif
