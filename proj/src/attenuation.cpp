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

#include "attenuation.hpp"

#include <cmath>
#include <stdexcept>

#include "error.hpp"

namespace subthz
{

void FrequencySweep::validate() const
{
    band.validate();
    if (static_cast<int>(values.size()) != band.n_points)
        throw std::invalid_argument("sweep '" + label + "': value count " + std::to_string(values.size()) +
                                    " does not match band n_points " + std::to_string(band.n_points));
    for (const auto &v : values)
    {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numeric_error("sweep '" + label + "': non-finite transmission coefficient");
        if (v.real() == 0.0 && v.imag() == 0.0)
            throw numeric_error("sweep '" + label + "': exactly-zero transmission coefficient (degenerate measurement)");
    }
}

AttenuationSeries excess_attenuation(const FrequencySweep &measured, const FrequencySweep &baseline,
                                     DbConvention convention)
{
    measured.validate();
    baseline.validate();
    if (!measured.band.same_grid(baseline.band))
        throw mismatch_error("excess_attenuation: measured band (" + measured.band.band_id +
                             ") and baseline band (" + baseline.band.band_id + ") use different grids");

    const double factor = convention == DbConvention::amplitude_20log ? 20.0 : 10.0;
    AttenuationSeries out;
    out.band = measured.band;
    out.hypothesis_label = measured.label;
    out.a_db.resize(measured.values.size());
    for (std::size_t k = 0; k < measured.values.size(); ++k)
    {
        const double num = std::abs(measured.values[k]);
        const double den = std::abs(baseline.values[k]);
        const double a = -factor * std::log10(num / den);
        if (!std::isfinite(a))
            throw numeric_error("excess_attenuation: non-finite attenuation at sample " + std::to_string(k));
        out.a_db[k] = a;
    }
    return out;
}

AttenuationStats stats(const AttenuationSeries &series)
{
    if (series.a_db.empty())
        throw std::invalid_argument("stats: empty attenuation series");

    const double n = static_cast<double>(series.a_db.size());
    double mean = 0.0;
    for (double a : series.a_db)
        mean += a;
    mean /= n;

    double var = 0.0;
    for (double a : series.a_db)
        var += (a - mean) * (a - mean);
    var /= n;

    return {mean, std::sqrt(var)};
}

} // namespace subthz
