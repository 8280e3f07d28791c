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

#include "localize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cir.hpp"
#include "error.hpp"

namespace subthz
{

const char *regime_name(Regime r)
{
    switch (r)
    {
    case Regime::los_blocking:
        return "los_blocking";
    case Regime::near_field_attenuation:
        return "near_field_attenuation";
    case Regime::scatter_path:
        return "scatter_path";
    }
    return "unknown";
}

namespace
{

double mean_matched_attenuation_db(const PerturbationReport &report)
{
    if (report.rho_db.empty())
        return 0.0;
    double sum = 0.0;
    for (double r : report.rho_db)
        sum += r;
    return sum / static_cast<double>(report.rho_db.size());
}

// attenuation of the earliest baseline component (the LoS by construction);
// a vanished LoS counts as infinite attenuation
double los_attenuation_db(const PerturbationReport &report)
{
    if (report.baseline.count() == 0)
        return 0.0;
    for (const MatchedPair &pair : report.matched_pairs)
        if (pair.baseline_index == 0)
            return -20.0 * std::log10(pair.rho_linear);
    for (int b : report.unmatched_baseline)
        if (b == 0)
            return std::numeric_limits<double>::infinity();
    return 0.0;
}

double mean_new_path_length_m(const PerturbationReport &report)
{
    if (report.new_components.count() == 0)
        return 0.0;
    double sum = 0.0;
    for (double z : report.new_components.path_length_m)
        sum += z;
    return sum / static_cast<double>(report.new_components.count());
}

} // namespace

Regime classify_regime(const PerturbationReport &report, double rho_threshold_db,
                       double los_block_threshold_db)
{
    (void)rho_threshold_db;
    if (report.delta_k > 0)
        return Regime::scatter_path;
    if (los_attenuation_db(report) >= los_block_threshold_db)
        return Regime::los_blocking;
    return Regime::near_field_attenuation;
}

double invert_scatter_path(double mean_new_path_length_m, const Scene &scene, double assumed_x_m)
{
    const double d = los_path_length(scene);
    double x = assumed_x_m;
    if (x < 0.0)
        x = d / 2.0;
    if (!(x > 0.0 && x < d))
        throw std::invalid_argument("invert_scatter_path: assumed x must lie strictly between TX and RX");

    const double l = mean_new_path_length_m;
    if (!(l >= d))
        throw numeric_error("invert_scatter_path: path length below the LoS length is unphysical");

    // ellipse with foci at TX/RX: semi-major a = l/2, focal distance d/2
    const double a = l / 2.0;
    const double cf = d / 2.0;
    const double b_sq = (a - cf) * (a + cf);
    const double rel = (x - cf) / a;
    const double y_sq = b_sq * (1.0 - rel * rel);
    return std::sqrt(std::max(y_sq, 0.0));
}

OffsetEstimate estimate_offset(const PerturbationReport &report, const Scene &scene,
                               const LocalizeOptions &options)
{
    OffsetEstimate out;
    out.delta_k = report.delta_k;
    out.mean_rho_db = mean_matched_attenuation_db(report);
    out.mean_new_path_length_m = mean_new_path_length_m(report);
    out.regime = classify_regime(report, options.rho_threshold_db, options.los_block_threshold_db);

    const double los_att = los_attenuation_db(report);
    out.no_target_flag = report.delta_k == 0 && out.mean_rho_db < options.rho_threshold_db &&
                         los_att < options.los_block_threshold_db;

    if (out.regime == Regime::scatter_path)
    {
        if (!(report.delay_resolution_s > 0.0))
            throw numeric_error("estimate_offset: delay resolution unknown, cannot bound the estimate");
        const double resolution_m = report.delay_resolution_s * speed_of_light_m_s;
        const double l = out.mean_new_path_length_m;
        out.y_m = invert_scatter_path(l, scene, options.assumed_x_m);
        // +/- one delay bin on the path length, pushed through the inverse
        out.y_sigma_m = invert_scatter_path(l + resolution_m, scene, options.assumed_x_m) - out.y_m;
        out.has_estimate = true;
        return out;
    }

    // extension hook: calibrated attenuation-to-offset map for the blocking /
    // near-field regimes
    if (!options.attenuation_map.empty() && !out.no_target_flag)
    {
        const auto &map = options.attenuation_map;
        auto lookup = [&map](double rho) {
            if (rho <= map.front().first)
                return map.front().second;
            if (rho >= map.back().first)
                return map.back().second;
            for (std::size_t i = 1; i < map.size(); ++i)
                if (rho <= map[i].first)
                {
                    const double t = (rho - map[i - 1].first) / (map[i].first - map[i - 1].first);
                    return map[i - 1].second + t * (map[i].second - map[i - 1].second);
                }
            return map.back().second;
        };
        const double rho = std::isfinite(los_att) ? los_att : out.mean_rho_db;
        out.y_m = lookup(rho);
        const double floor_m =
            report.delay_resolution_s > 0.0 ? report.delay_resolution_s * speed_of_light_m_s : 1e-4;
        out.y_sigma_m = std::max(std::abs(lookup(rho + 1.0) - lookup(rho - 1.0)) / 2.0, floor_m);
        out.has_estimate = true;
    }
    return out;
}

} // namespace subthz
