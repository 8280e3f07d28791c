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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "error.hpp"
#include "rng.hpp"

namespace subthz
{

const char *blockage_model_name(BlockageModel m)
{
    return m == BlockageModel::single_knife_edge ? "single_knife_edge" : "double_knife_edge";
}

BlockageModel blockage_model_from_name(const std::string &name)
{
    if (name == "single_knife_edge")
        return BlockageModel::single_knife_edge;
    if (name == "double_knife_edge")
        return BlockageModel::double_knife_edge;
    throw std::invalid_argument("unknown blockage model '" + name +
                                "' (single_knife_edge|double_knife_edge)");
}

void SynthesisConfig::validate() const
{
    if (noise_floor_db > 0.0)
        throw std::invalid_argument("synthesis: noise floor must be <= 0 dB");
    if (scatter_gain < 0.0)
        throw std::invalid_argument("synthesis: scatter gain must be >= 0");
    if (max_bounce_order < 0)
        throw std::invalid_argument("synthesis: max bounce order must be >= 0");
    if (!(clear_zone_factor > 0.0))
        throw std::invalid_argument("synthesis: clear zone factor must be positive");
}

namespace
{

// Fresnel cosine/sine integrals C(x), S(x) for x >= 0, power series.
// Usable up to x ~ 3.2 before cancellation eats the low digits.
void fresnel_cs_series(double x, double &c, double &s)
{
    const double x4 = x * x * x * x;
    const double q = (M_PI / 2.0) * (M_PI / 2.0) * x4;

    // C: sum u_k / (4k+1), u_0 = x, u_{k+1} = -u_k q / ((2k+1)(2k+2))
    double u = x;
    c = u;
    for (int k = 0; k < 80; ++k)
    {
        u *= -q / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        const double term = u / (4.0 * k + 5.0);
        c += term;
        if (std::abs(term) < 1e-17 * std::abs(c) + 1e-300)
            break;
    }

    // S: sum v_k / (4k+3), v_0 = (pi/2) x^3, v_{k+1} = -v_k q / ((2k+2)(2k+3))
    double v = (M_PI / 2.0) * x * x * x;
    s = v / 3.0;
    for (int k = 0; k < 80; ++k)
    {
        v *= -q / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        const double term = v / (4.0 * k + 7.0);
        s += term;
        if (std::abs(term) < 1e-17 * std::abs(s) + 1e-300)
            break;
    }
}

// F(nu) for nu >= threshold via the asymptotic expansion of the remainder
// integral Int_nu^inf exp(-j pi t^2 / 2) dt = e^{-ja} sum_m phase_m c_m
// a^{-(2m+1)/2} / sqrt(2 pi), a = pi nu^2 / 2. Truncated at the smallest term.
std::complex<double> fresnel_field_asymptotic(double nu)
{
    const std::complex<double> j(0.0, 1.0);
    const double a = M_PI * nu * nu / 2.0;

    std::complex<double> phase = -j; // -j, 1, j, -1, ...
    double coeff = 1.0;
    double apow = 1.0 / std::sqrt(a);
    std::complex<double> sum(0.0, 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 40; ++m)
    {
        const double mag = coeff * apow;
        if (mag >= prev)
            break; // asymptotic series started diverging
        sum += phase * mag;
        prev = mag;
        phase *= j;
        coeff *= (2.0 * m + 1.0) / 2.0;
        apow /= a;
    }

    const std::complex<double> tail = std::exp(-j * a) * sum / std::sqrt(2.0 * M_PI);
    return (1.0 + j) / 2.0 * tail;
}

} // namespace

std::complex<double> fresnel_field(double nu)
{
    if (!std::isfinite(nu))
        throw std::invalid_argument("fresnel_field: non-finite argument");

    constexpr double switch_point = 3.2;
    if (nu >= switch_point)
        return fresnel_field_asymptotic(nu);
    if (nu <= -switch_point)
        return 1.0 - fresnel_field_asymptotic(-nu);

    double c = 0.0;
    double s = 0.0;
    fresnel_cs_series(std::abs(nu), c, s);
    if (nu < 0.0)
    {
        c = -c;
        s = -s;
    }
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> remainder(0.5 - c, -(0.5 - s));
    return (1.0 + j) / 2.0 * remainder;
}

double knife_edge_loss(double nu)
{
    return -20.0 * std::log10(std::abs(fresnel_field(nu)));
}

double fresnel_parameter_d(double d1_m, double d2_m, double clearance_m, double f_hz)
{
    if (!(d1_m > 0.0) || !(d2_m > 0.0))
        throw std::invalid_argument("fresnel_parameter: edge must lie strictly between TX and RX");
    if (!(f_hz > 0.0))
        throw std::invalid_argument("fresnel_parameter: frequency must be positive");
    const double lambda = speed_of_light_m_s / f_hz;
    return clearance_m * std::sqrt(2.0 * (d1_m + d2_m) / (lambda * d1_m * d2_m));
}

double fresnel_parameter(Point2 tx, Point2 rx, Point2 edge, double f_hz)
{
    const double ux = rx.x_m - tx.x_m;
    const double uy = rx.y_m - tx.y_m;
    const double d = std::hypot(ux, uy);
    if (d <= 0.0)
        throw std::invalid_argument("fresnel_parameter: TX and RX coincide");
    const double ex = edge.x_m - tx.x_m;
    const double ey = edge.y_m - tx.y_m;
    const double d1 = (ex * ux + ey * uy) / d;
    const double d2 = d - d1;
    const double clearance = (ux * ey - uy * ex) / d; // signed perpendicular offset
    return fresnel_parameter_d(d1, d2, clearance, f_hz);
}

std::complex<double> blockage_gain(const Scene &scene, const Target &target, const RayComponent &ray,
                                   double f_hz, BlockageModel model)
{
    (void)scene;
    target.validate();
    if (!ray.blocked_flag)
        return {1.0, 0.0};

    const double radius = 0.5 * target.diameter_m;
    const double k = fresnel_parameter_d(ray.d1_m, ray.d2_m, 1.0, f_hz); // nu per meter of clearance

    if (model == BlockageModel::single_knife_edge)
    {
        // near edge of the cylinder as a single absorbing half plane
        const double clearance = std::abs(ray.lateral_offset_m) - radius;
        return fresnel_field(-k * clearance);
    }

    // absorbing strip between the two edges: field = F(-nu_lo) + F(nu_hi)
    const double nu_lo = k * (ray.lateral_offset_m - radius);
    const double nu_hi = k * (ray.lateral_offset_m + radius);
    return fresnel_field(-nu_lo) + fresnel_field(nu_hi);
}

namespace
{

struct ClosestApproach
{
    double distance_2d = std::numeric_limits<double>::infinity();
    double lateral_signed = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

ClosestApproach closest_approach(const ImagePath &path, Point2 target)
{
    ClosestApproach best;
    double arc = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
    {
        const Vec3 &a = path.vertices[i];
        const Vec3 &b = path.vertices[i + 1];
        const double seg3d = std::sqrt((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y) +
                                       (b.z - a.z) * (b.z - a.z));
        const double sx = b.x - a.x;
        const double sy = b.y - a.y;
        const double seg2d_sq = sx * sx + sy * sy;
        const double px = target.x_m - a.x;
        const double py = target.y_m - a.y;

        double t = seg2d_sq > 0.0 ? std::clamp((px * sx + py * sy) / seg2d_sq, 0.0, 1.0) : 0.0;
        const double cx = a.x + t * sx;
        const double cy = a.y + t * sy;
        const double dist = std::hypot(target.x_m - cx, target.y_m - cy);
        if (dist < best.distance_2d)
        {
            best.distance_2d = dist;
            const double seg2d = std::sqrt(seg2d_sq);
            best.lateral_signed = seg2d > 0.0 ? (sx * py - sy * px) / seg2d : dist;
            best.d1 = arc + t * seg3d;
            best.d2 = path.length_m - best.d1;
        }
        arc += seg3d;
    }
    return best;
}

} // namespace

std::vector<RayComponent> make_ray_components(const Scene &scene, const std::optional<Target> &target,
                                              const BandConfig &band, const SynthesisConfig &cfg)
{
    scene.validate();
    band.validate();
    cfg.validate();
    if (target)
        target->validate();

    const auto paths = image_paths(scene, cfg.max_bounce_order);
    if (paths.empty())
        throw numeric_error("synthesize: empty path list");

    const double f_center = band.center_hz();
    const double lambda_center = speed_of_light_m_s / f_center;
    const double radius = target ? 0.5 * target->diameter_m : 0.0;

    std::vector<RayComponent> rays;
    rays.reserve(paths.size() + 1);
    bool los_clear = true;
    for (const ImagePath &path : paths)
    {
        RayComponent ray;
        ray.path_length_m = path.length_m;
        double gain = 1.0 / path.length_m;
        for (Surface s : path.surfaces)
            gain *= std::pow(10.0, -scene.surface_loss_db(s) / 20.0);
        ray.amplitude = {gain, 0.0};

        if (target)
        {
            const ClosestApproach ca = closest_approach(path, target->center);
            if (ca.d1 > 0.0 && ca.d2 > 0.0)
            {
                const double fresnel_radius =
                    std::sqrt(lambda_center * ca.d1 * ca.d2 / (ca.d1 + ca.d2));
                if (ca.distance_2d - radius <= cfg.clear_zone_factor * fresnel_radius)
                {
                    ray.blocked_flag = true;
                    ray.d1_m = ca.d1;
                    ray.d2_m = ca.d2;
                    ray.lateral_offset_m = ca.lateral_signed;
                    if (path.bounce_count == 0)
                        los_clear = false;
                }
            }
        }
        rays.push_back(ray);
    }

    // First-order specular scatter off the target, only once the target has
    // left the LoS diffraction corridor (closer in, the strip diffraction
    // already accounts for the interaction).
    if (target && cfg.scatter_enabled && cfg.scatter_gain > 0.0 && los_clear)
    {
        const double leg1 = std::hypot(target->center.x_m - scene.tx.x_m, target->center.y_m - scene.tx.y_m);
        const double leg2 = std::hypot(scene.rx.x_m - target->center.x_m, scene.rx.y_m - target->center.y_m);
        if (leg1 > 0.0 && leg2 > 0.0)
        {
            RayComponent scatter;
            scatter.path_length_m = leg1 + leg2;
            scatter.amplitude = {cfg.scatter_gain / (leg1 + leg2), 0.0};
            scatter.is_scatter = true;
            rays.push_back(scatter);
        }
    }
    return rays;
}

FrequencySweep synthesize_sweep(const Scene &scene, const std::optional<Target> &target,
                                const BandConfig &band, const SynthesisConfig &cfg)
{
    const std::vector<RayComponent> rays = make_ray_components(scene, target, band, cfg);
    const std::vector<double> grid = frequency_grid(band);

    // noise scale is tied to the LoS amplitude (order-0 ray)
    const double los_amplitude = 1.0 / los_path_length(scene);
    const double noise_sigma =
        cfg.noise_enabled ? std::pow(10.0, cfg.noise_floor_db / 20.0) * los_amplitude : 0.0;
    GaussianRng rng(cfg.seed);

    FrequencySweep sweep;
    sweep.band = band;
    if (target)
    {
        char label[32];
        std::snprintf(label, sizeof(label), "y_%gcm", target->center.y_m * 100.0);
        sweep.label = label;
    }
    else
    {
        sweep.label = "baseline";
    }

    sweep.values.resize(grid.size());
    const std::complex<double> j(0.0, 1.0);
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        const double f = grid[k];
        std::complex<double> t(0.0, 0.0);
        for (const RayComponent &ray : rays)
        {
            std::complex<double> gain(1.0, 0.0);
            if (ray.blocked_flag && target)
                gain = blockage_gain(scene, *target, ray, f, cfg.blockage_model);
            const double phase = -2.0 * M_PI * f * ray.path_length_m / speed_of_light_m_s;
            t += gain * ray.amplitude * std::exp(j * phase);
        }
        if (noise_sigma > 0.0)
        {
            const auto [g1, g2] = rng.pair();
            t += noise_sigma / std::sqrt(2.0) * std::complex<double>(g1, g2);
        }
        sweep.values[k] = t;
    }
    return sweep;
}

} // namespace subthz
