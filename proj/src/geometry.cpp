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

#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "error.hpp"

namespace subthz
{

const char *surface_name(Surface s)
{
    switch (s)
    {
    case Surface::floor:
        return "floor";
    case Surface::ceiling:
        return "ceiling";
    case Surface::wall_neg_x:
        return "wall_neg_x";
    case Surface::wall_pos_x:
        return "wall_pos_x";
    case Surface::wall_neg_y:
        return "wall_neg_y";
    case Surface::wall_pos_y:
        return "wall_pos_y";
    }
    return "unknown";
}

double Scene::surface_loss_db(Surface s) const
{
    switch (s)
    {
    case Surface::floor:
        return floor_loss_db;
    case Surface::ceiling:
        return ceiling_loss_db;
    default:
        return wall_loss_db;
    }
}

void Scene::validate() const
{
    const double dx = rx.x_m - tx.x_m;
    const double dy = rx.y_m - tx.y_m;
    if (std::hypot(dx, dy) <= 0.0)
        throw std::invalid_argument("scene: TX and RX must not coincide");
    if (!(plane_height_m > 0.0 && plane_height_m < room_height_m))
        throw std::invalid_argument("scene: plane height must lie strictly between floor and ceiling");
    if (!(room_width_m > 0.0 && room_depth_m > 0.0 && room_height_m > 0.0))
        throw std::invalid_argument("scene: room dimensions must be positive");
    if (floor_loss_db < 0.0 || ceiling_loss_db < 0.0 || wall_loss_db < 0.0)
        throw std::invalid_argument("scene: reflection losses must be >= 0 dB");
    for (double v : {tx.x_m, tx.y_m, rx.x_m, rx.y_m, plane_height_m, room_width_m, room_depth_m,
                     room_height_m, room_origin.x_m, room_origin.y_m})
        if (!std::isfinite(v))
            throw std::invalid_argument("scene: non-finite field");
}

void Target::validate() const
{
    if (!(diameter_m > 0.0))
        throw std::invalid_argument("target: diameter must be positive");
    if (!(height_m > 0.0))
        throw std::invalid_argument("target: height must be positive");
    if (!std::isfinite(center.x_m) || !std::isfinite(center.y_m))
        throw std::invalid_argument("target: non-finite center");
}

bool BandConfig::same_grid(const BandConfig &other) const
{
    return f_start_hz == other.f_start_hz && f_stop_hz == other.f_stop_hz && n_points == other.n_points;
}

void BandConfig::validate() const
{
    if (!(f_stop_hz > f_start_hz))
        throw std::invalid_argument("band " + band_id + ": f_stop must exceed f_start");
    if (n_points < 2)
        throw std::invalid_argument("band " + band_id + ": need at least 2 points");
    if (f_start_hz < 0.0 || !std::isfinite(f_start_hz) || !std::isfinite(f_stop_hz))
        throw std::invalid_argument("band " + band_id + ": invalid frequency bounds");
}

BandConfig band_w() { return BandConfig{"W", 75e9, 110e9, 1001}; }

BandConfig band_g() { return BandConfig{"G", 170e9, 260e9, 1001}; }

std::vector<double> frequency_grid(const BandConfig &cfg)
{
    cfg.validate();
    std::vector<double> f(static_cast<std::size_t>(cfg.n_points));
    const double span = cfg.f_stop_hz - cfg.f_start_hz;
    const double denom = static_cast<double>(cfg.n_points - 1);
    for (int k = 0; k < cfg.n_points; ++k)
        f[static_cast<std::size_t>(k)] = cfg.f_start_hz + static_cast<double>(k) * span / denom;
    f.front() = cfg.f_start_hz;
    f.back() = cfg.f_stop_hz;
    return f;
}

double los_path_length(const Scene &scene)
{
    scene.validate();
    return std::hypot(scene.rx.x_m - scene.tx.x_m, scene.rx.y_m - scene.tx.y_m);
}

namespace
{

// Axis image family: position and reflection count for one (parity, period)
// pair of the shoebox lattice.
struct AxisImage
{
    double position; // unfolded coordinate
    int bounces;
};

std::vector<AxisImage> axis_images(double source, double length, int max_order)
{
    std::vector<AxisImage> out;
    out.push_back({source, 0});
    for (int k = -max_order; k <= max_order + 1; ++k)
    {
        // mirrored family: -s + 2kL, |2k - 1| reflections
        int n_mirror = std::abs(2 * k - 1);
        if (n_mirror <= max_order)
            out.push_back({-source + 2.0 * k * length, n_mirror});
        // translated family: s + 2kL, |2k| reflections
        int n_shift = std::abs(2 * k);
        if (k != 0 && n_shift <= max_order)
            out.push_back({source + 2.0 * k * length, n_shift});
    }
    return out;
}

double fold_coordinate(double u, double length)
{
    double r = u - 2.0 * length * std::floor(u / (2.0 * length));
    return r <= length ? r : 2.0 * length - r;
}

struct Crossing
{
    double t;
    int axis; // 0 = x, 1 = y, 2 = z
    long plane_index;
};

Surface crossing_surface(int axis, long plane_index)
{
    const bool max_side = (plane_index % 2 != 0);
    switch (axis)
    {
    case 0:
        return max_side ? Surface::wall_pos_x : Surface::wall_neg_x;
    case 1:
        return max_side ? Surface::wall_pos_y : Surface::wall_neg_y;
    default:
        return max_side ? Surface::ceiling : Surface::floor;
    }
}

void collect_crossings(double from, double to, double length, int axis, std::vector<Crossing> &out)
{
    if (from == to)
        return;
    const double lo = std::min(from, to);
    const double hi = std::max(from, to);
    const long j_first = static_cast<long>(std::ceil(lo / length));
    const long j_last = static_cast<long>(std::floor(hi / length));
    for (long j = j_first; j <= j_last; ++j)
    {
        const double plane = static_cast<double>(j) * length;
        if (plane <= lo || plane >= hi)
            continue; // endpoint grazing is excluded by strict-interior validation
        out.push_back({(plane - from) / (to - from), axis, j});
    }
}

} // namespace

std::vector<ImagePath> image_paths(const Scene &scene, int max_order)
{
    scene.validate();
    if (max_order < 0)
        throw std::invalid_argument("image_paths: max_order must be >= 0");

    const double lx = scene.room_width_m;
    const double ly = scene.room_depth_m;
    const double lz = scene.room_height_m;

    // shift so the room occupies [0,lx] x [0,ly] x [0,lz]
    const Vec3 tx{scene.tx.x_m - scene.room_origin.x_m, scene.tx.y_m - scene.room_origin.y_m,
                  scene.plane_height_m};
    const Vec3 rx{scene.rx.x_m - scene.room_origin.x_m, scene.rx.y_m - scene.room_origin.y_m,
                  scene.plane_height_m};

    for (const Vec3 &p : {tx, rx})
        if (!(p.x > 0.0 && p.x < lx && p.y > 0.0 && p.y < ly && p.z > 0.0 && p.z < lz))
            throw std::invalid_argument("image_paths: TX or RX lies outside the room");

    const auto images_x = axis_images(tx.x, lx, max_order);
    const auto images_y = axis_images(tx.y, ly, max_order);
    const auto images_z = axis_images(tx.z, lz, max_order);

    std::vector<ImagePath> paths;
    for (const AxisImage &ix : images_x)
        for (const AxisImage &iy : images_y)
            for (const AxisImage &iz : images_z)
            {
                const int order = ix.bounces + iy.bounces + iz.bounces;
                if (order > max_order)
                    continue;

                const Vec3 img{ix.position, iy.position, iz.position};
                ImagePath path;
                path.length_m = std::sqrt((img.x - rx.x) * (img.x - rx.x) +
                                          (img.y - rx.y) * (img.y - rx.y) +
                                          (img.z - rx.z) * (img.z - rx.z));
                path.bounce_count = order;

                // walk RX -> image, then reverse so vertices run TX -> RX
                std::vector<Crossing> crossings;
                collect_crossings(rx.x, img.x, lx, 0, crossings);
                collect_crossings(rx.y, img.y, ly, 1, crossings);
                collect_crossings(rx.z, img.z, lz, 2, crossings);
                std::sort(crossings.begin(), crossings.end(), [](const Crossing &a, const Crossing &b) {
                    return a.t != b.t ? a.t < b.t : a.axis < b.axis;
                });

                path.vertices.push_back({tx.x + scene.room_origin.x_m, tx.y + scene.room_origin.y_m, tx.z});
                for (auto it = crossings.rbegin(); it != crossings.rend(); ++it)
                {
                    const Vec3 u{rx.x + it->t * (img.x - rx.x), rx.y + it->t * (img.y - rx.y),
                                 rx.z + it->t * (img.z - rx.z)};
                    path.vertices.push_back({fold_coordinate(u.x, lx) + scene.room_origin.x_m,
                                             fold_coordinate(u.y, ly) + scene.room_origin.y_m,
                                             fold_coordinate(u.z, lz)});
                    path.surfaces.push_back(crossing_surface(it->axis, it->plane_index));
                }
                path.vertices.push_back({rx.x + scene.room_origin.x_m, rx.y + scene.room_origin.y_m, rx.z});

                if (static_cast<int>(path.surfaces.size()) != order)
                    throw numeric_error("image_paths: crossing count disagrees with image order");

                paths.push_back(std::move(path));
            }

    std::sort(paths.begin(), paths.end(), [](const ImagePath &a, const ImagePath &b) {
        if (a.length_m != b.length_m)
            return a.length_m < b.length_m;
        if (a.bounce_count != b.bounce_count)
            return a.bounce_count < b.bounce_count;
        return a.surfaces < b.surfaces;
    });
    return paths;
}

} // namespace subthz
