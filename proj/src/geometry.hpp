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
// 2D link scene (TX at origin, RX on the x axis by convention), cylindrical
// target, band/frequency-grid configuration and image-method ray paths.
// The lateral target offset lives in 2D; floor/ceiling bounces use the plane
// height and room height, so path geometry is really 3D under the hood.

#ifndef SUBTHZ_GEOMETRY_HPP
#define SUBTHZ_GEOMETRY_HPP

#include <string>
#include <vector>

namespace subthz
{

struct Point2
{
    double x_m = 0.0;
    double y_m = 0.0;
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class Surface
{
    floor = 0,
    ceiling = 1,
    wall_neg_x = 2, // wall behind TX (low x)
    wall_pos_x = 3, // wall behind RX (high x)
    wall_neg_y = 4,
    wall_pos_y = 5,
};

const char *surface_name(Surface s);

enum class TargetMaterial
{
    perfectly_absorbing = 0,
    perfectly_conducting = 1,
};

// Indoor scene: antennas sit on a horizontal plane `plane_height_m` above the
// floor; the room is an axis-aligned box whose floor-plan low corner is
// `room_origin` (scene coordinates, i.e. relative to TX).
struct Scene
{
    Point2 tx{0.0, 0.0};
    Point2 rx{0.92, 0.0};
    double plane_height_m = 1.0;
    double room_width_m = 4.0; // extent along x
    double room_depth_m = 4.0; // extent along y
    double room_height_m = 3.0;
    Point2 room_origin{-1.3, -1.6};
    double floor_loss_db = 10.0;
    double ceiling_loss_db = 10.0;
    double wall_loss_db = 12.0;

    double surface_loss_db(Surface s) const;
    void validate() const; // throws std::invalid_argument
};

// Vertical cylinder blocking/perturbing the link. `center` is the projection
// of the barycenter onto the antenna plane.
struct Target
{
    Point2 center{0.46, 0.0};
    double diameter_m = 0.06;
    double height_m = 0.5;
    TargetMaterial material = TargetMaterial::perfectly_absorbing;

    void validate() const;
};

// One band of a frequency sweep: N_f points equally spaced over
// [f_start, f_stop]. Grids are built by index formula, never by repeated
// addition, so they are bit-reproducible.
struct BandConfig
{
    std::string band_id = "G";
    double f_start_hz = 0.0;
    double f_stop_hz = 0.0;
    int n_points = 0;

    double spacing_hz() const { return (f_stop_hz - f_start_hz) / (n_points - 1); }
    double span_hz() const { return f_stop_hz - f_start_hz; }
    double center_hz() const { return 0.5 * (f_start_hz + f_stop_hz); }
    bool same_grid(const BandConfig &other) const;
    void validate() const;
};

BandConfig band_w(); // 75-110 GHz, 1001 points, 35 MHz spacing
BandConfig band_g(); // 170-260 GHz, 1001 points, 90 MHz spacing

// f_k = f_start + k * (f_stop - f_start) / (N_f - 1)
std::vector<double> frequency_grid(const BandConfig &cfg);

double los_path_length(const Scene &scene);

// One ray path in the room. `vertices` are the 3D points TX -> bounce
// points -> RX in scene coordinates (z measured from the floor);
// `surfaces` lists the bounce surfaces in traversal order.
struct ImagePath
{
    double length_m = 0.0;
    int bounce_count = 0;
    std::vector<Surface> surfaces;
    std::vector<Vec3> vertices;
};

// Image-method ray paths up to `max_order` bounces (shoebox lattice).
// Order 0 is the LoS path; results are sorted by ascending length and are
// deterministic. Throws std::invalid_argument if TX or RX lies outside the
// room.
std::vector<ImagePath> image_paths(const Scene &scene, int max_order);

} // namespace subthz

#endif
