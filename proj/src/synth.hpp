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
// Synthetic complex frequency sweeps: image-method ray sum with knife-edge /
// absorbing-strip diffraction around the cylindrical target, an optional
// first-order scatter path off the target, and seeded complex noise.

#ifndef SUBTHZ_SYNTH_HPP
#define SUBTHZ_SYNTH_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "attenuation.hpp"
#include "cir.hpp"
#include "geometry.hpp"

namespace subthz
{

enum class BlockageModel
{
    single_knife_edge = 0,
    double_knife_edge = 1, // absorbing strip, two edges at y +/- diameter/2
};

const char *blockage_model_name(BlockageModel m);
BlockageModel blockage_model_from_name(const std::string &name);

struct SynthesisConfig
{
    double noise_floor_db = -60.0; // relative to the LoS amplitude, must be <= 0
    bool noise_enabled = true;
    std::uint64_t seed = 1;
    BlockageModel blockage_model = BlockageModel::double_knife_edge;
    int max_bounce_order = 1;
    // target scatter path: amplitude = scatter_gain / path_length, added only
    // when the target clears the LoS corridor (see clear_zone_factor)
    bool scatter_enabled = true;
    double scatter_gain = 0.1;
    // rays passing farther than this many first-Fresnel-zone radii from the
    // target edge (at band center) are treated as unobstructed
    double clear_zone_factor = 3.0;

    void validate() const;
};

// One discrete propagation path of the ray sum. `amplitude` carries spreading
// and reflection losses but not blockage; blockage is evaluated per frequency
// from the stored crossing geometry when `blocked_flag` is set.
struct RayComponent
{
    double path_length_m = 0.0;
    std::complex<double> amplitude{0.0, 0.0};
    bool blocked_flag = false;
    bool is_scatter = false;
    // crossing geometry w.r.t. the target (valid when blocked_flag):
    double d1_m = 0.0;             // arc length from TX to the crossing plane
    double d2_m = 0.0;             // arc length from the crossing plane to RX
    double lateral_offset_m = 0.0; // signed target-center offset from the ray
};

// Fresnel diffraction parameter nu for an edge between tx and rx:
// nu = h_c * sqrt(2 (d1+d2) / (lambda d1 d2)), h_c the signed perpendicular
// clearance of the edge w.r.t. the LoS, d1/d2 the along-link distances.
// Throws std::invalid_argument unless the edge plane lies strictly between.
double fresnel_parameter(Point2 tx, Point2 rx, Point2 edge, double f_hz);
double fresnel_parameter_d(double d1_m, double d2_m, double clearance_m, double f_hz);

// Complex knife-edge field factor F(nu) = ((1+j)/2) * Int_nu^inf exp(-j pi t^2/2) dt.
// F(0) = 1/2, F(-inf) = 1, F(+inf) = 0.
std::complex<double> fresnel_field(double nu);

// Excess knife-edge loss -20*log10|F(nu)| in dB.
double knife_edge_loss(double nu);

// Diffraction gain of one ray past the cylinder at frequency f.
std::complex<double> blockage_gain(const Scene &scene, const Target &target, const RayComponent &ray,
                                   double f_hz, BlockageModel model);

// Rays (image paths + optional scatter) with blockage flags resolved at the
// band's center frequency. Exposed for tests and diagnostics.
std::vector<RayComponent> make_ray_components(const Scene &scene, const std::optional<Target> &target,
                                              const BandConfig &band, const SynthesisConfig &cfg);

// T(f_k) = sum_p gain_p(f_k) a_p exp(-j 2 pi f_k l_p / c) + n_k.
// Same inputs and seed give a bit-identical sweep.
FrequencySweep synthesize_sweep(const Scene &scene, const std::optional<Target> &target,
                                const BandConfig &band, const SynthesisConfig &cfg);

} // namespace subthz

#endif
