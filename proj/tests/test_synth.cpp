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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "attenuation.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace subthz;

TEST_SUITE_BEGIN("synth");

TEST_CASE("fresnel parameter")
{
    SUBCASE("grazing edge gives nu = 0")
    {
        CHECK(fresnel_parameter({0, 0}, {0.92, 0}, {0.46, 0.0}, 215e9) == doctest::Approx(0.0));
    }
    SUBCASE("paper-geometry edge at 3 cm clearance, G band center")
    {
        const double nu = fresnel_parameter({0, 0}, {0.92, 0}, {0.46, 0.03}, 215e9);
        CHECK(nu == doctest::Approx(2.369).epsilon(5e-3));
    }
    SUBCASE("linear in the clearance")
    {
        const double nu1 = fresnel_parameter({0, 0}, {0.92, 0}, {0.46, 0.02}, 215e9);
        const double nu2 = fresnel_parameter({0, 0}, {0.92, 0}, {0.46, 0.04}, 215e9);
        CHECK(nu2 == doctest::Approx(2.0 * nu1).epsilon(1e-12));
    }
    SUBCASE("edge must lie strictly between TX and RX")
    {
        CHECK_THROWS_AS(fresnel_parameter({0, 0}, {0.92, 0}, {0.0, 0.01}, 215e9), std::invalid_argument);
        CHECK_THROWS_AS(fresnel_parameter({0, 0}, {0.92, 0}, {1.0, 0.01}, 215e9), std::invalid_argument);
        CHECK_THROWS_AS(fresnel_parameter({0, 0}, {0.92, 0}, {0.46, 0.01}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("knife edge loss against the analytic grazing value")
{
    // |F(0)| = 1/2 exactly
    CHECK(knife_edge_loss(0.0) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("knife edge loss approaches 0 dB for a clear path")
{
    for (double nu : {-3.5, -5.0, -8.0, -20.0})
        CHECK(std::abs(knife_edge_loss(nu)) < 0.4);
    CHECK(std::abs(knife_edge_loss(-30.0)) < 0.1);
}

TEST_CASE("knife edge loss matches independent quadrature of the Fresnel integral")
{
    for (double nu : {-6.0, -3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.4, 3.0, 3.5, 5.0, 7.0})
    {
        const double loss = knife_edge_loss(nu);
        const double reference = test::oracle_knife_edge_loss_db(nu);
        CHECK(std::abs(loss - reference) < 0.01);
    }
}

TEST_CASE("knife edge loss is monotone nondecreasing for nu >= 0")
{
    double previous = knife_edge_loss(0.0);
    for (double nu = 0.01; nu <= 8.0; nu += 0.01)
    {
        const double loss = knife_edge_loss(nu);
        CHECK(loss >= previous - 1e-9);
        previous = loss;
    }
}

namespace
{

// LoS ray through the default scene with the crossing geometry resolved
RayComponent los_ray(const Scene &scene, const Target &target, const BandConfig &band)
{
    SynthesisConfig cfg;
    cfg.max_bounce_order = 0;
    cfg.noise_enabled = false;
    cfg.scatter_enabled = false;
    return make_ray_components(scene, target, band, cfg).front();
}

} // namespace

TEST_CASE("blockage gain limits and symmetry")
{
    const Scene scene;
    const BandConfig band = band_g();

    SUBCASE("far target leaves the ray unobstructed")
    {
        Target far;
        far.center = {0.46, 10.0};
        // outside the room: use a ray component with the flag cleared
        RayComponent ray;
        ray.path_length_m = 0.92;
        ray.blocked_flag = false;
        const auto gain = blockage_gain(scene, far, ray, band.center_hz(), BlockageModel::double_knife_edge);
        CHECK(std::abs(20.0 * std::log10(std::abs(gain))) < 0.1);
    }

    SUBCASE("full blockage sits in the expected 10-25 dB range")
    {
        Target centered;
        centered.center = {0.46, 0.0};
        const RayComponent ray = los_ray(scene, centered, band);
        REQUIRE(ray.blocked_flag);
        const auto gain = blockage_gain(scene, centered, ray, band.center_hz(),
                                        BlockageModel::double_knife_edge);
        const double loss = -20.0 * std::log10(std::abs(gain));
        CHECK(loss > 10.0);
        CHECK(loss < 25.0);
        // absorbing strip centered on the ray: field = 2 F(k r)
        const double k = fresnel_parameter_d(ray.d1_m, ray.d2_m, 1.0, band.center_hz());
        const auto expected = 2.0 * fresnel_field(k * 0.03);
        CHECK(std::abs(gain - expected) < 1e-12);
    }

    SUBCASE("strip gain is symmetric in the lateral offset")
    {
        for (double y : {0.01, 0.04, 0.07})
        {
            Target above;
            above.center = {0.46, y};
            Target below;
            below.center = {0.46, -y};
            const RayComponent ray_above = los_ray(scene, above, band);
            const RayComponent ray_below = los_ray(scene, below, band);
            for (auto model : {BlockageModel::single_knife_edge, BlockageModel::double_knife_edge})
            {
                const auto ga = blockage_gain(scene, above, ray_above, band.center_hz(), model);
                const auto gb = blockage_gain(scene, below, ray_below, band.center_hz(), model);
                CHECK(std::abs(ga) == doctest::Approx(std::abs(gb)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("ray components: blockage flags and the scatter gate")
{
    const Scene scene;
    const BandConfig band = band_g();
    SynthesisConfig cfg;
    cfg.noise_enabled = false;

    SUBCASE("no target: one ray per image path, nothing blocked")
    {
        const auto rays = make_ray_components(scene, std::nullopt, band, cfg);
        CHECK(rays.size() == 7);
        for (const auto &ray : rays)
        {
            CHECK_FALSE(ray.blocked_flag);
            CHECK_FALSE(ray.is_scatter);
        }
    }

    SUBCASE("full blockage: every ray crossing the link line interacts, no scatter path")
    {
        Target target;
        target.center = {0.46, 0.0};
        const auto rays = make_ray_components(scene, target, band, cfg);
        CHECK(rays.size() == 7);
        int blocked = 0;
        for (const auto &ray : rays)
        {
            if (ray.blocked_flag)
                ++blocked;
            CHECK_FALSE(ray.is_scatter);
        }
        CHECK(rays.front().blocked_flag); // LoS is the shortest, listed first
        // LoS, floor, ceiling, and both end-wall bounces project onto the
        // link line; only the side-wall bounces swing clear
        CHECK(blocked == 5);
    }

    SUBCASE("6 cm offset: still inside the LoS corridor, no scatter")
    {
        Target target;
        target.center = {0.46, 0.06};
        const auto rays = make_ray_components(scene, target, band, cfg);
        CHECK(rays.front().blocked_flag);
        for (const auto &ray : rays)
            CHECK_FALSE(ray.is_scatter);
    }

    SUBCASE("12 cm offset: corridor cleared, scatter path appears")
    {
        Target target;
        target.center = {0.46, 0.12};
        const auto rays = make_ray_components(scene, target, band, cfg);
        REQUIRE(rays.size() == 8);
        const RayComponent &scatter = rays.back();
        CHECK(scatter.is_scatter);
        CHECK(scatter.path_length_m == doctest::Approx(2.0 * std::hypot(0.46, 0.12)).epsilon(1e-12));
        CHECK_FALSE(rays.front().blocked_flag);
    }
}

TEST_CASE("single-ray sweep has constant magnitude and the LoS phase slope")
{
    Scene scene;
    SynthesisConfig cfg;
    cfg.noise_enabled = false;
    cfg.max_bounce_order = 0;
    const BandConfig band = band_g();

    const FrequencySweep sweep = synthesize_sweep(scene, std::nullopt, band, cfg);
    REQUIRE(sweep.values.size() == 1001);

    const double expected_magnitude = 1.0 / 0.92;
    for (const auto &v : sweep.values)
        CHECK(std::abs(v) == doctest::Approx(expected_magnitude).epsilon(1e-12));

    // phase advances by -2 pi df l / c per frequency step
    const double df = band.spacing_hz();
    const double expected_step = -2.0 * M_PI * df * 0.92 / speed_of_light_m_s;
    for (std::size_t k = 1; k < 32; ++k)
    {
        const double step = std::arg(sweep.values[k] / sweep.values[k - 1]);
        CHECK(step == doctest::Approx(expected_step).epsilon(1e-9));
    }
}

TEST_CASE("synthesis is deterministic in the seed")
{
    const Scene scene;
    const BandConfig band = band_g();
    Target target;
    target.center = {0.46, 0.0};
    SynthesisConfig cfg;
    cfg.seed = 1234;

    const FrequencySweep a = synthesize_sweep(scene, target, band, cfg);
    const FrequencySweep b = synthesize_sweep(scene, target, band, cfg);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t k = 0; k < a.values.size(); ++k)
    {
        CHECK(a.values[k].real() == b.values[k].real());
        CHECK(a.values[k].imag() == b.values[k].imag());
    }

    cfg.seed = 1235;
    const FrequencySweep c = synthesize_sweep(scene, target, band, cfg);
    bool any_difference = false;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        if (a.values[k] != c.values[k])
            any_difference = true;
    CHECK(any_difference);
}

TEST_CASE("calibration identity: two noise-free baseline sweeps agree exactly")
{
    SynthesisConfig cfg;
    cfg.noise_enabled = false;
    const FrequencySweep a = synthesize_sweep(Scene{}, std::nullopt, band_g(), cfg);
    const FrequencySweep b = synthesize_sweep(Scene{}, std::nullopt, band_g(), cfg);
    const AttenuationSeries series = excess_attenuation(a, b);
    for (double v : series.a_db)
        CHECK(v == 0.0);
}

TEST_CASE("lateral symmetry: +y and -y offsets give equal magnitude spectra")
{
    SynthesisConfig cfg;
    cfg.noise_enabled = false;
    Target up;
    up.center = {0.46, 0.04};
    Target down;
    down.center = {0.46, -0.04};

    // symmetric room so wall clearances match as well
    Scene scene;
    scene.room_origin = {-1.54, -2.0};

    const FrequencySweep a = synthesize_sweep(scene, up, band_g(), cfg);
    const FrequencySweep b = synthesize_sweep(scene, down, band_g(), cfg);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        CHECK(std::abs(a.values[k]) == doctest::Approx(std::abs(b.values[k])).epsilon(1e-9));
}

TEST_CASE("blocking target attenuates more than a far target")
{
    const Scene scene;
    const BandConfig band = band_g();
    SynthesisConfig cfg;
    cfg.seed = 7;

    SynthesisConfig baseline_cfg = cfg;
    baseline_cfg.noise_enabled = false;
    const FrequencySweep baseline = synthesize_sweep(scene, std::nullopt, band, baseline_cfg);

    Target blocking;
    blocking.center = {0.46, 0.0};
    Target far;
    far.center = {0.46, 0.50};

    const AttenuationStats near_stats =
        stats(excess_attenuation(synthesize_sweep(scene, blocking, band, cfg), baseline));
    const AttenuationStats far_stats =
        stats(excess_attenuation(synthesize_sweep(scene, far, band, cfg), baseline));
    CHECK(near_stats.mean_db > far_stats.mean_db);
}

TEST_CASE("synthesis configuration validation")
{
    SynthesisConfig cfg;
    cfg.noise_floor_db = 3.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = SynthesisConfig{};
    cfg.scatter_gain = -0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = SynthesisConfig{};
    cfg.max_bounce_order = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_SUITE_END();
