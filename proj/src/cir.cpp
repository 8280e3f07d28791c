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

#include "cir.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "error.hpp"

namespace subthz
{

const char *window_name(WindowType w)
{
    switch (w)
    {
    case WindowType::rectangular:
        return "rectangular";
    case WindowType::hann:
        return "hann";
    case WindowType::kaiser:
        return "kaiser";
    }
    return "unknown";
}

WindowType window_from_name(const std::string &name)
{
    if (name == "rectangular")
        return WindowType::rectangular;
    if (name == "hann")
        return WindowType::hann;
    if (name == "kaiser")
        return WindowType::kaiser;
    throw std::invalid_argument("unknown window '" + name + "' (rectangular|hann|kaiser)");
}

namespace
{

// modified Bessel I0, power series; adequate for beta <= ~20
double bessel_i0(double x)
{
    const double half = 0.5 * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 64; ++k)
    {
        term *= (half / k) * (half / k);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum;
}

// FFTW planning is not thread safe; execution of distinct plans is.
std::mutex &fftw_plan_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

std::vector<double> make_window(WindowType type, double kaiser_beta, int n)
{
    if (n < 1)
        throw std::invalid_argument("make_window: n must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(n), 1.0);
    if (n == 1 || type == WindowType::rectangular)
        return w;

    const double m = static_cast<double>(n - 1);
    switch (type)
    {
    case WindowType::hann:
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / m);
        break;
    case WindowType::kaiser:
    {
        if (kaiser_beta < 0.0)
            throw std::invalid_argument("make_window: kaiser beta must be >= 0");
        const double denom = bessel_i0(kaiser_beta);
        for (int i = 0; i < n; ++i)
        {
            const double r = 2.0 * i / m - 1.0;
            w[static_cast<std::size_t>(i)] = bessel_i0(kaiser_beta * std::sqrt(1.0 - r * r)) / denom;
        }
        break;
    }
    default:
        break;
    }
    return w;
}

double delay_resolution_m(const BandConfig &cfg)
{
    cfg.validate();
    return speed_of_light_m_s / cfg.span_hz();
}

PowerDelayProfile pdp(const FrequencySweep &sweep, WindowType window, double kaiser_beta, int zero_pad_factor)
{
    sweep.validate();
    if (zero_pad_factor < 1)
        throw std::invalid_argument("pdp: zero_pad_factor must be >= 1");

    const int nf = sweep.band.n_points;
    const std::size_t n = static_cast<std::size_t>(nf) * static_cast<std::size_t>(zero_pad_factor);
    const double spacing = sweep.band.spacing_hz();

    const std::vector<double> w = make_window(window, kaiser_beta, nf);

    fftw_complex *buf = fftw_alloc_complex(n);
    if (buf == nullptr)
        throw numeric_error("pdp: transform buffer allocation failed");
    for (std::size_t k = 0; k < n; ++k)
    {
        if (k < static_cast<std::size_t>(nf))
        {
            buf[k][0] = sweep.values[k].real() * w[k];
            buf[k][1] = sweep.values[k].imag() * w[k];
        }
        else
        {
            buf[k][0] = 0.0;
            buf[k][1] = 0.0;
        }
    }

    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr)
    {
        fftw_free(buf);
        throw numeric_error("pdp: transform planning failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }

    // FFTW's backward transform is unnormalized; scale by 1/N_f so the
    // rectangular no-padding case satisfies sum |h|^2 = (1/N_f) sum |T|^2.
    PowerDelayProfile out;
    out.window = window;
    out.kaiser_beta = window == WindowType::kaiser ? kaiser_beta : 0.0;
    out.zero_pad_factor = zero_pad_factor;
    out.delay_resolution_m = speed_of_light_m_s / sweep.band.span_hz();
    out.alias_free_range_m = speed_of_light_m_s / spacing;
    out.bin_spacing_m = speed_of_light_m_s / (spacing * static_cast<double>(n));
    out.path_length_m.resize(n);
    out.power_db.resize(n);

    std::vector<double> power(n);
    const double scale = 1.0 / static_cast<double>(nf);
    double peak = 0.0;
    double total_energy = 0.0;
    double upper_energy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double re = buf[i][0] * scale;
        const double im = buf[i][1] * scale;
        const double p = re * re + im * im;
        power[i] = p;
        total_energy += p;
        if (i >= n / 2)
            upper_energy += p;
        if (p > peak)
            peak = p;
    }
    fftw_free(buf);

    if (peak <= 0.0)
        throw numeric_error("pdp: all-zero profile");

    out.peak_power_linear = peak;
    out.aliasing_warning = upper_energy > 0.01 * total_energy;
    for (std::size_t i = 0; i < n; ++i)
    {
        out.path_length_m[i] = static_cast<double>(i) * out.bin_spacing_m;
        // exact-zero bins (isolated taps under a rectangular window) would be
        // -inf; pin them at -400 dB to keep the profile finite
        const double ratio = std::max(power[i] / peak, 1e-40);
        out.power_db[i] = 10.0 * std::log10(ratio);
    }
    return out;
}

} // namespace subthz
