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

#ifndef SUBTHZ_RNG_HPP
#define SUBTHZ_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace subthz
{

// splitmix64 mixer; used to derive independent per-stream seeds from one
// session seed so parallel workers never share generator state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic standard-normal pairs via Box-Muller on mt19937_64 output.
// std::normal_distribution is implementation-defined, so it is not used here;
// sweeps must be bit-reproducible for a given seed.
class GaussianRng
{
  public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    // one N(0,1) pair
    std::pair<double, double> pair()
    {
        double u1 = uniform_open();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // uniform in (0, 1]
    double uniform_open() { return 1.0 - uniform(); }

    std::mt19937_64 engine_;
};

} // namespace subthz

#endif
