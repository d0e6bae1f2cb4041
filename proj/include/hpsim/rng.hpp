// SPDX-License-Identifier: Apache-2.0
//
// hpsim — hybrid analog/digital precoding simulator for sub-array mmWave massive MIMO
// Copyright (C) 2026 hpsim authors
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

#ifndef HPSIM_RNG_HPP
#define HPSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace hpsim {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014 constants).
inline std::uint64_t splitmix64_avalanche(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-trial seed: the (index+1)-th output of the SplitMix64 stream whose
/// state starts at master_seed, i.e.
///   avalanche(master_seed + (index + 1) * 0x9E3779B97F4A7C15).
/// Fixed bit-exactly so parallel schedules cannot perturb results.
inline std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_avalanche(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Seeded random stream with platform-stable integer output (mt19937_64 is
/// bit-specified by the standard; the floating-point mappings below avoid the
/// implementation-defined std::*_distribution adapters).
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, 2*pi).
    double angle() { return 2.0 * std::numbers::pi * uniform01(); }

    /// Standard normal pair via Box-Muller.
    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Circularly-symmetric complex Gaussian, unit variance: CN(0, 1).
    std::complex<double> complex_gaussian() {
        const auto [x, y] = normal_pair();
        return {x / std::numbers::sqrt2, y / std::numbers::sqrt2};
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace hpsim

#endif  // HPSIM_RNG_HPP
