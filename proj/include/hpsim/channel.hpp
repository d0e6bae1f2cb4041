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
//
// Geometric Saleh-Valenzuela channel sampling: ULA steering vectors, seeded
// path draws, and synthesis of the K x NM channel matrix.

#ifndef HPSIM_CHANNEL_HPP
#define HPSIM_CHANNEL_HPP

#include <string>
#include <vector>

#include "hpsim/rng.hpp"
#include "hpsim/types.hpp"

namespace hpsim {

/// Channel scale convention. Standard gives E||H||_F^2 = N*M*K; PaperLiteral
/// keeps the sqrt(N^2 M / L) front factor verbatim. The two coincide whenever
/// K == N.
enum class Normalization { Standard, PaperLiteral };

struct ArrayConfig {
    int n_rf = 1;               // N, RF chains / sub-arrays
    int m_per_rf = 1;           // M, antennas per sub-array
    int k_rx = 1;               // K, receive antennas
    double spacing_ratio = 0.5; // d / lambda
    int paths = 1;              // L
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    Normalization normalization = Normalization::Standard;

    int total_tx() const { return n_rf * m_per_rf; }
};

struct PathParams {
    Complexd gain;  // alpha_l, CN(0,1) so |alpha_l| is Rayleigh
    double aod = 0; // departure azimuth, radians in [0, 2*pi)
    double aoa = 0; // arrival azimuth, radians in [0, 2*pi)
};

struct ChannelRealization {
    ArrayConfig config;
    std::vector<PathParams> paths;
    CMatrixd h;  // K x NM
};

/// Hard-validates the config; returns non-fatal warnings (e.g. L > N).
std::vector<std::string> validate(const ArrayConfig& config);

/// Front scale factor applied to the steering-vector sum.
double channel_scale(const ArrayConfig& config);

/// ULA response: entry k = exp(j 2*pi*spacing_ratio*k*sin(angle)) / sqrt(count).
CVectord ula_steering(double angle, int count, double spacing_ratio);

/// Draws L paths from the stream: per path aod, aoa ~ U[0,2*pi) then the
/// complex gain (two normals), in that order.
std::vector<PathParams> sample_paths(const ArrayConfig& config, RandomStream& rng);

/// h = scale * sum_l gain_l * rx_gain * tx_gain * f_r(aoa_l) f_t(aod_l)^H.
ChannelRealization synthesize_channel(const ArrayConfig& config, const std::vector<PathParams>& paths);

}  // namespace hpsim

#endif  // HPSIM_CHANNEL_HPP
