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

#include "hpsim/channel.hpp"

#include <cmath>
#include <numbers>

namespace hpsim {

std::vector<std::string> validate(const ArrayConfig& config) {
    if (config.n_rf < 1 || config.m_per_rf < 1 || config.k_rx < 1 || config.paths < 1)
        throw ValidationError("ArrayConfig: n_rf, m_per_rf, k_rx and paths must all be >= 1");
    if (!(config.spacing_ratio > 0))
        throw ValidationError("ArrayConfig: spacing_ratio must be > 0");
    if (!std::isfinite(config.spacing_ratio) || !std::isfinite(config.tx_gain) || !std::isfinite(config.rx_gain))
        throw ValidationError("ArrayConfig: non-finite parameter");
    std::vector<std::string> warnings;
    if (config.paths > config.n_rf)
        warnings.push_back("L = " + std::to_string(config.paths) + " exceeds N = " + std::to_string(config.n_rf) +
                           "; mmWave sub-array operation usually has L <= N");
    return warnings;
}

double channel_scale(const ArrayConfig& config) {
    const double n = config.n_rf;
    const double m = config.m_per_rf;
    const double k = config.k_rx;
    const double l = config.paths;
    return config.normalization == Normalization::Standard ? std::sqrt(n * m * k / l)
                                                           : std::sqrt(n * n * m / l);
}

CVectord ula_steering(double angle, int count, double spacing_ratio) {
    if (count < 1)
        throw ValidationError("ula_steering: count must be >= 1");
    if (!std::isfinite(angle) || !std::isfinite(spacing_ratio))
        throw ValidationError("ula_steering: non-finite argument");
    CVectord f(count);
    const double step = 2.0 * std::numbers::pi * spacing_ratio * std::sin(angle);
    const double norm = 1.0 / std::sqrt(static_cast<double>(count));
    for (int k = 0; k < count; ++k) f[k] = std::polar(norm, step * k);
    return f;
}

std::vector<PathParams> sample_paths(const ArrayConfig& config, RandomStream& rng) {
    validate(config);
    std::vector<PathParams> paths(config.paths);
    for (auto& p : paths) {
        p.aod = rng.angle();
        p.aoa = rng.angle();
        p.gain = rng.complex_gaussian();
    }
    return paths;
}

ChannelRealization synthesize_channel(const ArrayConfig& config, const std::vector<PathParams>& paths) {
    validate(config);
    if (static_cast<int>(paths.size()) != config.paths)
        throw ValidationError("synthesize_channel: got " + std::to_string(paths.size()) + " paths, config says " +
                              std::to_string(config.paths));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (const auto& p : paths) {
        if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()))
            throw ValidationError("synthesize_channel: non-finite path gain");
        if (!(p.aod >= 0 && p.aod < two_pi) || !(p.aoa >= 0 && p.aoa < two_pi))
            throw ValidationError("synthesize_channel: path angle outside [0, 2*pi)");
    }

    const int nm = config.total_tx();
    CMatrixd h = CMatrixd::Zero(config.k_rx, nm);
    for (const auto& p : paths) {
        const CVectord fr = ula_steering(p.aoa, config.k_rx, config.spacing_ratio);
        const CVectord ft = ula_steering(p.aod, nm, config.spacing_ratio);
        h.noalias() += (p.gain * config.rx_gain * config.tx_gain) * (fr * ft.adjoint());
    }
    h *= channel_scale(config);
    return {config, paths, std::move(h)};
}

}  // namespace hpsim
