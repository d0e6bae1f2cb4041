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
// Monte Carlo harness: seeded per-trial streams, SNR sweep over the
// requested schemes with one shared channel per trial, deterministic
// aggregation independent of the worker count, CSV output, and the
// scheme-comparison report.

#ifndef HPSIM_SIM_HPP
#define HPSIM_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpsim/channel.hpp"
#include "hpsim/precoder.hpp"

namespace hpsim {

struct SimConfig {
    ArrayConfig array;
    std::vector<double> snr_db_grid;  // strictly increasing, nonempty
    int trials = 200;
    std::uint64_t master_seed = 0;
    std::vector<SchemeId> schemes;  // nonempty, duplicates rejected
    std::string output_path;
    bool stream_power_norm = false;  // divide snr by N (E[ss^H] = I/N)
};

void validate(const SimConfig& config);

struct SweepStats {
    double mean = 0;
    double stddev = 0;           // sample std (n-1); 0 when trials == 1
    std::vector<double> raw;     // per-trial capacities in trial order
};

struct SweepResult {
    std::vector<SchemeId> schemes;
    std::vector<double> snr_db;
    std::vector<std::vector<SweepStats>> stats;  // [scheme][snr]
    int trials = 0;

    const SweepStats& at(SchemeId scheme, std::size_t snr_index) const;
    bool has_scheme(SchemeId scheme) const;
};

/// One Monte Carlo point: a single channel drawn from
/// mix_seed(master_seed, trial_index) — so every scheme and every SNR of a
/// trial share the realization — evaluated through capacity_trace.
std::map<SchemeId, double> run_trial(const SimConfig& config, int trial_index, double snr_db);

/// Full sweep; trials may run on any number of workers, the reduction is
/// sequential in trial order and therefore byte-stable.
SweepResult run_sweep(const SimConfig& config, int worker_count = 1);

/// Writes `scheme,snr_db,mean_capacity,std_capacity,trials` rows plus a
/// companion `<path>.raw.csv` with the per-trial values. 17 significant
/// digits, lossless round-trip.
void write_csv(const SweepResult& result, const std::string& path);

struct ComparisonRow {
    double snr_db = 0;
    std::optional<double> ratio_hybrid_optimal;
    std::optional<double> ratio_analog_optimal;
    std::optional<double> gap_hybrid_analog;  // bits/s/Hz
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    /// Max over the overlapping capacity range of the extra SNR the hybrid
    /// curve needs to reach the optimal curve's capacity (piecewise-linear).
    std::optional<double> snr_gap_db;
};

ComparisonReport compare(const SweepResult& result);

std::string format_report(const SweepResult& result, const ComparisonReport& report);

/// Property suites for the CLI selfcheck subcommand: SIC capacity identity,
/// quantization optimality, determinism. Fixed internal seeds. True iff all pass.
bool run_selfcheck(std::ostream& log);

}  // namespace hpsim

#endif  // HPSIM_SIM_HPP
