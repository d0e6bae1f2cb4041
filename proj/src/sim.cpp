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

#include "hpsim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "hpsim/capacity.hpp"
#include "hpsim/csv.hpp"
#include "hpsim/rng.hpp"

namespace hpsim {

void validate(const SimConfig& config) {
    validate(config.array);  // warnings are the caller's business
    if (config.trials < 1)
        throw ValidationError("SimConfig: trials must be >= 1");
    if (config.snr_db_grid.empty())
        throw ValidationError("SimConfig: snr_db_grid must be nonempty");
    for (std::size_t i = 0; i < config.snr_db_grid.size(); ++i) {
        if (!std::isfinite(config.snr_db_grid[i]))
            throw ValidationError("SimConfig: non-finite SNR grid value");
        if (i > 0 && !(config.snr_db_grid[i] > config.snr_db_grid[i - 1]))
            throw ValidationError("SimConfig: snr_db_grid must be strictly increasing");
    }
    if (config.schemes.empty())
        throw ValidationError("SimConfig: schemes must be nonempty");
    for (std::size_t i = 0; i < config.schemes.size(); ++i)
        for (std::size_t j = i + 1; j < config.schemes.size(); ++j)
            if (config.schemes[i] == config.schemes[j])
                throw ValidationError("SimConfig: duplicate scheme " + scheme_name(config.schemes[i]));
}

const SweepStats& SweepResult::at(SchemeId scheme, std::size_t snr_index) const {
    for (std::size_t s = 0; s < schemes.size(); ++s)
        if (schemes[s] == scheme) {
            if (snr_index >= snr_db.size())
                throw ValidationError("SweepResult: snr index out of range");
            return stats[s][snr_index];
        }
    throw ValidationError("SweepResult: scheme " + scheme_name(scheme) + " not present");
}

bool SweepResult::has_scheme(SchemeId scheme) const {
    return std::find(schemes.begin(), schemes.end(), scheme) != schemes.end();
}

namespace {

std::vector<CVectord> scheme_columns(SchemeId scheme, const CMatrixd& h, int n, int m, double snr) {
    switch (scheme) {
        case SchemeId::HybridSic: return sic_hybrid_precoder(h, n, m, snr).columns();
        case SchemeId::OptimalUnconstrained: return optimal_greedy_precoder(h, n, m, snr);
        case SchemeId::AnalogPhaseOnly: return analog_phase_precoder(h, n, m, snr).columns();
    }
    throw ValidationError("scheme_columns: unknown scheme id");
}

double effective_snr(const SimConfig& config, double snr_db) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return config.stream_power_norm ? snr / config.array.n_rf : snr;
}

}  // namespace

std::map<SchemeId, double> run_trial(const SimConfig& config, int trial_index, double snr_db) {
    validate(config);
    if (trial_index < 0 || trial_index >= config.trials)
        throw ValidationError("run_trial: trial_index " + std::to_string(trial_index) + " outside [0, " +
                              std::to_string(config.trials) + ")");
    const std::string tag = "trial " + std::to_string(trial_index) + ": ";
    try {
        RandomStream rng(mix_seed(config.master_seed, static_cast<std::uint64_t>(trial_index)));
        const ChannelRealization chan = synthesize_channel(config.array, sample_paths(config.array, rng));
        const double snr = effective_snr(config, snr_db);
        std::map<SchemeId, double> out;
        for (const SchemeId scheme : config.schemes) {
            const auto cols = scheme_columns(scheme, chan.h, config.array.n_rf, config.array.m_per_rf, snr);
            out[scheme] = capacity_trace(chan.h, cols, snr).total;
        }
        return out;
    } catch (const ValidationError& e) {
        throw ValidationError(tag + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(tag + e.what());
    }
}

SweepResult run_sweep(const SimConfig& config, int worker_count) {
    validate(config);
    if (worker_count < 1)
        throw ValidationError("run_sweep: worker_count must be >= 1");

    const std::size_t n_schemes = config.schemes.size();
    const std::size_t n_snr = config.snr_db_grid.size();
    const std::size_t n_trials = static_cast<std::size_t>(config.trials);

    // raw[s][q][t]; slots are written by exactly one worker each, reductions
    // run sequentially afterwards so the result is worker-count invariant.
    std::vector<std::vector<std::vector<double>>> raw(
        n_schemes, std::vector<std::vector<double>>(n_snr, std::vector<double>(n_trials, 0.0)));

    struct TrialFailure {
        enum Kind { None, Validation, Numerical, Io, Other } kind = None;
        double snr_db = 0;
        std::string message;
    };
    std::vector<TrialFailure> failures(n_trials);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= n_trials) return;
            for (std::size_t q = 0; q < n_snr; ++q) {
                try {
                    const auto caps = run_trial(config, static_cast<int>(t), config.snr_db_grid[q]);
                    for (std::size_t s = 0; s < n_schemes; ++s) raw[s][q][t] = caps.at(config.schemes[s]);
                } catch (const ValidationError& e) {
                    failures[t] = {TrialFailure::Validation, config.snr_db_grid[q], e.what()};
                    return;
                } catch (const NumericalError& e) {
                    failures[t] = {TrialFailure::Numerical, config.snr_db_grid[q], e.what()};
                    return;
                } catch (const IoError& e) {
                    failures[t] = {TrialFailure::Io, config.snr_db_grid[q], e.what()};
                    return;
                } catch (const std::exception& e) {
                    failures[t] = {TrialFailure::Other, config.snr_db_grid[q], e.what()};
                    return;
                }
            }
        }
    };

    const int spawned = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(worker_count), n_trials));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(spawned));
    for (int w = 0; w < spawned; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& f = failures[t];
        if (f.kind == TrialFailure::None) continue;
        const std::string msg =
            "sweep aborted at trial " + std::to_string(t) + ", snr " + format_double(f.snr_db) + " dB: " + f.message;
        switch (f.kind) {
            case TrialFailure::Validation: throw ValidationError(msg);
            case TrialFailure::Numerical: throw NumericalError(msg);
            case TrialFailure::Io: throw IoError(msg);
            default: throw NumericalError(msg);
        }
    }

    SweepResult result;
    result.schemes = config.schemes;
    result.snr_db = config.snr_db_grid;
    result.trials = config.trials;
    result.stats.assign(n_schemes, std::vector<SweepStats>(n_snr));
    for (std::size_t s = 0; s < n_schemes; ++s)
        for (std::size_t q = 0; q < n_snr; ++q) {
            SweepStats& cell = result.stats[s][q];
            cell.raw = raw[s][q];
            double sum = 0;
            for (const double x : cell.raw) sum += x;
            cell.mean = sum / static_cast<double>(n_trials);
            if (n_trials > 1) {
                double ss = 0;
                for (const double x : cell.raw) ss += (x - cell.mean) * (x - cell.mean);
                cell.stddev = std::sqrt(ss / static_cast<double>(n_trials - 1));
            }
        }
    return result;
}

namespace {

std::string sweep_csv_string(const SweepResult& result) {
    std::ostringstream out;
    out << "scheme,snr_db,mean_capacity,std_capacity,trials\n";
    for (std::size_t s = 0; s < result.schemes.size(); ++s)
        for (std::size_t q = 0; q < result.snr_db.size(); ++q) {
            const SweepStats& cell = result.stats[s][q];
            out << scheme_name(result.schemes[s]) << ',' << format_double(result.snr_db[q]) << ','
                << format_double(cell.mean) << ',' << format_double(cell.stddev) << ',' << result.trials << '\n';
        }
    return out.str();
}

std::string sweep_raw_csv_string(const SweepResult& result) {
    std::ostringstream out;
    out << "scheme,snr_db,trial,capacity\n";
    for (std::size_t s = 0; s < result.schemes.size(); ++s)
        for (std::size_t q = 0; q < result.snr_db.size(); ++q)
            for (std::size_t t = 0; t < result.stats[s][q].raw.size(); ++t)
                out << scheme_name(result.schemes[s]) << ',' << format_double(result.snr_db[q]) << ',' << t << ','
                    << format_double(result.stats[s][q].raw[t]) << '\n';
    return out.str();
}

void write_string(const std::string& text, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f)
        throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_csv(const SweepResult& result, const std::string& path) {
    write_string(sweep_csv_string(result), path);
    write_string(sweep_raw_csv_string(result), path + ".raw.csv");
}

namespace {

// Piecewise-linear inverse of a capacity curve: the SNR at which the curve
// reaches capacity c, scanning segments left to right.
std::optional<double> invert_curve(const std::vector<double>& snr_db, const std::vector<double>& cap, double c) {
    for (std::size_t j = 0; j + 1 < cap.size(); ++j) {
        const double lo = cap[j];
        const double hi = cap[j + 1];
        if (c >= std::min(lo, hi) && c <= std::max(lo, hi)) {
            if (hi == lo) return snr_db[j];
            return snr_db[j] + (c - lo) / (hi - lo) * (snr_db[j + 1] - snr_db[j]);
        }
    }
    if (cap.size() == 1 && cap.front() == c) return snr_db.front();
    return std::nullopt;
}

}  // namespace

ComparisonReport compare(const SweepResult& result) {
    if (!result.has_scheme(SchemeId::OptimalUnconstrained))
        throw ValidationError("compare: OptimalUnconstrained results are required");
    if (result.schemes.size() < 2)
        throw ValidationError("compare: need at least one scheme besides optimal");

    const bool has_hybrid = result.has_scheme(SchemeId::HybridSic);
    const bool has_analog = result.has_scheme(SchemeId::AnalogPhaseOnly);

    ComparisonReport report;
    std::vector<double> opt_curve, hyb_curve;
    for (std::size_t q = 0; q < result.snr_db.size(); ++q) {
        ComparisonRow row;
        row.snr_db = result.snr_db[q];
        const double opt = result.at(SchemeId::OptimalUnconstrained, q).mean;
        opt_curve.push_back(opt);
        if (has_hybrid) {
            const double hyb = result.at(SchemeId::HybridSic, q).mean;
            hyb_curve.push_back(hyb);
            if (opt > 0) row.ratio_hybrid_optimal = hyb / opt;
        }
        if (has_analog && opt > 0)
            row.ratio_analog_optimal = result.at(SchemeId::AnalogPhaseOnly, q).mean / opt;
        if (has_hybrid && has_analog)
            row.gap_hybrid_analog =
                result.at(SchemeId::HybridSic, q).mean - result.at(SchemeId::AnalogPhaseOnly, q).mean;
        report.rows.push_back(row);
    }

    if (has_hybrid) {
        const double lo = *std::min_element(opt_curve.begin(), opt_curve.end());
        const double hi = *std::max_element(opt_curve.begin(), opt_curve.end());
        std::optional<double> worst;
        for (std::size_t q = 0; q < hyb_curve.size(); ++q) {
            const double c = hyb_curve[q];
            if (c < lo || c > hi) continue;  // outside the overlapping capacity range
            if (const auto snr_opt = invert_curve(result.snr_db, opt_curve, c)) {
                const double gap = result.snr_db[q] - *snr_opt;
                if (!worst || gap > *worst) worst = gap;
            }
        }
        report.snr_gap_db = worst;
    }
    return report;
}

std::string format_report(const SweepResult& result, const ComparisonReport& report) {
    std::ostringstream out;
    char line[256];
    out << "  snr_db";
    for (const SchemeId s : result.schemes) {
        std::snprintf(line, sizeof(line), "  %14s", scheme_name(s).c_str());
        out << line;
    }
    out << "    hyb/opt    ana/opt    hyb-ana\n";
    for (std::size_t q = 0; q < result.snr_db.size(); ++q) {
        std::snprintf(line, sizeof(line), "  %6.1f", result.snr_db[q]);
        out << line;
        for (std::size_t s = 0; s < result.schemes.size(); ++s) {
            std::snprintf(line, sizeof(line), "  %14.4f", result.stats[s][q].mean);
            out << line;
        }
        const ComparisonRow& row = report.rows[q];
        auto cell = [&](const std::optional<double>& v, const char* fmt) {
            if (v) std::snprintf(line, sizeof(line), fmt, *v);
            else std::snprintf(line, sizeof(line), "%11s", "-");
            out << line;
        };
        cell(row.ratio_hybrid_optimal, "%11.4f");
        cell(row.ratio_analog_optimal, "%11.4f");
        cell(row.gap_hybrid_analog, "%11.4f");
        out << '\n';
    }
    if (report.snr_gap_db) {
        std::snprintf(line, sizeof(line), "interpolated SNR gap optimal->hybrid: %.3f dB\n", *report.snr_gap_db);
        out << line;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// selfcheck

namespace {

CVectord random_unit_vector(RandomStream& rng, int m) {
    CVectord v(m);
    for (int i = 0; i < m; ++i) v[i] = rng.complex_gaussian();
    const double n = v.norm();
    return n > 0 ? CVectord(v / n) : CVectord::Unit(m, 0);
}

bool check_sic_identity(std::ostream& log, RandomStream& rng) {
    const int dims[3][3] = {{2, 2, 4}, {4, 2, 8}, {2, 4, 8}};
    const double snrs[3] = {0.01, 1.0, 1000.0};
    double worst = 0;
    for (int rep = 0; rep < 18; ++rep) {
        const auto& d = dims[rep % 3];
        ArrayConfig cfg;
        cfg.n_rf = d[0];
        cfg.m_per_rf = d[1];
        cfg.k_rx = d[2];
        cfg.paths = d[0];
        RandomStream chan_rng(rng.next_u64());
        const auto chan = synthesize_channel(cfg, sample_paths(cfg, chan_rng));
        std::vector<CVectord> cols;
        for (int c = 0; c < cfg.n_rf; ++c) {
            CVectord col = CVectord::Zero(cfg.total_tx());
            for (int i = 0; i < cfg.m_per_rf; ++i)
                col[static_cast<Eigen::Index>(c) * cfg.m_per_rf + i] = rng.complex_gaussian();
            const double n = col.norm();
            if (n > 1.0) col /= n;
            cols.push_back(col);
        }
        const double snr = snrs[rep % 3];
        CMatrixd p = CMatrixd::Zero(cfg.total_tx(), cfg.n_rf);
        for (int c = 0; c < cfg.n_rf; ++c) p.col(c) = cols[static_cast<std::size_t>(c)];
        const double direct = capacity_direct(chan.h, p, snr);
        const double total = capacity_trace(chan.h, cols, snr).total;
        if (direct != 0) worst = std::max(worst, std::abs(total - direct) / std::abs(direct));
    }
    const bool ok = worst < 1e-6;
    log << (ok ? "ok  " : "FAIL") << "  sic capacity identity        worst relative error " << worst << "\n";
    return ok;
}

bool check_quantization(std::ostream& log, RandomStream& rng) {
    bool ok = true;
    for (int rep = 0; rep < 200 && ok; ++rep) {
        const int m = 2 + static_cast<int>(rng.next_u64() % 7);
        const CVectord v = random_unit_vector(rng, m);
        const auto q = quantize_to_hybrid(v);
        double sum_mod = 0;
        for (int i = 0; i < m; ++i) sum_mod += std::abs(v[i]);
        if (std::abs(q.gain - sum_mod / m) > 1e-12) ok = false;
        const double returned = (v - q.gain * q.analog).norm();
        // coarse grid: per-entry best phase at each gridded gain
        const double dmax = 1.0 / std::sqrt(static_cast<double>(m));
        for (int gi = 0; gi <= 200 && ok; ++gi) {
            const double d = dmax * gi / 200.0;
            double mse = 0;
            for (int i = 0; i < m; ++i) {
                double best = 1e300;
                for (int ph = 0; ph < 32; ++ph) {
                    const Complexd a = std::polar(1.0, 2.0 * std::numbers::pi * ph / 32.0);
                    best = std::min(best, std::norm(v[i] - d * a));
                }
                mse += best;
            }
            if (returned > std::sqrt(mse) + 1e-12) ok = false;
        }
    }
    log << (ok ? "ok  " : "FAIL") << "  quantization optimality      (200 random unit vectors)\n";
    return ok;
}

bool check_determinism(std::ostream& log) {
    SimConfig cfg;
    cfg.array.n_rf = 2;
    cfg.array.m_per_rf = 2;
    cfg.array.k_rx = 4;
    cfg.array.paths = 2;
    cfg.snr_db_grid = {0.0, 10.0};
    cfg.trials = 4;
    cfg.master_seed = 0x5EEDULL;
    cfg.schemes = {SchemeId::HybridSic, SchemeId::OptimalUnconstrained, SchemeId::AnalogPhaseOnly};
    const SweepResult r1 = run_sweep(cfg, 1);
    const SweepResult r4 = run_sweep(cfg, 4);
    bool ok = sweep_csv_string(r1) == sweep_csv_string(r4) &&
              sweep_raw_csv_string(r1) == sweep_raw_csv_string(r4);
    const auto t0 = run_trial(cfg, 0, 10.0);
    const auto t0b = run_trial(cfg, 0, 10.0);
    ok = ok && t0 == t0b;
    log << (ok ? "ok  " : "FAIL") << "  determinism                  (workers 1 vs 4, repeated trials)\n";
    return ok;
}

}  // namespace

bool run_selfcheck(std::ostream& log) {
    RandomStream rng(0xC0FFEEULL);
    bool ok = true;
    ok &= check_sic_identity(log, rng);
    ok &= check_quantization(log, rng);
    ok &= check_determinism(log);
    log << (ok ? "selfcheck passed\n" : "selfcheck FAILED\n");
    return ok;
}

}  // namespace hpsim
