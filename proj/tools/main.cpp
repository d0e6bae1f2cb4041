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
// CLI entry point. Subcommands: simulate, channel-dump, precoder-dump,
// selfcheck. Exit codes: 0 success, 2 validation error, 3 numerical error,
// 4 I/O error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hpsim/capacity.hpp"
#include "hpsim/csv.hpp"
#include "hpsim/sim.hpp"

namespace {

using namespace hpsim;

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ':')) parts.push_back(item);

    auto to_double = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ValidationError("bad SNR value '" + s + "' in '" + text + "'");
        }
        if (pos != s.size())
            throw ValidationError("bad SNR value '" + s + "' in '" + text + "'");
        return v;
    };

    if (parts.size() == 1) return {to_double(parts[0])};
    if (parts.size() != 3)
        throw ValidationError("--snr-db expects <value> or <start:step:stop>, got '" + text + "'");
    const double start = to_double(parts[0]);
    const double step = to_double(parts[1]);
    const double stop = to_double(parts[2]);
    if (!(step > 0))
        throw ValidationError("--snr-db step must be > 0");
    if (stop < start)
        throw ValidationError("--snr-db stop must be >= start");
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::vector<SchemeId> parse_scheme_list(const std::string& text) {
    std::vector<SchemeId> schemes;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) schemes.push_back(parse_scheme(item));
    }
    if (schemes.empty())
        throw ValidationError("--schemes list is empty");
    return schemes;
}

Normalization parse_normalization(const std::string& text) {
    if (text == "standard") return Normalization::Standard;
    if (text == "paper-literal") return Normalization::PaperLiteral;
    throw ValidationError("--normalization must be 'standard' or 'paper-literal', got '" + text + "'");
}

void print_warnings(const ArrayConfig& array) {
    for (const auto& w : validate(array)) std::cerr << "warning: " << w << "\n";
}

struct CommonArrayOpts {
    int n_rf = 0;
    int m_per_rf = 0;
    int k_rx = 0;
    int paths = 0;
    double spacing_ratio = 0.5;
    std::string normalization = "standard";

    void add_to(CLI::App& cmd) {
        cmd.add_option("--n-rf", n_rf, "RF chains / sub-arrays (N)")->required();
        cmd.add_option("--m-per-rf", m_per_rf, "antennas per sub-array (M)")->required();
        cmd.add_option("--k-rx", k_rx, "receive antennas (K)")->required();
        cmd.add_option("--paths", paths, "propagation paths (L)")->required();
        cmd.add_option("--spacing-ratio", spacing_ratio, "antenna spacing over wavelength (default 0.5)");
        cmd.add_option("--normalization", normalization, "channel scale: standard | paper-literal");
    }

    ArrayConfig config() const {
        ArrayConfig a;
        a.n_rf = n_rf;
        a.m_per_rf = m_per_rf;
        a.k_rx = k_rx;
        a.paths = paths;
        a.spacing_ratio = spacing_ratio;
        a.normalization = parse_normalization(normalization);
        return a;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"sub-array hybrid analog/digital precoding simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo SNR sweep and write CSV");
    CommonArrayOpts sim_array;
    sim_array.add_to(*sim_cmd);
    std::string snr_spec;
    int trials = 200;
    std::uint64_t seed = 0;
    std::string scheme_spec = "hybrid-sic,optimal,analog-phase";
    bool stream_power_norm = false;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out_path;
    sim_cmd->add_option("--snr-db", snr_spec, "SNR grid in dB: <start:step:stop> or single value")->required();
    sim_cmd->add_option("--trials", trials, "Monte Carlo trials (default 200)");
    sim_cmd->add_option("--seed", seed, "64-bit master seed")->required();
    sim_cmd->add_option("--schemes", scheme_spec, "comma list: hybrid-sic,optimal,analog-phase");
    sim_cmd->add_flag("--stream-power-norm", stream_power_norm, "divide snr by N (E[ss^H] = I/N)");
    sim_cmd->add_option("--workers", workers, "worker threads (default: hardware concurrency)");
    sim_cmd->add_option("--out", out_path, "output CSV path")->required();

    // channel-dump
    auto* chan_cmd = app.add_subcommand("channel-dump", "write one channel realization as CSV");
    CommonArrayOpts chan_array;
    chan_array.add_to(*chan_cmd);
    std::uint64_t chan_seed = 0;
    std::string chan_out;
    chan_cmd->add_option("--seed", chan_seed, "master seed; the dump equals simulate's trial 0 channel")
        ->required();
    chan_cmd->add_option("--out", chan_out, "output CSV path")->required();

    // precoder-dump
    auto* prec_cmd = app.add_subcommand("precoder-dump", "write one precoder as CSV");
    CommonArrayOpts prec_array;
    prec_array.add_to(*prec_cmd);
    std::string prec_scheme = "hybrid-sic";
    double prec_snr_db = 0;
    std::uint64_t prec_seed = 0;
    bool prec_spn = false;
    std::string prec_out;
    prec_cmd->add_option("--scheme", prec_scheme, "hybrid-sic | optimal | analog-phase")->required();
    prec_cmd->add_option("--snr-db", prec_snr_db, "design SNR in dB")->required();
    prec_cmd->add_option("--seed", prec_seed, "master seed; the channel equals simulate's trial 0")->required();
    prec_cmd->add_flag("--stream-power-norm", prec_spn, "divide snr by N");
    prec_cmd->add_option("--out", prec_out, "output CSV path")->required();

    // selfcheck
    auto* check_cmd = app.add_subcommand("selfcheck", "run the built-in property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    if (sim_cmd->parsed()) {
        SimConfig cfg;
        cfg.array = sim_array.config();
        cfg.snr_db_grid = parse_snr_grid(snr_spec);
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.schemes = parse_scheme_list(scheme_spec);
        cfg.output_path = out_path;
        cfg.stream_power_norm = stream_power_norm;
        print_warnings(cfg.array);
        validate(cfg);
        const SweepResult result = run_sweep(cfg, workers);
        write_csv(result, cfg.output_path);
        std::cout << "wrote " << cfg.output_path << " and " << cfg.output_path << ".raw.csv\n";
        if (result.has_scheme(SchemeId::OptimalUnconstrained) && result.schemes.size() > 1)
            std::cout << format_report(result, compare(result));
        return 0;
    }

    if (chan_cmd->parsed()) {
        const ArrayConfig array = chan_array.config();
        print_warnings(array);
        RandomStream rng(mix_seed(chan_seed, 0));
        const auto chan = synthesize_channel(array, sample_paths(array, rng));
        write_channel_csv(chan.h, chan_out);
        std::cout << "wrote " << chan_out << "\n";
        return 0;
    }

    if (prec_cmd->parsed()) {
        const ArrayConfig array = prec_array.config();
        print_warnings(array);
        const SchemeId scheme = parse_scheme(prec_scheme);
        RandomStream rng(mix_seed(prec_seed, 0));
        const auto chan = synthesize_channel(array, sample_paths(array, rng));
        double snr = std::pow(10.0, prec_snr_db / 10.0);
        if (prec_spn) snr /= array.n_rf;
        if (scheme == SchemeId::OptimalUnconstrained)
            write_precoder_csv(optimal_greedy_precoder(chan.h, array.n_rf, array.m_per_rf, snr), prec_out);
        else if (scheme == SchemeId::HybridSic)
            write_precoder_csv(sic_hybrid_precoder(chan.h, array.n_rf, array.m_per_rf, snr), prec_out);
        else
            write_precoder_csv(analog_phase_precoder(chan.h, array.n_rf, array.m_per_rf, snr), prec_out);
        std::cout << "wrote " << prec_out << "\n";
        return 0;
    }

    if (check_cmd->parsed())
        return run_selfcheck(std::cout) ? 0 : 3;

    return 2;  // unreachable with require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hpsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hpsim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hpsim::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
