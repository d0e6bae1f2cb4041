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
// The three sub-array precoding schemes: SIC-based hybrid analog/digital,
// the unconstrained greedy benchmark, and the phase-only baseline. All three
// run the same successive loop: refresh the interference-whitened Gram
// matrix, take the dominant eigenvector of the active sub-array block, and
// map it to a column under the scheme's constraint.

#ifndef HPSIM_PRECODER_HPP
#define HPSIM_PRECODER_HPP

#include <string>
#include <vector>

#include "hpsim/linalg.hpp"
#include "hpsim/types.hpp"

namespace hpsim {

enum class SchemeId { HybridSic, OptimalUnconstrained, AnalogPhaseOnly };

/// CLI / CSV identifiers: hybrid-sic, optimal, analog-phase.
std::string scheme_name(SchemeId id);
SchemeId parse_scheme(const std::string& name);

/// Sub-array precoder: per-array unit-modulus phase vectors, one real digital
/// gain per array, and the assembled block-sparse NM x N matrix P.
struct HybridPrecoder {
    std::vector<CVectord> analog_columns;  // N vectors, each M x 1, |entry| = 1
    std::vector<double> digital_gains;     // N nonnegative reals
    CMatrixd assembled;                    // NM x N, column c supported on rows [c*M, (c+1)*M)

    std::vector<CVectord> columns() const;
};

/// G = H^H T^-1 H with T = I_K + snr * H P(1:m) P(1:m)^H H^H; empty prefix
/// gives G = H^H H exactly. Output is exactly Hermitian.
CMatrixd update_g(const CMatrixd& h, const std::vector<CVectord>& p_prefix, double snr);

/// M x M diagonal block of g for sub-array m_index (1-based).
CMatrixd extract_submatrix(const CMatrixd& g, int m_index, int m);

struct PhaseQuantization {
    CVectord analog;  // unit-modulus entries, phase of v1 (phase 0 where v1 is 0)
    double gain;      // (sum_k |v1[k]|) / M, in (0, 1/sqrt(M)]
};

/// Nearest constant-modulus scaled vector to a unit vector v1: analog takes
/// v1's per-entry phases, gain minimizes ||v1 - gain*analog||_2 exactly.
PhaseQuantization quantize_to_hybrid(const CVectord& v1);

/// The iterative SIC hybrid precoder (analog phases + real digital gains).
HybridPrecoder sic_hybrid_precoder(const CMatrixd& h, int n, int m, double snr, double eig_tol = 1e-10,
                                   int eig_max_iter = 10000);

/// Benchmark: same loop, the dominant eigenvector embedded unquantized.
std::vector<CVectord> optimal_greedy_precoder(const CMatrixd& h, int n, int m, double snr,
                                              double eig_tol = 1e-10, int eig_max_iter = 10000);

/// Baseline: same loop, phase-only columns with the gain pinned to 1/sqrt(M).
HybridPrecoder analog_phase_precoder(const CMatrixd& h, int n, int m, double snr, double eig_tol = 1e-10,
                                     int eig_max_iter = 10000);

}  // namespace hpsim

#endif  // HPSIM_PRECODER_HPP
