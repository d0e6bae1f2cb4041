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

#include "hpsim/precoder.hpp"

#include <cmath>
#include <utility>

namespace hpsim {

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::HybridSic: return "hybrid-sic";
        case SchemeId::OptimalUnconstrained: return "optimal";
        case SchemeId::AnalogPhaseOnly: return "analog-phase";
    }
    throw ValidationError("scheme_name: unknown scheme id");
}

SchemeId parse_scheme(const std::string& name) {
    if (name == "hybrid-sic") return SchemeId::HybridSic;
    if (name == "optimal") return SchemeId::OptimalUnconstrained;
    if (name == "analog-phase") return SchemeId::AnalogPhaseOnly;
    throw ValidationError("unknown scheme '" + name + "' (expected hybrid-sic, optimal or analog-phase)");
}

std::vector<CVectord> HybridPrecoder::columns() const {
    std::vector<CVectord> cols;
    cols.reserve(assembled.cols());
    for (Eigen::Index c = 0; c < assembled.cols(); ++c) cols.push_back(assembled.col(c));
    return cols;
}

CMatrixd update_g(const CMatrixd& h, const std::vector<CVectord>& p_prefix, double snr) {
    require_nonempty(h, "update_g");
    require_finite(h, "update_g channel");
    if (!(snr > 0) || !std::isfinite(snr))
        throw ValidationError("update_g: snr must be positive and finite");
    if (p_prefix.empty()) return h.adjoint() * h;

    const Eigen::Index k = h.rows();
    CMatrixd hp(k, static_cast<Eigen::Index>(p_prefix.size()));
    for (std::size_t i = 0; i < p_prefix.size(); ++i) {
        if (p_prefix[i].size() != h.cols())
            throw ShapeError("update_g prefix column", h.rows(), h.cols(), p_prefix[i].size(), 1);
        require_finite(p_prefix[i], "update_g prefix column");
        hp.col(static_cast<Eigen::Index>(i)).noalias() = h * p_prefix[i];
    }
    CMatrixd t = CMatrixd::Identity(k, k) + snr * (hp * hp.adjoint());
    const CMatrixd tsym = 0.5 * (t + t.adjoint());
    const CMatrixd x = CholeskyHpd<double>(tsym).solve(h);
    CMatrixd g = h.adjoint() * x;
    return 0.5 * (g + g.adjoint());  // exactly Hermitian
}

CMatrixd extract_submatrix(const CMatrixd& g, int m_index, int m) {
    if (m < 1)
        throw ValidationError("extract_submatrix: m must be >= 1");
    if (g.rows() != g.cols())
        throw ShapeError("extract_submatrix", g.rows(), g.cols(), g.cols(), g.cols());
    if (g.rows() % m != 0)
        throw ValidationError("extract_submatrix: matrix order " + std::to_string(g.rows()) +
                              " is not a multiple of m = " + std::to_string(m));
    const int n = static_cast<int>(g.rows()) / m;
    if (m_index < 1 || m_index > n)
        throw ValidationError("extract_submatrix: m_index " + std::to_string(m_index) + " outside [1, " +
                              std::to_string(n) + "]");
    const Eigen::Index start = static_cast<Eigen::Index>(m_index - 1) * m;
    return g.block(start, start, m, m);
}

PhaseQuantization quantize_to_hybrid(const CVectord& v1) {
    require_nonempty(v1, "quantize_to_hybrid");
    require_finite(v1, "quantize_to_hybrid");
    const double nrm = v1.norm();
    if (nrm == 0.0)
        throw ValidationError("quantize_to_hybrid: zero vector");
    if (std::abs(nrm - 1.0) > 1e-10)
        throw ValidationError("quantize_to_hybrid: input norm " + std::to_string(nrm) + " is not 1");

    const Eigen::Index m = v1.size();
    CVectord a(m);
    double sum_mod = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double mod = std::abs(v1[i]);
        sum_mod += mod;
        a[i] = mod > 0 ? v1[i] / mod : Complexd(1.0, 0.0);  // phase 0 where v1 vanishes
    }
    return {std::move(a), sum_mod / static_cast<double>(m)};
}

namespace {

enum class ColumnRule { Hybrid, Optimal, Analog };

struct SicLoopOutput {
    std::vector<CVectord> analog;
    std::vector<double> gains;
    std::vector<CVectord> columns;  // full NM x 1, block-sparse
};

SicLoopOutput run_sic_loop(const CMatrixd& h, int n, int m, double snr, ColumnRule rule, double eig_tol,
                           int eig_max_iter) {
    require_nonempty(h, "precoder");
    require_finite(h, "precoder channel");
    if (n < 1 || m < 1)
        throw ValidationError("precoder: n and m must be >= 1");
    if (h.cols() != static_cast<Eigen::Index>(n) * m)
        throw ShapeError("precoder channel", h.rows(), h.cols(), static_cast<Eigen::Index>(n) * m, 1);
    if (!(snr > 0) || !std::isfinite(snr))
        throw ValidationError("precoder: snr must be positive and finite");

    const Eigen::Index nm = h.cols();
    SicLoopOutput out;
    for (int m_index = 1; m_index <= n; ++m_index) {
        const CMatrixd g = update_g(h, out.columns, snr);
        const CMatrixd s = extract_submatrix(g, m_index, m);
        EigenPair<double> top;
        try {
            top = hermitian_top_eigenpair(s, eig_tol, eig_max_iter);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("sub-array " + std::to_string(m_index) + ": " + e.what(), e.last_residual);
        }

        CVectord block;
        if (rule == ColumnRule::Optimal) {
            block = top.vector;
        } else {
            PhaseQuantization q = quantize_to_hybrid(top.vector);
            const double gain = rule == ColumnRule::Hybrid ? q.gain : 1.0 / std::sqrt(static_cast<double>(m));
            block = gain * q.analog;
            out.analog.push_back(std::move(q.analog));
            out.gains.push_back(gain);
        }
        CVectord col = CVectord::Zero(nm);
        col.segment(static_cast<Eigen::Index>(m_index - 1) * m, m) = block;
        out.columns.push_back(std::move(col));
    }
    return out;
}

HybridPrecoder pack_precoder(SicLoopOutput&& loop, int n, int m) {
    HybridPrecoder p;
    p.analog_columns = std::move(loop.analog);
    p.digital_gains = std::move(loop.gains);
    p.assembled = CMatrixd::Zero(static_cast<Eigen::Index>(n) * m, n);
    for (int c = 0; c < n; ++c) p.assembled.col(c) = loop.columns[static_cast<std::size_t>(c)];
    return p;
}

}  // namespace

HybridPrecoder sic_hybrid_precoder(const CMatrixd& h, int n, int m, double snr, double eig_tol,
                                   int eig_max_iter) {
    return pack_precoder(run_sic_loop(h, n, m, snr, ColumnRule::Hybrid, eig_tol, eig_max_iter), n, m);
}

std::vector<CVectord> optimal_greedy_precoder(const CMatrixd& h, int n, int m, double snr, double eig_tol,
                                              int eig_max_iter) {
    return run_sic_loop(h, n, m, snr, ColumnRule::Optimal, eig_tol, eig_max_iter).columns;
}

HybridPrecoder analog_phase_precoder(const CMatrixd& h, int n, int m, double snr, double eig_tol,
                                     int eig_max_iter) {
    return pack_precoder(run_sic_loop(h, n, m, snr, ColumnRule::Analog, eig_tol, eig_max_iter), n, m);
}

}  // namespace hpsim
