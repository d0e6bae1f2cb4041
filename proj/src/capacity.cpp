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

#include "hpsim/capacity.hpp"

#include <cmath>

#include "hpsim/linalg.hpp"
#include "hpsim/precoder.hpp"

namespace hpsim {

double capacity_direct(const CMatrixd& h, const CMatrixd& p, double snr) {
    require_nonempty(h, "capacity_direct");
    require_finite(h, "capacity_direct channel");
    require_finite(p, "capacity_direct precoder");
    if (p.rows() != h.cols())
        throw ShapeError("capacity_direct", h.rows(), h.cols(), p.rows(), p.cols());
    if (!(snr > 0) || !std::isfinite(snr))
        throw ValidationError("capacity_direct: snr must be positive and finite");

    const Eigen::Index k = h.rows();
    const CMatrixd hp = h * p;
    CMatrixd a = CMatrixd::Identity(k, k) + snr * (hp * hp.adjoint());
    const CMatrixd asym = 0.5 * (a + a.adjoint());
    return CholeskyHpd<double>(asym).logdet2();
}

double capacity_increment(const CMatrixd& g, const CVectord& p_col, double snr) {
    require_nonempty(g, "capacity_increment");
    require_finite(g, "capacity_increment g");
    require_finite(p_col, "capacity_increment column");
    if (g.rows() != g.cols() || p_col.size() != g.rows())
        throw ShapeError("capacity_increment", g.rows(), g.cols(), p_col.size(), 1);
    if (!(snr > 0) || !std::isfinite(snr))
        throw ValidationError("capacity_increment: snr must be positive and finite");

    const Complexd q = p_col.dot(g * p_col);
    if (std::abs(q.imag()) > 1e-10 * std::abs(q))
        throw NumericalError("capacity_increment: quadratic form imaginary residue " +
                             std::to_string(q.imag()) + " exceeds 1e-10 of magnitude " +
                             std::to_string(std::abs(q)));
    const double form = std::max(q.real(), 0.0);  // PSD up to roundoff
    return std::log2(1.0 + snr * form);
}

CapacityTrace capacity_trace(const CMatrixd& h, const std::vector<CVectord>& p_cols, double snr) {
    CapacityTrace trace;
    trace.increments.reserve(p_cols.size());
    std::vector<CVectord> prefix;
    prefix.reserve(p_cols.size());
    for (const auto& col : p_cols) {
        const CMatrixd g = update_g(h, prefix, snr);
        trace.increments.push_back(capacity_increment(g, col, snr));
        prefix.push_back(col);
    }
    double total = 0;
    for (const double inc : trace.increments) total += inc;
    trace.total = total;
    return trace;
}

}  // namespace hpsim
