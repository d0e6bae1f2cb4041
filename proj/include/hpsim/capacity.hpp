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
// Capacity evaluation in bits/s/Hz: the direct log-det form and the
// per-sub-array incremental recursion, which telescope to the same value.

#ifndef HPSIM_CAPACITY_HPP
#define HPSIM_CAPACITY_HPP

#include <vector>

#include "hpsim/types.hpp"

namespace hpsim {

struct CapacityTrace {
    std::vector<double> increments;  // one nonnegative term per sub-array
    double total = 0;                // their sum
};

/// log2 det(I_K + snr * H P P^H H^H), evaluated in the log domain.
double capacity_direct(const CMatrixd& h, const CMatrixd& p, double snr);

/// log2(1 + snr * p_col^H g p_col) for g = H^H T^-1 H already formed.
/// The quadratic form must be real up to roundoff; a relative imaginary
/// residue above 1e-10 is a numerical-consistency error.
double capacity_increment(const CMatrixd& g, const CVectord& p_col, double snr);

/// Incremental capacities of the columns in order; total telescopes to
/// capacity_direct of the assembled matrix.
CapacityTrace capacity_trace(const CMatrixd& h, const std::vector<CVectord>& p_cols, double snr);

}  // namespace hpsim

#endif  // HPSIM_CAPACITY_HPP
