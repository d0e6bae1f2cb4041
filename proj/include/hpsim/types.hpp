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

#ifndef HPSIM_TYPES_HPP
#define HPSIM_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "hpsim/errors.hpp"

namespace hpsim {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complexd = std::complex<double>;
using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;

/// Throws ValidationError on the first NaN/Inf entry; matrices carry finite values only.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* name) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const auto& z = m(r, c);
            if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z)))
                throw ValidationError(std::string(name) + ": non-finite entry at (" + std::to_string(r) + "," +
                                      std::to_string(c) + ")");
        }
}

template <typename Derived>
void require_nonempty(const Eigen::MatrixBase<Derived>& m, const char* name) {
    if (m.rows() < 1 || m.cols() < 1)
        throw ValidationError(std::string(name) + ": empty matrix");
}

}  // namespace hpsim

#endif  // HPSIM_TYPES_HPP
