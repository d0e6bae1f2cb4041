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

#ifndef HPSIM_ERRORS_HPP
#define HPSIM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hpsim {

/// Bad arguments or violated preconditions. CLI exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Operand shapes do not match; message names both shapes.
class ShapeError : public ValidationError {
  public:
    ShapeError(const std::string& op, long a_rows, long a_cols, long b_rows, long b_cols)
        : ValidationError(op + ": shape mismatch, " + std::to_string(a_rows) + "x" + std::to_string(a_cols) +
                          " vs " + std::to_string(b_rows) + "x" + std::to_string(b_cols)) {}
};

/// Numerical failure in an otherwise valid computation. CLI exit code 3.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration budget exhausted; carries the last residual seen.
class ConvergenceError : public NumericalError {
  public:
    ConvergenceError(const std::string& what, double residual)
        : NumericalError(what + " (last residual " + std::to_string(residual) + ")"), last_residual(residual) {}

    double last_residual;
};

/// Cholesky pivot failure; carries the 0-based index of the failing pivot.
class DefinitenessError : public NumericalError {
  public:
    DefinitenessError(const std::string& what, std::int64_t pivot_index)
        : NumericalError(what + " (pivot " + std::to_string(pivot_index) + " not positive)"),
          pivot(pivot_index) {}

    std::int64_t pivot;
};

/// File or stream failure. CLI exit code 4.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hpsim

#endif  // HPSIM_ERRORS_HPP
