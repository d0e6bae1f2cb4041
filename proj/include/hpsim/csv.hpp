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

#ifndef HPSIM_CSV_HPP
#define HPSIM_CSV_HPP

#include <string>

#include "hpsim/precoder.hpp"
#include "hpsim/types.hpp"

namespace hpsim {

/// 17-significant-digit decimal; round-trips every double exactly.
std::string format_double(double x);

/// `row,col,re,im` header, one line per entry, row-major.
void write_channel_csv(const CMatrixd& h, const std::string& path);

/// `[analog]` / `[digital]` / `[assembled]` sections for A, D and P.
void write_precoder_csv(const HybridPrecoder& precoder, const std::string& path);

/// Same layout for an unconstrained precoder: the analog/digital sections
/// carry headers only, the columns go under `[assembled]`.
void write_precoder_csv(const std::vector<CVectord>& columns, const std::string& path);

}  // namespace hpsim

#endif  // HPSIM_CSV_HPP
