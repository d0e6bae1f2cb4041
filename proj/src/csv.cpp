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

#include "hpsim/csv.hpp"

#include <cstdio>
#include <fstream>

namespace hpsim {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    return f;
}

void finish(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f)
        throw IoError("write to '" + path + "' failed");
}

void write_entries(std::ofstream& f, const CMatrixd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            f << r << ',' << c << ',' << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag())
              << '\n';
}

}  // namespace

void write_channel_csv(const CMatrixd& h, const std::string& path) {
    auto f = open_out(path);
    f << "row,col,re,im\n";
    write_entries(f, h);
    finish(f, path);
}

void write_precoder_csv(const std::vector<CVectord>& columns, const std::string& path) {
    if (columns.empty())
        throw ValidationError("write_precoder_csv: no columns");
    CMatrixd p(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) p.col(static_cast<Eigen::Index>(c)) = columns[c];

    auto f = open_out(path);
    f << "[analog]\n";
    f << "row,col,re,im\n";
    f << "[digital]\n";
    f << "index,gain\n";
    f << "[assembled]\n";
    f << "row,col,re,im\n";
    write_entries(f, p);
    finish(f, path);
}

void write_precoder_csv(const HybridPrecoder& precoder, const std::string& path) {
    const Eigen::Index n = static_cast<Eigen::Index>(precoder.analog_columns.size());
    const Eigen::Index m = n > 0 ? precoder.analog_columns.front().size() : 0;
    CMatrixd a = CMatrixd::Zero(n * m, n);
    for (Eigen::Index c = 0; c < n; ++c) a.col(c).segment(c * m, m) = precoder.analog_columns[c];

    auto f = open_out(path);
    f << "[analog]\n";
    f << "row,col,re,im\n";
    write_entries(f, a);
    f << "[digital]\n";
    f << "index,gain\n";
    for (std::size_t i = 0; i < precoder.digital_gains.size(); ++i)
        f << i << ',' << format_double(precoder.digital_gains[i]) << '\n';
    f << "[assembled]\n";
    f << "row,col,re,im\n";
    write_entries(f, precoder.assembled);
    finish(f, path);
}

}  // namespace hpsim
