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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "hpsim/capacity.hpp"
#include "hpsim/precoder.hpp"
#include "test_support.hpp"

using namespace hpsim;
using hpsim::test::cofactor_det;
using hpsim::test::random_block_columns;
using hpsim::test::random_channel;
using hpsim::test::random_matrix;

TEST_CASE("capacity_direct: zero precoder and scalar hand case") {
    RandomStream rng(300);
    const CMatrixd h = random_matrix(rng, 3, 4);
    CHECK(capacity_direct(h, CMatrixd::Zero(4, 2), 5.0) == 0.0);

    CMatrixd h1(1, 1), p1(1, 1);
    h1 << 2.0;
    p1 << 1.0;
    CHECK(capacity_direct(h1, p1, 3.0) == doctest::Approx(std::log2(13.0)).epsilon(1e-12));
}

TEST_CASE("capacity_direct: matches the cofactor-determinant oracle") {
    RandomStream rng(301);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrixd h = random_matrix(rng, 4, 4);
        const CMatrixd p = random_matrix(rng, 4, 2) / 2.0;
        const double snr = 2.5;
        const CMatrixd hp = h * p;
        const CMatrixd a = CMatrixd::Identity(4, 4) + snr * (hp * hp.adjoint());
        const Complexd det = cofactor_det(a);
        const double expected = std::log2(det.real());
        const double got = capacity_direct(h, p, snr);
        CHECK(std::abs(got - expected) / std::abs(expected) < 1e-9);
    }
}

TEST_CASE("capacity_direct: validation") {
    RandomStream rng(302);
    const CMatrixd h = random_matrix(rng, 3, 4);
    CHECK_THROWS_AS(capacity_direct(h, CMatrixd::Zero(3, 2), 1.0), ShapeError);
    CHECK_THROWS_AS(capacity_direct(h, CMatrixd::Zero(4, 2), 0.0), ValidationError);
}

TEST_CASE("capacity_direct: nondecreasing in snr") {
    RandomStream rng(303);
    const auto chan = random_channel(rng, 2, 2, 4, 2);
    const CMatrixd p = sic_hybrid_precoder(chan.h, 2, 2, 1.0).assembled;
    double prev = -1.0;
    for (const double snr : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const double c = capacity_direct(chan.h, p, snr);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("capacity_direct: invariant under per-column phase rotation") {
    RandomStream rng(304);
    const auto chan = random_channel(rng, 2, 3, 4, 2);
    const CMatrixd p = sic_hybrid_precoder(chan.h, 2, 3, 2.0).assembled;
    CMatrixd rotated = p;
    rotated.col(0) *= std::polar(1.0, 0.9);
    rotated.col(1) *= std::polar(1.0, -2.1);
    CHECK(std::abs(capacity_direct(chan.h, p, 2.0) - capacity_direct(chan.h, rotated, 2.0)) < 1e-10);
}

TEST_CASE("capacity_increment: zero column and the empty-prefix reduction") {
    RandomStream rng(305);
    const CMatrixd h = random_matrix(rng, 3, 4);
    const CMatrixd g0 = update_g(h, {}, 2.0);
    CHECK(capacity_increment(g0, CVectord::Zero(4), 2.0) == 0.0);

    const CVectord p = test::random_unit_vector(rng, 4);
    const double manual = std::log2(1.0 + 2.0 * (h * p).squaredNorm());
    CHECK(capacity_increment(g0, p, 2.0) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("capacity_increment: exp2 equals the determinant ratio det(T_{m+1})/det(T_m)") {
    RandomStream rng(306);
    for (int rep = 0; rep < 10; ++rep) {
        const auto chan = random_channel(rng, 3, 2, 4, 3);
        const auto cols = random_block_columns(rng, 3, 2);
        const double snr = (rep % 2 == 0) ? 0.7 : 200.0;

        const std::vector<CVectord> prefix{cols[0], cols[1]};
        const CMatrixd g = update_g(chan.h, prefix, snr);
        const double inc = capacity_increment(g, cols[2], snr);

        auto t_of = [&](int m) {
            CMatrixd hp(chan.h.rows(), m);
            for (int c = 0; c < m; ++c) hp.col(c) = chan.h * cols[static_cast<std::size_t>(c)];
            return CMatrixd(CMatrixd::Identity(4, 4) + snr * (hp * hp.adjoint()));
        };
        const double ratio = (cofactor_det(t_of(3)) / cofactor_det(t_of(2))).real();
        CHECK(std::abs(std::exp2(inc) - ratio) / ratio < 1e-8);
    }
}

TEST_CASE("capacity_increment: large imaginary residue is rejected") {
    CMatrixd g(2, 2);
    g << 1.0, Complexd(0.0, 2.0), 0.0, 1.0;  // deliberately non-Hermitian
    CVectord p(2);
    p << 1.0, 1.0;
    CHECK_THROWS_AS(capacity_increment(g, p, 1.0), NumericalError);
}

TEST_CASE("capacity_trace: single column equals the direct form") {
    RandomStream rng(307);
    const auto chan = random_channel(rng, 1, 3, 4, 1);
    const auto cols = random_block_columns(rng, 1, 3);
    const auto trace = capacity_trace(chan.h, cols, 3.0);
    CMatrixd p(3, 1);
    p.col(0) = cols[0];
    CHECK(std::abs(trace.total - capacity_direct(chan.h, p, 3.0)) < 1e-10);
}

TEST_CASE("capacity_trace: zero columns give zero increments") {
    const CMatrixd h = CMatrixd::Identity(4, 4);
    const std::vector<CVectord> cols(2, CVectord::Zero(4));
    const auto trace = capacity_trace(h, cols, 10.0);
    for (const double inc : trace.increments) CHECK(inc == 0.0);
    CHECK(trace.total == 0.0);
}

TEST_CASE("capacity_trace: telescopes to capacity_direct") {
    RandomStream rng(308);
    const auto chan = random_channel(rng, 4, 2, 4, 4);
    const auto cols = random_block_columns(rng, 4, 2);
    CMatrixd p(8, 4);
    for (int c = 0; c < 4; ++c) p.col(c) = cols[static_cast<std::size_t>(c)];
    const auto trace = capacity_trace(chan.h, cols, 6.0);
    const double direct = capacity_direct(chan.h, p, 6.0);
    CHECK(std::abs(trace.total - direct) / direct < 1e-8);
}

TEST_CASE("capacity_trace: identity holds across snr extremes and instances") {
    RandomStream rng(309);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = (rep % 2 == 0) ? 2 : 4;
        const int m = (rep % 3 == 0) ? 3 : 2;
        const auto chan = random_channel(rng, n, m, 4, n);
        const auto cols = random_block_columns(rng, n, m);
        CMatrixd p(static_cast<Eigen::Index>(n) * m, n);
        for (int c = 0; c < n; ++c) p.col(c) = cols[static_cast<std::size_t>(c)];
        for (const double snr : {0.01, 1.0, 1000.0}) {
            const auto trace = capacity_trace(chan.h, cols, snr);
            const double direct = capacity_direct(chan.h, p, snr);
            CHECK(std::abs(trace.total - direct) / direct < 1e-6);
            double sum = 0;
            for (const double inc : trace.increments) {
                CHECK(inc >= 0.0);  // monotonicity: PSD quadratic form
                sum += inc;
            }
            CHECK(std::abs(trace.total - sum) <= 1e-9);
        }
    }
}

TEST_CASE("capacity_trace: scheme outputs satisfy the identity too") {
    RandomStream rng(310);
    const auto chan = random_channel(rng, 3, 2, 4, 3);
    for (const double snr : {0.5, 30.0}) {
        const auto hyb = sic_hybrid_precoder(chan.h, 3, 2, snr);
        const auto trace = capacity_trace(chan.h, hyb.columns(), snr);
        const double direct = capacity_direct(chan.h, hyb.assembled, snr);
        CHECK(std::abs(trace.total - direct) / direct < 1e-8);
    }
}
