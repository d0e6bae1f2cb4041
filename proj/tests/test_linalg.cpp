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

#include <Eigen/Eigenvalues>

#include "hpsim/linalg.hpp"
#include "test_support.hpp"

using namespace hpsim;
using hpsim::test::random_hpd;
using hpsim::test::random_matrix;
using hpsim::test::random_unit_vector;

namespace {
const Complexd kJ{0.0, 1.0};
}

TEST_CASE("matmul: identity passes operand through unchanged") {
    RandomStream rng(1);
    const CMatrixd a = random_matrix(rng, 2, 5);
    const CMatrixd out = matmul(CMatrixd(CMatrixd::Identity(2, 2)), a);
    CHECK(out == a);
}

TEST_CASE("matmul: hand case with j*j = -1") {
    CMatrixd a(2, 2), b(2, 1);
    a << 1.0, kJ, 0.0, 1.0;
    b << 1.0, kJ;
    const CMatrixd out = matmul(a, b);
    CHECK(out(0, 0) == Complexd(0.0, 0.0));
    CHECK(out(1, 0) == kJ);
}

TEST_CASE("matmul: matches the triple-loop oracle entrywise") {
    RandomStream rng(2);
    const CMatrixd a = random_matrix(rng, 3, 4);
    const CMatrixd b = random_matrix(rng, 4, 2);
    const CMatrixd expected = test::naive_matmul(a, b);
    const CMatrixd got = matmul(a, b);
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("matmul: shape mismatch names both shapes") {
    RandomStream rng(3);
    const CMatrixd a = random_matrix(rng, 2, 3);
    const CMatrixd b = random_matrix(rng, 2, 2);
    try {
        matmul(a, b);
        FAIL("expected ShapeError");
    } catch (const ShapeError& e) {
        const std::string what = e.what();
        CHECK(what.find("2x3") != std::string::npos);
        CHECK(what.find("2x2") != std::string::npos);
    }
}

TEST_CASE("matmul: rejects non-finite entries") {
    CMatrixd a = CMatrixd::Identity(2, 2);
    a(0, 1) = Complexd(std::nan(""), 0.0);
    CHECK_THROWS_AS(matmul(a, CMatrixd(CMatrixd::Identity(2, 2))), ValidationError);
}

TEST_CASE("matmul: associativity on random triples") {
    RandomStream rng(4);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrixd a = random_matrix(rng, 3, 5);
        const CMatrixd b = random_matrix(rng, 5, 4);
        const CMatrixd c = random_matrix(rng, 4, 6);
        const CMatrixd left = matmul(matmul(a, b), c);
        const CMatrixd right = matmul(a, matmul(b, c));
        CHECK((left - right).norm() / right.norm() < 1e-10);
    }
}

TEST_CASE("conj_transpose: scalar, symmetry and involution") {
    CMatrixd a(1, 1);
    a << Complexd(1.0, 1.0);
    CHECK(conj_transpose(a)(0, 0) == Complexd(1.0, -1.0));

    CMatrixd d = CMatrixd::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    d(2, 2) = 0.5;
    CHECK(conj_transpose(d) == d);

    RandomStream rng(5);
    const CMatrixd r = random_matrix(rng, 3, 2);
    CHECK(conj_transpose(conj_transpose(r)) == r);  // bit-exact involution
}

TEST_CASE("hermitian_top_eigenpair: diagonal case") {
    CMatrixd s = CMatrixd::Zero(2, 2);
    s(0, 0) = 4.0;
    s(1, 1) = 1.0;
    const auto [lambda, v] = hermitian_top_eigenpair(s);
    CHECK(lambda == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(std::abs(v[0] - 1.0) < 1e-9);
    CHECK(std::abs(v[1]) < 1e-9);
}

TEST_CASE("hermitian_top_eigenpair: analytic 2x2") {
    CMatrixd s(2, 2);
    s << 2.0, 1.0, 1.0, 2.0;
    const auto [lambda, v] = hermitian_top_eigenpair(s);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(v[0] - inv_sqrt2) < 1e-12);
    CHECK(std::abs(v[1] - inv_sqrt2) < 1e-12);
}

TEST_CASE("hermitian_top_eigenpair: random PSD matches a dense eigensolver") {
    RandomStream rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrixd s = random_hpd(rng, 8);
        const auto [lambda, v] = hermitian_top_eigenpair(s);
        Eigen::SelfAdjointEigenSolver<CMatrixd> es(s);
        const double ref = es.eigenvalues().maxCoeff();
        CHECK(std::abs(lambda - ref) / ref < 1e-8);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        CHECK((s * v - lambda * v).norm() <= 1e-10);
    }
}

TEST_CASE("hermitian_top_eigenpair: Rayleigh quotient and maximality") {
    RandomStream rng(7);
    const CMatrixd s = random_hpd(rng, 6);
    const auto [lambda, v] = hermitian_top_eigenpair(s);
    const Complexd rq = v.dot(s * v);
    CHECK(std::abs(rq.real() - lambda) <= 1e-10);
    for (int rep = 0; rep < 100; ++rep) {
        const CVectord u = random_unit_vector(rng, 6);
        CHECK(lambda >= u.dot(s * u).real() - 1e-8 * lambda);
    }
}

TEST_CASE("hermitian_top_eigenpair: phase convention and bit determinism") {
    RandomStream rng(8);
    const CMatrixd s = random_hpd(rng, 5);
    const auto first = hermitian_top_eigenpair(s);
    const auto second = hermitian_top_eigenpair(s);
    CHECK(first.value == second.value);
    CHECK(first.vector == second.vector);  // bit-identical

    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < 5; ++i)
        if (std::abs(first.vector[i]) > std::abs(first.vector[k])) k = i;
    CHECK(first.vector[k].imag() == 0.0);
    CHECK(first.vector[k].real() >= 0.0);
}

TEST_CASE("hermitian_top_eigenpair: all-ones start orthogonal to the dominant eigenspace") {
    // v1 = [1,-1]/sqrt(2), exactly orthogonal to the all-ones start.
    CMatrixd s(2, 2);
    s << 2.0, -1.0, -1.0, 2.0;
    const auto [lambda, v] = hermitian_top_eigenpair(s);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(lambda == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(v[0] - inv_sqrt2) < 1e-9);
    CHECK(std::abs(v[1] + inv_sqrt2) < 1e-9);
}

TEST_CASE("hermitian_top_eigenpair: degenerate spectrum accepts any unit vector, deterministically") {
    const CMatrixd s = 3.0 * CMatrixd::Identity(4, 4);
    const auto [lambda, v] = hermitian_top_eigenpair(s);
    CHECK(lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK((s * v - lambda * v).norm() <= 1e-10);
    CHECK(hermitian_top_eigenpair(s).vector == v);
}

TEST_CASE("hermitian_top_eigenpair: scalar and zero matrices") {
    CMatrixd s(1, 1);
    s << 5.0;
    const auto one = hermitian_top_eigenpair(s);
    CHECK(one.value == doctest::Approx(5.0));
    CHECK(std::abs(one.vector[0] - 1.0) < 1e-14);

    const auto zero = hermitian_top_eigenpair(CMatrixd(CMatrixd::Zero(3, 3)));
    CHECK(zero.value == 0.0);
    CHECK(std::abs(zero.vector.norm() - 1.0) < 1e-12);
}

TEST_CASE("hermitian_top_eigenpair: non-Hermitian input is rejected") {
    CMatrixd s(2, 2);
    s << 1.0, Complexd(0.0, 1e-6), 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_top_eigenpair(s), ValidationError);
}

TEST_CASE("hermitian_top_eigenpair: iteration budget exhaustion carries the residual") {
    CMatrixd s = CMatrixd::Zero(2, 2);
    s(0, 0) = 4.0;
    s(1, 1) = 1.0;
    try {
        hermitian_top_eigenpair(s, 1e-14, 2);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.last_residual > 0.0);
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
}

TEST_CASE("solve_hpd: identity and diagonal cases") {
    RandomStream rng(9);
    const CMatrixd b = random_matrix(rng, 4, 3);
    CHECK(solve_hpd(CMatrixd(CMatrixd::Identity(4, 4)), b) == b);

    CMatrixd a = CMatrixd::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 4.0;
    CMatrixd rhs(2, 1);
    rhs << 2.0, 8.0;
    const CMatrixd x = solve_hpd(a, rhs);
    CHECK(std::abs(x(0, 0) - Complexd(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(x(1, 0) - Complexd(2.0, 0.0)) < 1e-14);
}

TEST_CASE("solve_hpd: residual on a well-conditioned random system") {
    RandomStream rng(10);
    const CMatrixd a = random_hpd(rng, 6) + 6.0 * CMatrixd::Identity(6, 6);
    const CMatrixd b = random_matrix(rng, 6, 3);
    const CMatrixd x = solve_hpd(a, b);
    CHECK((a * x - b).norm() < 1e-10);
    CHECK((a * x - b).norm() <= 1e-8 * b.norm());
}

TEST_CASE("solve_hpd: non-positive pivot is named") {
    CMatrixd a = CMatrixd::Identity(3, 3);
    a(1, 1) = -1.0;
    const CMatrixd b = CMatrixd::Ones(3, 1);
    try {
        solve_hpd(a, b);
        FAIL("expected DefinitenessError");
    } catch (const DefinitenessError& e) {
        CHECK(e.pivot == 1);
        CHECK(std::string(e.what()).find("pivot 1") != std::string::npos);
    }
    CHECK_THROWS_AS(solve_hpd(a, CMatrixd(CMatrixd::Ones(2, 1))), ShapeError);
}

TEST_CASE("logdet2_hpd: identity, diagonal, rank-one update") {
    CHECK(logdet2_hpd(CMatrixd(CMatrixd::Identity(5, 5))) == 0.0);

    CMatrixd d = CMatrixd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    CHECK(logdet2_hpd(d) == doctest::Approx(3.0).epsilon(1e-14));

    // det(I + rho u u^H) = 1 + rho ||u||^2 with ||u||^2 = 5, rho = 100.
    CVectord u(4);
    u << 1.0, kJ, 1.0, std::sqrt(2.0);
    const CMatrixd a = CMatrixd::Identity(4, 4) + 100.0 * (u * u.adjoint());
    CHECK(logdet2_hpd(a) == doctest::Approx(std::log2(501.0)).epsilon(1e-10));

    CMatrixd bad = CMatrixd::Zero(2, 2);
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(logdet2_hpd(bad), DefinitenessError);
}

TEST_CASE("logdet2_hpd: log-det of the inverse cancels") {
    RandomStream rng(11);
    const CMatrixd a = random_hpd(rng, 5) + 5.0 * CMatrixd::Identity(5, 5);
    const CMatrixd inv = solve_hpd(a, CMatrixd(CMatrixd::Identity(5, 5)));
    CHECK(std::abs(logdet2_hpd(a) + logdet2_hpd(inv)) < 1e-8);
}

TEST_CASE("cholesky factor reproduces the matrix") {
    RandomStream rng(12);
    const CMatrixd a = random_hpd(rng, 7);
    CholeskyHpd<double> chol(a);
    const CMatrixd l = chol.matrix_l();
    CHECK((l * l.adjoint() - a).norm() / a.norm() < 1e-12);
}
