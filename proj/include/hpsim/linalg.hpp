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
// Dense complex kernels: checked product, conjugate transpose, dominant
// eigenpair of a Hermitian PSD matrix, and Cholesky-based HPD solve /
// base-2 log-determinant.

#ifndef HPSIM_LINALG_HPP
#define HPSIM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include "hpsim/types.hpp"

namespace hpsim {

/// Checked matrix product a*b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> matmul(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul", a.rows(), a.cols(), b.rows(), b.cols());
    require_finite(a, "matmul lhs");
    require_finite(b, "matmul rhs");
    return a * b;
}

/// out(i,j) = conj(a(j,i)); applying it twice restores the input bit-exactly.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> conj_transpose(
    const Eigen::MatrixBase<Derived>& a) {
    require_finite(a, "conj_transpose");
    return a.adjoint();
}

template <typename Scalar>
struct EigenPair {
    Scalar value;            // top eigenvalue, >= 0
    CVector<Scalar> vector;  // unit 2-norm, entry of largest modulus real and nonnegative
};

namespace detail {

template <typename Scalar>
struct PowerIterResult {
    Scalar value = 0;
    CVector<Scalar> vector;
    Scalar residual = 0;
    bool converged = false;
};

// Plain power sweep from `start`; when `deflate` is nonempty every iterate is
// reorthogonalized against it, so the sweep targets the complement spectrum.
template <typename Scalar>
PowerIterResult<Scalar> power_sweep(const CMatrix<Scalar>& s, CVector<Scalar> v, Scalar tol, int max_iter,
                                    const CVector<Scalar>* deflate = nullptr) {
    PowerIterResult<Scalar> out;
    v /= v.norm();
    for (int it = 0; it < max_iter; ++it) {
        CVector<Scalar> w = s * v;
        if (deflate) w -= (*deflate) * deflate->dot(w);
        const Scalar lambda = std::real(v.dot(w));
        const Scalar residual = (w - lambda * v).norm();
        out.value = lambda;
        out.vector = v;
        out.residual = residual;
        if (residual <= tol) {
            out.converged = true;
            return out;
        }
        const Scalar wn = w.norm();
        if (wn == Scalar(0)) return out;  // iterate annihilated; caller decides
        v = w / wn;
    }
    return out;
}

template <typename Scalar>
void require_hermitian(const CMatrix<Scalar>& s, Scalar tol, const char* op) {
    if (s.rows() != s.cols())
        throw ShapeError(op, s.rows(), s.cols(), s.cols(), s.rows());
    for (Eigen::Index j = 0; j < s.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
            if (std::abs(s(i, j) - std::conj(s(j, i))) > tol)
                throw ValidationError(std::string(op) + ": input not Hermitian at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
}

// Rotates v by the conjugate phase of its largest-modulus entry (ties broken
// by lowest index), making that entry exactly real and nonnegative, then
// renormalizes. Deterministic for identical input bits.
template <typename Scalar>
void fix_phase(CVector<Scalar>& v) {
    Eigen::Index k = 0;
    Scalar best = std::abs(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const Scalar m = std::abs(v[i]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    if (best == Scalar(0)) return;
    v *= std::conj(v[k]);
    v /= v.norm();
}

}  // namespace detail

/// Dominant eigenpair of a Hermitian PSD matrix by power iteration.
///
/// The start vector is the normalized all-ones vector. That start can be
/// orthogonal to the dominant eigenspace on contrived inputs; a deflated
/// verification sweep detects the miss, in which case the iteration restarts
/// from the first canonical basis vector and the best certified pair wins.
template <typename Derived>
EigenPair<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_top_eigenpair(
    const Eigen::MatrixBase<Derived>& s_in,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10, int max_iter = 10000) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    require_nonempty(s_in, "hermitian_top_eigenpair");
    require_finite(s_in, "hermitian_top_eigenpair");
    const CMatrix<Real> s = s_in;
    detail::require_hermitian<Real>(s, Real(1e-10), "hermitian_top_eigenpair");
    if (tol <= Real(0) || max_iter < 1)
        throw ValidationError("hermitian_top_eigenpair: tol and max_iter must be positive");

    const Eigen::Index n = s.rows();
    auto main = detail::power_sweep<Real>(s, CVector<Real>::Ones(n), tol, max_iter);

    if (n > 1) {
        // Probe the complement of the candidate vector. A larger Rayleigh
        // value there means the all-ones start missed the dominant eigenspace.
        Eigen::Index jmin = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (std::abs(main.vector[i]) < std::abs(main.vector[jmin])) jmin = i;
        CVector<Real> probe0 = CVector<Real>::Zero(n);
        probe0[jmin] = 1;
        probe0 -= main.vector * std::conj(main.vector[jmin]);
        if (probe0.norm() > Real(1e-8)) {
            auto probe = detail::power_sweep<Real>(s, probe0, tol, std::min(max_iter, 2000), &main.vector);
            if (probe.value > main.value * (1 + Real(1e-9)) + tol) {
                CVector<Real> e1 = CVector<Real>::Zero(n);
                e1[0] = 1;
                auto restarted = detail::power_sweep<Real>(s, e1, tol, max_iter);
                auto polished = detail::power_sweep<Real>(s, probe.vector, tol, max_iter);
                if (restarted.value >= polished.value && restarted.value > main.value) main = restarted;
                else if (polished.value > main.value) main = polished;
            }
        }
    }

    if (!main.converged)
        throw ConvergenceError("hermitian_top_eigenpair: power iteration did not converge after " +
                                   std::to_string(max_iter) + " iterations",
                               static_cast<double>(main.residual));

    detail::fix_phase(main.vector);
    return {std::max(main.value, Real(0)), main.vector};
}

/// Cholesky factor of a Hermitian positive definite matrix. Only the lower
/// triangle of the input is read.
template <typename Scalar>
class CholeskyHpd {
  public:
    template <typename Derived>
    explicit CholeskyHpd(const Eigen::MatrixBase<Derived>& a) : l_(CMatrix<Scalar>::Zero(a.rows(), a.cols())) {
        if (a.rows() != a.cols())
            throw ShapeError("cholesky", a.rows(), a.cols(), a.cols(), a.rows());
        require_nonempty(a, "cholesky");
        require_finite(a, "cholesky");
        const Eigen::Index n = a.rows();
        for (Eigen::Index j = 0; j < n; ++j) {
            const Scalar d = std::real(a(j, j)) - l_.row(j).head(j).squaredNorm();
            if (!(d > Scalar(0)))
                throw DefinitenessError("cholesky: matrix not positive definite", j);
            const Scalar ljj = std::sqrt(d);
            l_(j, j) = ljj;
            if (j + 1 < n)
                l_.col(j).tail(n - j - 1) =
                    (a.derived().col(j).tail(n - j - 1).template cast<std::complex<Scalar>>() -
                     l_.bottomLeftCorner(n - j - 1, j) * l_.row(j).head(j).adjoint()) /
                    ljj;
        }
    }

    const CMatrix<Scalar>& matrix_l() const { return l_; }

    /// X with A X = B via the two triangular solves.
    template <typename Derived>
    CMatrix<Scalar> solve(const Eigen::MatrixBase<Derived>& b) const {
        if (b.rows() != l_.rows())
            throw ShapeError("cholesky solve", l_.rows(), l_.cols(), b.rows(), b.cols());
        CMatrix<Scalar> y = l_.template triangularView<Eigen::Lower>().solve(b);
        return l_.template triangularView<Eigen::Lower>().adjoint().solve(y);
    }

    /// log2 det(A) = 2 * sum_j log2 l_jj; the determinant itself is never formed.
    Scalar logdet2() const {
        Scalar acc = 0;
        for (Eigen::Index j = 0; j < l_.rows(); ++j) acc += std::log2(std::real(l_(j, j)));
        return 2 * acc;
    }

  private:
    CMatrix<Scalar> l_;
};

/// X with a X = b for Hermitian positive definite a.
template <typename DerivedA, typename DerivedB>
CMatrix<typename Eigen::NumTraits<typename DerivedA::Scalar>::Real> solve_hpd(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Real = typename Eigen::NumTraits<typename DerivedA::Scalar>::Real;
    require_finite(b, "solve_hpd rhs");
    if (a.rows() != b.rows())
        throw ShapeError("solve_hpd", a.rows(), a.cols(), b.rows(), b.cols());
    return CholeskyHpd<Real>(a).solve(b);
}

/// log2 det(a) for Hermitian positive definite a.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real logdet2_hpd(const Eigen::MatrixBase<Derived>& a) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return CholeskyHpd<Real>(a).logdet2();
}

}  // namespace hpsim

#endif  // HPSIM_LINALG_HPP
