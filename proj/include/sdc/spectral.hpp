// Copyright 2026 The sdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Spectral routines on ComplexMatrix: a cyclic Jacobi eigensolver for
 * Hermitian matrices, and the spectral norm and SVD built on top of it.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/matrix.hpp"

namespace sdc {

/// Convergence target used when the library calls its own spectral
/// routines. Kept well below kDefaultTol so predicates evaluated on
/// eigenvalues are not polluted by solver slack.
inline constexpr double kSpectralTol = 1e-13;

inline constexpr int kJacobiSweepBudget = 100;

struct HermitianEigenResult {
    std::vector<double> values; ///< descending
    ComplexMatrix vectors;      ///< column k pairs with values[k]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p) {
        for (std::size_t q = 0; q < a.cols(); ++q) {
            if (p != q) {
                s += std::norm(a(p, q));
            }
        }
    }
    return std::sqrt(s);
}

// Annihilates a(p, q) with the unitary U = diag(1, conj(phase)) * R(theta)
// acting on the (p, q) plane, applied as A <- U^dagger A U, V <- V U.
inline void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p,
                          std::size_t q) {
    const Complex apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) {
        return;
    }
    const Complex phase = std::conj(apq) / g;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * g);
    double t;
    if (std::abs(tau) > 1e150) {
        t = 0.5 / tau;
    } else {
        t = (tau >= 0.0 ? 1.0 : -1.0) /
            (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * phase;
    const Complex u_qq = c * phase;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
}

inline double column_norm(const ComplexMatrix &m, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += std::norm(m(i, j));
    }
    return std::sqrt(s);
}

// Removes from column j of m its components along the given orthonormal
// columns (two passes) and returns the remaining norm.
inline double orthogonalize_against(ComplexMatrix &m, std::size_t j,
                                             std::span<const std::size_t> basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t b : basis) {
            Complex proj{0.0, 0.0};
            for (std::size_t i = 0; i < m.rows(); ++i) {
                proj += std::conj(m(i, b)) * m(i, j);
            }
            for (std::size_t i = 0; i < m.rows(); ++i) {
                m(i, j) -= proj * m(i, b);
            }
        }
    }
    return column_norm(m, j);
}

} // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Converged once the off-diagonal Frobenius mass is at most tol * ||A||_F.
/// Eigenpairs are ordered by descending value; equal values keep their
/// diagonal position order.
inline HermitianEigenResult hermitian_eig(const ComplexMatrix &input,
                                          double tol = kSpectralTol) {
    if (!input.square()) {
        detail::fail(ErrorCode::NotSquare, "hermitian_eig needs a square matrix");
    }
    for (const auto &z : input.entries()) {
        if (!is_finite(z)) {
            detail::fail(ErrorCode::NonFinite, "hermitian_eig input");
        }
    }
    const double norm = frobenius_norm(input);
    const ComplexMatrix herm_dev = input - adjoint(input);
    if (frobenius_norm(herm_dev) > tol * norm) {
        detail::fail(ErrorCode::NotHermitian,
                     "||A - A^dagger||_F exceeds tol * ||A||_F");
    }

    const std::size_t n = input.rows();
    ComplexMatrix a = (input + adjoint(input)) * Complex{0.5, 0.0};
    ComplexMatrix v = ComplexMatrix::identity(n);

    bool converged = norm == 0.0;
    for (int sweep = 0; sweep < kJacobiSweepBudget && !converged; ++sweep) {
        if (detail::off_diagonal_norm(a) <= tol * norm) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, p, q);
            }
        }
    }
    if (!converged && detail::off_diagonal_norm(a) > tol * norm) {
        detail::fail(ErrorCode::ConvergenceFailure,
                     "Jacobi sweep budget exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) {
                         return a(l, l).real() > a(r, r).real();
                     });

    HermitianEigenResult result;
    result.values.reserve(n);
    result.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.values.push_back(a(order[k], order[k]).real());
        for (std::size_t i = 0; i < n; ++i) {
            result.vectors(i, k) = v(i, order[k]);
        }
    }
    return result;
}

/// Largest singular value: sqrt of the top eigenvalue of A^dagger A.
inline double spectral_norm(const ComplexMatrix &a, double tol = kSpectralTol) {
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    const ComplexMatrix g =
        a.rows() < a.cols() ? gram(adjoint(a)) : gram(a);
    const auto eig = hermitian_eig(g, tol);
    return std::sqrt(std::max(eig.values.front(), 0.0));
}

struct SvdResult {
    ComplexMatrix u;
    std::vector<double> singular_values; ///< descending, nonnegative
    ComplexMatrix v;
};

/// A = U diag(S) V^dagger for square A. Right vectors come from the
/// eigenbasis of A^dagger A; left vectors are A v_k / s_k, and columns with
/// s_k <= tol * s_max are completed to an orthonormal basis.
inline SvdResult svd(const ComplexMatrix &a, double tol = kSpectralTol) {
    if (!a.square()) {
        detail::fail(ErrorCode::NotSquare, "svd is implemented for square input");
    }
    const std::size_t n = a.rows();
    auto eig = hermitian_eig(gram(a), tol);

    SvdResult out;
    out.v = std::move(eig.vectors);
    out.u = matmul(a, out.v);

    // sigma_k = |A v_k| rather than sqrt(lambda_k): a null direction then
    // comes out at rounding level of |A| instead of its square root.
    out.singular_values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double s = detail::column_norm(out.u, k);
        if (k > 0) {
            s = std::min(s, out.singular_values[k - 1]);
        }
        out.singular_values[k] = s;
    }
    const double s_max = n == 0 ? 0.0 : out.singular_values.front();
    std::vector<std::size_t> done;
    std::vector<std::size_t> pending;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = out.singular_values[k];
        if (s_max > 0.0 && s > tol * s_max) {
            const double r = detail::orthogonalize_against(out.u, k, done);
            for (std::size_t i = 0; i < n; ++i) {
                out.u(i, k) /= r;
            }
            done.push_back(k);
        } else {
            pending.push_back(k);
        }
    }

    // Completion: for each missing column pick the canonical basis vector
    // with the largest residual against what is already in place.
    for (std::size_t k : pending) {
        std::size_t best_axis = 0;
        double best_norm = -1.0;
        for (std::size_t axis = 0; axis < n; ++axis) {
            for (std::size_t i = 0; i < n; ++i) {
                out.u(i, k) = i == axis ? 1.0 : 0.0;
            }
            const double r = detail::orthogonalize_against(out.u, k, done);
            if (r > best_norm + 1e-12) {
                best_norm = r;
                best_axis = axis;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.u(i, k) = i == best_axis ? 1.0 : 0.0;
        }
        const double r = detail::orthogonalize_against(out.u, k, done);
        for (std::size_t i = 0; i < n; ++i) {
            out.u(i, k) /= r;
        }
        done.push_back(k);
    }
    return out;
}

/// Reassembles U diag(S) V^dagger.
inline ComplexMatrix reconstruct(const SvdResult &f) {
    ComplexMatrix us = f.u;
    for (std::size_t i = 0; i < us.rows(); ++i) {
        for (std::size_t k = 0; k < us.cols(); ++k) {
            us(i, k) *= f.singular_values[k];
        }
    }
    return matmul(us, adjoint(f.v));
}

} // namespace sdc
