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

// Test-only generators and independent reference computations. Nothing here
// calls the library's spectral routines.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "sdc/matrix.hpp"
#include "sdc/state.hpp"

namespace sdc::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = random_complex(rng);
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng &rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    return (a + adjoint(a)) * Complex{0.5, 0.0};
}

/// Haar-ish unitary from modified Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, Rng &rng) {
    ComplexMatrix q = random_matrix(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t b = 0; b < j; ++b) {
            Complex proj{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                proj += std::conj(q(i, b)) * q(i, j);
            }
            for (std::size_t i = 0; i < n; ++i) {
                q(i, j) -= proj * q(i, b);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += std::norm(q(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) {
            q(i, j) /= norm;
        }
    }
    return q;
}

/// Rescales m so that sum |m|^2 = d.
inline ComplexMatrix scaled_to_dim(ComplexMatrix m) {
    double mass = 0.0;
    for (const auto &z : m.entries()) {
        mass += std::norm(z);
    }
    return m * Complex{std::sqrt(static_cast<double>(m.rows()) / mass), 0.0};
}

/// Orthonormal columns scaled by positive weights in [0.1, 2].
inline TargetState random_orthogonal_target(std::size_t d, Rng &rng) {
    ComplexMatrix u = random_unitary(d, rng);
    std::uniform_real_distribution<double> w(0.1, 2.0);
    for (std::size_t j = 0; j < d; ++j) {
        const double s = w(rng);
        for (std::size_t i = 0; i < d; ++i) {
            u(i, j) *= s;
        }
    }
    return TargetState(scaled_to_dim(std::move(u)));
}

inline TargetState random_generic_target(std::size_t d, Rng &rng) {
    return TargetState(scaled_to_dim(random_matrix(d, d, rng)));
}

/// Orthogonal-column matrix with columns k1, k2 replaced by a random
/// invertible 2x2 mixture of themselves: exactly one overlapping pair.
struct SingleOverlapTarget {
    TargetState target;
    std::size_t k1;
    std::size_t k2;
};

inline SingleOverlapTarget random_single_overlap_target(std::size_t d, Rng &rng) {
    for (;;) {
        ComplexMatrix u = random_unitary(d, rng);
        std::uniform_real_distribution<double> w(0.3, 2.0);
        for (std::size_t j = 0; j < d; ++j) {
            const double s = w(rng);
            for (std::size_t i = 0; i < d; ++i) {
                u(i, j) *= s;
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        std::size_t k1 = pick(rng);
        std::size_t k2 = pick(rng);
        if (k1 == k2) {
            continue;
        }
        if (k1 > k2) {
            std::swap(k1, k2);
        }
        const Complex a = random_complex(rng), b = random_complex(rng);
        const Complex c = random_complex(rng), e = random_complex(rng);
        const Complex det = a * e - b * c;
        if (std::abs(det) < 0.2) {
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            const Complex u1 = u(i, k1), u2 = u(i, k2);
            u(i, k1) = a * u1 + c * u2;
            u(i, k2) = b * u1 + e * u2;
        }
        // Overlap must be comfortably above the 1e-9 threshold.
        Complex overlap{0.0, 0.0};
        double n1 = 0.0, n2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            overlap += std::conj(u(i, k1)) * u(i, k2);
            n1 += std::norm(u(i, k1));
            n2 += std::norm(u(i, k2));
        }
        if (std::abs(overlap) < 1e-3 * std::sqrt(n1 * n2)) {
            continue;
        }
        return {TargetState(scaled_to_dim(std::move(u))), k1, k2};
    }
}

inline std::vector<std::size_t> random_permutation(std::size_t d, Rng &rng) {
    std::vector<std::size_t> p(d);
    for (std::size_t i = 0; i < d; ++i) {
        p[i] = i;
    }
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Eigenvalues of a 2x2 Hermitian matrix, descending: (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2).
inline std::array<double, 2> eig2_closed_form(const ComplexMatrix &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return {0.5 * (a + d) + r, 0.5 * (a + d) - r};
}

/// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial
/// (trigonometric form of the cubic's three real roots), descending.
inline std::array<double, 3> eig3_closed_form(const ComplexMatrix &m) {
    const double a = m(0, 0).real(), b = m(1, 1).real(), c = m(2, 2).real();
    const Complex x = m(0, 1), y = m(0, 2), z = m(1, 2);
    // det(lambda I - M) = lambda^3 - c2 lambda^2 + c1 lambda - c0
    const double c2 = a + b + c;
    const double c1 = a * b + a * c + b * c - std::norm(x) - std::norm(y) - std::norm(z);
    const double c0 = a * b * c + 2.0 * (x * z * std::conj(y)).real() - a * std::norm(z) -
                      b * std::norm(y) - c * std::norm(x);
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
    std::array<double, 3> roots{};
    if (std::abs(p) < 1e-300) {
        roots = {shift, shift, shift};
    } else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots[k] = shift + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

/// Largest eigenvalue of a PSD matrix by power iteration.
inline double power_iteration_top(const ComplexMatrix &m, int iterations = 5000) {
    const std::size_t n = m.rows();
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = Complex{1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i)};
    }
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<Complex> w(n, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                w[i] += m(i, j) * v[j];
            }
        }
        double norm = 0.0;
        for (const auto &z : w) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            return 0.0;
        }
        lambda = norm;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / norm;
        }
    }
    return lambda;
}

/// Success probability for the all-equal target at weights p. Y^dagger Y is
/// rank one there, so its norm is its trace: sum_j a_j / (d p_j), a_j = 1.
inline double uniform_target_probability(std::span<const double> p) {
    const double d = static_cast<double>(p.size());
    double s = 0.0;
    for (double pj : p) {
        if (pj <= 0.0) {
            return 0.0;
        }
        s += 1.0 / (d * pj);
    }
    return 1.0 / s;
}

inline TargetState uniform_target(std::size_t d) {
    ComplexMatrix x(d, d);
    const double v = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            x(i, j) = v;
        }
    }
    return TargetState(std::move(x));
}

/// (A (x) I) applied to a d^2 vector, written out with the explicit
/// Kronecker product matrix.
inline std::vector<Complex> kron_apply(const ComplexMatrix &a, std::span<const Complex> v) {
    const std::size_t d = a.rows();
    const std::size_t n = d * d;
    std::vector<Complex> out(n, Complex{0.0, 0.0});
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            const std::size_t i = row / d, j = row % d;
            const std::size_t a_idx = col / d, b_idx = col % d;
            const Complex k = (j == b_idx) ? a(i, a_idx) : Complex{0.0, 0.0};
            out[row] += k * v[col];
        }
    }
    return out;
}

} // namespace sdc::testing
