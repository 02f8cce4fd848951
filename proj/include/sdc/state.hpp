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
 * Target states, shared resource states, their Schmidt analysis and the
 * column-Gram report that decides exact preparability.
 *
 * A target on C^d (x) C^d is stored through its scaled coefficient matrix x:
 *
 *     |psi> = (1/sqrt(d)) sum_{i,j} x(i, j) |i>_A |j>_B,  sum |x(i, j)|^2 = d.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/spectral.hpp"

namespace sdc {

enum class Normalization { unit, scaled };

class TargetState {
  public:
    /// Takes a scaled coefficient matrix; sum |x|^2 must equal d within tol.
    TargetState(ComplexMatrix x, double tol = kDefaultTol) : x_(std::move(x)) {
        if (!x_.square() || x_.rows() == 0) {
            detail::fail(ErrorCode::NotSquare,
                         "coefficient matrix must be d x d with d >= 1");
        }
        const double d = static_cast<double>(x_.rows());
        const double mass = frobenius_norm(x_) * frobenius_norm(x_);
        if (std::abs(mass - d) > tol * d) {
            throw NormalizationError("sum |x|^2 = " + std::to_string(mass) +
                                         ", expected d = " + std::to_string(d),
                                     mass - d);
        }
    }

    /// Rearrangement of an already validated target (row/column
    /// permutations, phases) without re-checking normalization.
    static TargetState rearranged(ComplexMatrix x) {
        return TargetState(std::move(x), Unchecked{});
    }

    [[nodiscard]] std::size_t dim() const noexcept { return x_.rows(); }
    [[nodiscard]] const ComplexMatrix &coefficients() const noexcept {
        return x_;
    }

    /// Amplitudes of |psi> in the product basis, index i * d + j.
    [[nodiscard]] std::vector<Complex> amplitudes() const {
        const double scale = 1.0 / std::sqrt(static_cast<double>(dim()));
        std::vector<Complex> out;
        out.reserve(dim() * dim());
        for (const auto &z : x_.entries()) {
            out.push_back(z * scale);
        }
        return out;
    }

  private:
    struct Unchecked {};
    TargetState(ComplexMatrix x, Unchecked) : x_(std::move(x)) {}

    ComplexMatrix x_;
};

/// sum_k c_k |perm_a[k]>_A |perm_b[k]>_B; identity permutations give the
/// ground-state pairing sum_k c_k |k>|k>. Permutations are 0-based here.
struct SharedState {
    std::vector<Complex> c;
    std::vector<std::size_t> perm_a;
    std::vector<std::size_t> perm_b;

    [[nodiscard]] std::size_t dim() const noexcept { return c.size(); }

    [[nodiscard]] std::vector<double> weights() const {
        std::vector<double> p(c.size());
        std::transform(c.begin(), c.end(), p.begin(),
                       [](Complex z) { return std::norm(z); });
        return p;
    }

    [[nodiscard]] bool canonical() const {
        for (std::size_t k = 0; k < dim(); ++k) {
            if (perm_a[k] != k || perm_b[k] != k) {
                return false;
            }
        }
        return true;
    }
};

inline std::vector<std::size_t> identity_permutation(std::size_t d) {
    std::vector<std::size_t> p(d);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

inline bool is_permutation_of_range(std::span<const std::size_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t v : perm) {
        if (v >= perm.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

/// Validates and builds a shared state. Empty permutations mean identity.
inline SharedState make_shared_state(std::vector<Complex> c,
                                     std::vector<std::size_t> perm_a = {},
                                     std::vector<std::size_t> perm_b = {},
                                     double tol = kDefaultTol) {
    const std::size_t d = c.size();
    if (d == 0) {
        detail::fail(ErrorCode::BadLength, "shared state needs d >= 1");
    }
    if (perm_a.empty()) {
        perm_a = identity_permutation(d);
    }
    if (perm_b.empty()) {
        perm_b = identity_permutation(d);
    }
    if (perm_a.size() != d || perm_b.size() != d) {
        detail::fail(ErrorCode::BadLength,
                     "permutation length differs from shared dimension");
    }
    if (!is_permutation_of_range(perm_a) || !is_permutation_of_range(perm_b)) {
        detail::fail(ErrorCode::BadPermutation,
                     "perm_a and perm_b must be bijections of {0..d-1}");
    }
    double mass = 0.0;
    for (const auto &z : c) {
        if (!is_finite(z)) {
            detail::fail(ErrorCode::NonFinite, "shared amplitudes");
        }
        mass += std::norm(z);
    }
    if (std::abs(mass - 1.0) > tol) {
        throw NormalizationError("sum |c|^2 = " + std::to_string(mass), mass - 1.0);
    }
    return SharedState{std::move(c), std::move(perm_a), std::move(perm_b)};
}

/// Shared state with real amplitudes sqrt(p_k) on the ground-state pairing.
inline SharedState shared_from_weights(std::span<const double> p,
                                       double tol = kDefaultTol) {
    std::vector<Complex> c(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        c[k] = std::sqrt(std::max(p[k], 0.0));
    }
    return make_shared_state(std::move(c), {}, {}, tol);
}

inline SharedState maximally_entangled(std::size_t d) {
    return SharedState{
        std::vector<Complex>(d, Complex{1.0 / std::sqrt(static_cast<double>(d)), 0.0}),
        identity_permutation(d), identity_permutation(d)};
}

struct SchmidtForm {
    std::vector<double> lambdas; ///< length d, descending, zeros kept
    ComplexMatrix basis_a;       ///< column i is |e_i>
    ComplexMatrix basis_b;       ///< column i is |f_i>

    /// Scaled coefficient matrix sqrt(d) * sum_i lambda_i |e_i><f_i^*|.
    [[nodiscard]] ComplexMatrix reconstruct_coefficients() const {
        const std::size_t d = lambdas.size();
        ComplexMatrix x(d, d);
        const double scale = std::sqrt(static_cast<double>(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Complex s{0.0, 0.0};
                for (std::size_t k = 0; k < d; ++k) {
                    s += basis_a(i, k) * lambdas[k] * basis_b(j, k);
                }
                x(i, j) = scale * s;
            }
        }
        return x;
    }
};

struct GramViolation {
    std::size_t j1; ///< 0-based, j1 < j2
    std::size_t j2;
    Complex gamma;  ///< sum_i conj(x(i, j1)) x(i, j2)
};

struct GramReport {
    ComplexMatrix gram;
    std::vector<double> column_norms; ///< squared column norms a_j
    std::vector<GramViolation> violations;
    bool perfectly_preparable = false;
};

/// Builds a target from d^2 row-major amplitudes. With Normalization::unit
/// the amplitudes are those of |psi> itself and are rescaled by sqrt(d).
inline TargetState target_from_amplitudes(std::size_t d,
                                          std::span<const Complex> amps,
                                          Normalization normalization,
                                          double tol = kDefaultTol) {
    if (d == 0 || amps.size() != d * d) {
        detail::fail(ErrorCode::BadLength,
                     "expected d^2 = " + std::to_string(d * d) +
                         " amplitudes, got " + std::to_string(amps.size()));
    }
    double mass = 0.0;
    for (const auto &z : amps) {
        if (!is_finite(z)) {
            detail::fail(ErrorCode::NonFinite, "amplitudes must be finite");
        }
        mass += std::norm(z);
    }
    const double expected =
        normalization == Normalization::unit ? 1.0 : static_cast<double>(d);
    if (std::abs(mass - expected) > tol * expected) {
        throw NormalizationError("sum |amps|^2 = " + std::to_string(mass) +
                                     ", expected " + std::to_string(expected),
                                 std::abs(mass - expected));
    }
    const double scale = normalization == Normalization::unit
                             ? std::sqrt(static_cast<double>(d))
                             : 1.0;
    std::vector<Complex> entries(amps.begin(), amps.end());
    for (auto &z : entries) {
        z *= scale;
    }
    return TargetState(ComplexMatrix(d, d, std::move(entries)), tol);
}

inline SchmidtForm schmidt_decompose(const TargetState &t,
                                     double tol = kSpectralTol) {
    const std::size_t d = t.dim();
    ComplexMatrix m = t.coefficients() *
                      Complex{1.0 / std::sqrt(static_cast<double>(d)), 0.0};
    SvdResult f = svd(m, tol);
    // m = U S V^dagger, so |psi> = sum_k s_k (U e_k) (conj(V) e_k).
    ComplexMatrix basis_b(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            basis_b(i, k) = std::conj(f.v(i, k));
        }
    }
    return SchmidtForm{std::move(f.singular_values), std::move(f.u),
                       std::move(basis_b)};
}

/// Entropy of entanglement in bits.
inline double entanglement_entropy(const SchmidtForm &s) {
    double h = 0.0;
    for (double lambda : s.lambdas) {
        const double p = lambda * lambda;
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return std::max(h, 0.0);
}

inline GramReport column_gram_report(const TargetState &t,
                                     double tol = kDefaultTol) {
    GramReport r;
    r.gram = gram(t.coefficients());
    const std::size_t d = t.dim();
    r.column_norms.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        r.column_norms[j] = r.gram(j, j).real();
    }
    for (std::size_t j1 = 0; j1 < d; ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < d; ++j2) {
            const Complex gamma = r.gram(j1, j2);
            if (std::abs(gamma) > tol) {
                r.violations.push_back({j1, j2, gamma});
            }
        }
    }
    r.perfectly_preparable = r.violations.empty();
    return r;
}

/// x'(i, j) = x(perm_a[i], perm_b[j]): the coefficients seen by a shared
/// state with permuted pairing, expressed in its own ground-state frame.
inline TargetState apply_permutations(const TargetState &t,
                                      const SharedState &s) {
    if (s.dim() != t.dim() || s.perm_a.size() != t.dim() ||
        s.perm_b.size() != t.dim()) {
        detail::fail(ErrorCode::DimensionMismatch,
                     "shared state dimension differs from target");
    }
    ComplexMatrix x = permute_cols(permute_rows(t.coefficients(), s.perm_a),
                                   s.perm_b);
    return TargetState::rearranged(std::move(x));
}

} // namespace sdc
