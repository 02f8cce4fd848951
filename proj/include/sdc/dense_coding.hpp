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
 * Exact preparation of a bipartite target by superdense coding of quantum
 * states over a ground-state shared resource.
 *
 * Alice and Bob share sum_k c_k |g_k>|h_k>. Alice applies an operation Y to
 * her half, realised probabilistically by the two-outcome measurement
 *
 *     E0 = Y / ||Y||,   E1 = sqrt(I - E0^dagger E0),
 *
 * and sends it to Bob. Outcome 0 leaves (Y (x) I) sum_k c_k |g_k>|h_k>, which
 * equals |psi> exactly iff c_k Y(i, g_k) = x(i, h_k) / sqrt(d) for all i, k.
 * Under that constraint the probability of outcome 0 is 1 / ||Y^dagger Y||.
 *
 * A target is preparable with certainty by some ground-state resource iff
 * the columns of x are mutually orthogonal; the weights |c_j|^2 = a_j / d
 * (a_j the squared column norms) then make Y unitary.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/spectral.hpp"
#include "sdc/state.hpp"

namespace sdc {

struct KrausPair {
    ComplexMatrix e0;
    ComplexMatrix e1;
};

struct PreparationPlan {
    SharedState shared;
    ComplexMatrix y; ///< sender operation in the computational basis
    KrausPair kraus;
    double success_prob = 0.0;
    bool is_perfect = false;
    std::vector<std::size_t> free_columns; ///< columns of y not fixed by the target
};

struct Prop2Report {
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    Complex gamma;
    double bound = 0.0;
    std::vector<double> spectrum;           ///< eigenvalues of y^dagger y, descending
    std::vector<double> predicted_spectrum; ///< 1 (d-2 times), 1 +- |gamma| / (d |c_k1 c_k2|)
    double achieved = 0.0;
};

/// Verdict: exact preparation with probability one is possible
/// iff no two distinct columns of x overlap.
inline GramReport decide_perfect(const TargetState &t, double tol = kDefaultTol) {
    return column_gram_report(t, tol);
}

/// The resource weights |c_j|^2 = a_j / d.
inline std::vector<double> column_weights(const TargetState &t) {
    const std::size_t d = t.dim();
    const ComplexMatrix &x = t.coefficients();
    std::vector<double> p(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            p[j] += std::norm(x(i, j));
        }
        p[j] /= static_cast<double>(d);
    }
    return p;
}

inline KrausPair kraus_from_operation(const ComplexMatrix &y,
                                      double tol = kDefaultTol) {
    if (!y.square()) {
        detail::fail(ErrorCode::NotSquare, "sender operation must be square");
    }
    const double norm = spectral_norm(y);
    if (norm == 0.0) {
        detail::fail(ErrorCode::ZeroOperator, "cannot normalise a zero operation");
    }
    KrausPair k;
    k.e0 = y * Complex{1.0 / norm, 0.0};
    const std::size_t d = y.rows();
    const ComplexMatrix rest = ComplexMatrix::identity(d) - gram(k.e0);
    const auto eig = hermitian_eig(rest);
    k.e1 = ComplexMatrix(d, d);
    for (std::size_t m = 0; m < d; ++m) {
        double lambda = eig.values[m];
        if (lambda < -tol) {
            detail::fail(ErrorCode::NegativeEigenvalue,
                         "I - E0^dagger E0 has eigenvalue " + std::to_string(lambda));
        }
        const double root = std::sqrt(std::max(lambda, 0.0));
        if (root == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                k.e1(i, j) += root * eig.vectors(i, m) * std::conj(eig.vectors(j, m));
            }
        }
    }
    return k;
}

namespace detail {

struct SenderOperation {
    ComplexMatrix y;
    std::vector<std::size_t> free_columns;
};

inline bool column_is_zero(const ComplexMatrix &x, std::size_t j) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (x(i, j) != Complex{0.0, 0.0}) {
            return false;
        }
    }
    return true;
}

// Fills the listed columns of y with unit vectors orthogonal to each other
// and to the span of every other column.
inline void complete_free_columns(ComplexMatrix &y,
                                  std::span<const std::size_t> free_cols) {
    const std::size_t d = y.rows();
    if (free_cols.empty()) {
        return;
    }
    ComplexMatrix q(d, 2 * d);
    std::vector<std::size_t> basis;
    std::vector<bool> is_free(d, false);
    for (std::size_t j : free_cols) {
        is_free[j] = true;
    }
    std::size_t slot = 0;
    for (std::size_t j = 0; j < d; ++j) {
        if (is_free[j]) {
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            q(i, slot) = y(i, j);
        }
        const double before = column_norm(q, slot);
        const double r = orthogonalize_against(q, slot, basis);
        if (r > 1e-10 * std::max(before, 1.0)) {
            for (std::size_t i = 0; i < d; ++i) {
                q(i, slot) /= r;
            }
            basis.push_back(slot++);
        }
    }
    for (std::size_t j : free_cols) {
        std::size_t best_axis = 0;
        double best = -1.0;
        for (std::size_t axis = 0; axis < d; ++axis) {
            for (std::size_t i = 0; i < d; ++i) {
                q(i, slot) = i == axis ? 1.0 : 0.0;
            }
            const double r = orthogonalize_against(q, slot, basis);
            if (r > best + 1e-12) {
                best = r;
                best_axis = axis;
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            q(i, slot) = i == best_axis ? 1.0 : 0.0;
        }
        const double r = orthogonalize_against(q, slot, basis);
        for (std::size_t i = 0; i < d; ++i) {
            y(i, j) = q(i, slot) / r;
            q(i, slot) = y(i, j);
        }
        basis.push_back(slot++);
    }
}

// Y(i, g_k) = x(i, h_k) / (sqrt(d) c_k), with c_k = 0 only on zero columns.
inline SenderOperation sender_operation(const TargetState &t,
                                        const SharedState &s) {
    const std::size_t d = t.dim();
    if (s.dim() != d || s.perm_a.size() != d || s.perm_b.size() != d) {
        fail(ErrorCode::DimensionMismatch,
             "shared state dimension differs from target");
    }
    const ComplexMatrix &x = t.coefficients();
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    SenderOperation op{ComplexMatrix(d, d), {}};
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t ya = s.perm_a[k];
        const std::size_t xb = s.perm_b[k];
        if (s.c[k] == Complex{0.0, 0.0}) {
            if (!column_is_zero(x, xb)) {
                fail(ErrorCode::InfeasibleShared,
                     "shared amplitude " + std::to_string(k) +
                         " is zero but target column " + std::to_string(xb) +
                         " is not");
            }
            op.free_columns.push_back(ya);
            continue;
        }
        const Complex scale = 1.0 / (sqrt_d * s.c[k]);
        for (std::size_t i = 0; i < d; ++i) {
            op.y(i, ya) = x(i, xb) * scale;
        }
    }
    std::sort(op.free_columns.begin(), op.free_columns.end());
    complete_free_columns(op.y, op.free_columns);
    return op;
}

inline double inverse_top_eigenvalue(const ComplexMatrix &y) {
    const auto eig = hermitian_eig(gram(y));
    return 1.0 / eig.values.front();
}

} // namespace detail

/// Plan for an arbitrary ground-state resource (permuted pairings allowed).
inline PreparationPlan plan_for_shared(const TargetState &t, const SharedState &s,
                                       double tol = kDefaultTol) {
    auto op = detail::sender_operation(t, s);
    PreparationPlan plan;
    plan.shared = s;
    plan.kraus = kraus_from_operation(op.y, tol);
    plan.success_prob = std::min(detail::inverse_top_eigenvalue(op.y), 1.0);
    plan.is_perfect = plan.success_prob >= 1.0 - tol;
    plan.y = std::move(op.y);
    plan.free_columns = std::move(op.free_columns);
    return plan;
}

/// Resource |c_j|^2 = a_j / d with real nonnegative c_j, and the forced
/// sender operation.
inline PreparationPlan construct_plan(const TargetState &t, double tol = kDefaultTol) {
    const auto weights = column_weights(t);
    std::vector<Complex> c(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        c[j] = std::sqrt(weights[j]);
    }
    const std::size_t d = t.dim();
    return plan_for_shared(
        t, SharedState{std::move(c), identity_permutation(d), identity_permutation(d)},
        tol);
}

/// Probability of exact preparation from resource s. The resource is first
/// brought to the canonical pairing by permuting x, then 1 / ||Y^dagger Y||.
inline double success_probability(const TargetState &t, const SharedState &s,
                                  double /*tol*/ = kDefaultTol) {
    const TargetState canonical = apply_permutations(t, s);
    const std::size_t d = t.dim();
    const SharedState ground{s.c, identity_permutation(d), identity_permutation(d)};
    const auto op = detail::sender_operation(canonical, ground);
    return std::min(detail::inverse_top_eigenvalue(op.y), 1.0);
}

/// Success probability with the maximally entangled resource: 1 / ||x^dagger x||.
inline double maximal_baseline(const TargetState &t, double tol = kDefaultTol) {
    return success_probability(t, maximally_entangled(t.dim()), tol);
}

/// Lower bound for targets whose columns overlap in exactly one pair. With
/// `pair` given, the bound is evaluated for that pair provided no other pair
/// overlaps (an orthogonal pair yields bound 1).
inline Prop2Report prop2_bound(const TargetState &t, double tol = kDefaultTol,
                               std::optional<std::pair<std::size_t, std::size_t>> pair = {}) {
    const GramReport gram_report = column_gram_report(t, tol);
    const std::size_t d = t.dim();
    Prop2Report r;
    if (pair) {
        auto [a, b] = *pair;
        if (a == b || a >= d || b >= d) {
            detail::fail(ErrorCode::InvalidArgument, "pair must name two distinct columns");
        }
        if (a > b) {
            std::swap(a, b);
        }
        for (const auto &v : gram_report.violations) {
            if (v.j1 != a || v.j2 != b) {
                detail::fail(ErrorCode::NotSingleViolation,
                             "columns " + std::to_string(v.j1) + "," +
                                 std::to_string(v.j2) + " also overlap");
            }
        }
        r.k1 = a;
        r.k2 = b;
    } else {
        if (gram_report.violations.size() != 1) {
            detail::fail(ErrorCode::NotSingleViolation,
                         std::to_string(gram_report.violations.size()) +
                             " overlapping column pairs, expected exactly one");
        }
        r.k1 = gram_report.violations.front().j1;
        r.k2 = gram_report.violations.front().j2;
    }
    r.gamma = gram_report.gram(r.k1, r.k2);

    const auto weights = column_weights(t);
    const double c1 = std::sqrt(weights[r.k1]);
    const double c2 = std::sqrt(weights[r.k2]);
    if (c1 == 0.0 || c2 == 0.0) {
        detail::fail(ErrorCode::ZeroColumn, "overlapping column has zero norm");
    }
    const double split = std::abs(r.gamma) / (static_cast<double>(d) * c1 * c2);
    r.bound = 1.0 / (1.0 + split);

    const PreparationPlan plan = construct_plan(t, tol);
    r.spectrum = hermitian_eig(gram(plan.y)).values;
    r.achieved = plan.success_prob;
    r.predicted_spectrum.push_back(1.0 + split);
    for (std::size_t k = 0; k + 2 < d; ++k) {
        r.predicted_spectrum.push_back(1.0);
    }
    r.predicted_spectrum.push_back(1.0 - split);
    return r;
}

} // namespace sdc
