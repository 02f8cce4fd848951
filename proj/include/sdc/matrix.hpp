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
 * Dense row-major complex matrices and the elementary operations the rest
 * of the library is written against. Sized for small local dimensions
 * (d <= 64); everything is O(d^3) and allocation-light.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdc/error.hpp"

namespace sdc {

using Complex = std::complex<double>;

/// Default tolerance for algebraic predicates (orthogonality, unitarity,
/// normalization).
inline constexpr double kDefaultTol = 1e-9;

inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            detail::fail(ErrorCode::BadLength,
                         "expected " + std::to_string(rows_ * cols_) +
                             " entries, got " + std::to_string(data_.size()));
        }
        for (const auto &z : data_) {
            if (!is_finite(z)) {
                detail::fail(ErrorCode::NonFinite,
                             "matrix entries must be finite");
            }
        }
    }

    /// Row-major nested initializer, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                detail::fail(ErrorCode::BadLength, "ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return data_;
    }

    [[nodiscard]] std::vector<Complex> column(std::size_t j) const {
        std::vector<Complex> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] = (*this)(i, j);
        }
        return out;
    }

    void set_column(std::size_t j, std::span<const Complex> values) {
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, j) = values[i];
        }
    }

    ComplexMatrix &operator*=(Complex s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend bool operator==(const ComplexMatrix &,
                           const ComplexMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        detail::fail(ErrorCode::DimensionMismatch, "matrix sum");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) + b(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a + b * Complex{-1.0, 0.0};
}

inline ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        detail::fail(ErrorCode::DimensionMismatch,
                     "matmul of " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

inline Complex trace(const ComplexMatrix &a) {
    if (!a.square()) {
        detail::fail(ErrorCode::NotSquare, "trace of non-square matrix");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

/// A^dagger A: entry (j1, j2) is the inner product of columns j1 and j2.
inline ComplexMatrix gram(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.cols());
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
        for (std::size_t j2 = j1; j2 < a.cols(); ++j2) {
            Complex s{0.0, 0.0};
            for (std::size_t i = 0; i < a.rows(); ++i) {
                s += std::conj(a(i, j1)) * a(i, j2);
            }
            out(j1, j2) = s;
            out(j2, j1) = std::conj(s);
        }
        out(j1, j1) = out(j1, j1).real();
    }
    return out;
}

inline double frobenius_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (const auto &z : a.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline double frobenius_distance(const ComplexMatrix &a,
                                 const ComplexMatrix &b) {
    return frobenius_norm(a - b);
}

inline bool is_unitary(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!a.square()) {
        detail::fail(ErrorCode::NotSquare, "unitarity of non-square matrix");
    }
    return frobenius_distance(gram(a), ComplexMatrix::identity(a.rows())) <=
           tol;
}

inline bool is_hermitian(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!a.square()) {
        return false;
    }
    return frobenius_distance(a, adjoint(a)) <= tol * frobenius_norm(a);
}

/// Row i of the result is row perm[i] of the input.
inline ComplexMatrix permute_rows(const ComplexMatrix &a,
                                  std::span<const std::size_t> perm) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(perm[i], j);
        }
    }
    return out;
}

/// Column j of the result is column perm[j] of the input.
inline ComplexMatrix permute_cols(const ComplexMatrix &a,
                                  std::span<const std::size_t> perm) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, perm[j]);
        }
    }
    return out;
}

} // namespace sdc
