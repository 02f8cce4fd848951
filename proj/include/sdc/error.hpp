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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdc {

enum class ErrorCode {
    DimensionMismatch,
    NotSquare,
    NotHermitian,
    NonFinite,
    ConvergenceFailure,
    BadLength,
    NotNormalized,
    BadPermutation,
    InfeasibleShared,
    NotSingleViolation,
    ZeroColumn,
    ZeroOperator,
    NegativeEigenvalue,
    ZeroProbabilityBranch,
    DimensionTooLarge,
    InvalidArgument,
    IoError,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::InfeasibleShared: return "InfeasibleShared";
    case ErrorCode::NotSingleViolation: return "NotSingleViolation";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Error that additionally reports how far a quantity was from its
/// required value (used for normalization failures).
class NormalizationError : public Error {
  public:
    NormalizationError(const std::string &message, double deviation)
        : Error(ErrorCode::NotNormalized, message), deviation_(deviation) {}

    [[nodiscard]] double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

namespace detail {
[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}
} // namespace detail

} // namespace sdc
