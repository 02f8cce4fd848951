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
 * Command dispatch for the `sdc` tool, kept separate from argument parsing so
 * it can be driven directly from tests.
 *
 * Exit codes: 0 success, 1 input or parse error, 2 infeasible input or
 * violated precondition, 3 numerical convergence failure.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "sdc/dense_coding.hpp"
#include "sdc/error.hpp"
#include "sdc/optimizer.hpp"
#include "sdc/protocol_sim.hpp"
#include "sdc/report.hpp"
#include "sdc/state.hpp"

namespace sdc::cli {

enum class OutputFormat { json, text };

inline constexpr std::array<std::string_view, 7> kCommands = {
    "analyze", "plan", "baseline", "bound", "schmidt", "simulate", "optimize"};

struct CommandOptions {
    std::string command;
    std::string input;
    double tol = kDefaultTol;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    OptimizerMethod method = OptimizerMethod::nelder_mead;
    std::uint64_t budget = 20000;
    std::optional<std::pair<std::size_t, std::size_t>> pair; ///< 1-based
    OutputFormat output = OutputFormat::json;
    std::optional<std::string> shared;
};

struct DispatchResult {
    int exit_code = 0;
    std::string out; ///< report, for standard output
    std::string err; ///< diagnostics, for standard error
};

inline int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::BadLength:
    case ErrorCode::NotNormalized:
    case ErrorCode::NonFinite:
    case ErrorCode::BadPermutation:
    case ErrorCode::NotSquare:
    case ErrorCode::InvalidArgument:
        return 1;
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::NotHermitian:
    case ErrorCode::NegativeEigenvalue:
        return 3;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InfeasibleShared:
    case ErrorCode::NotSingleViolation:
    case ErrorCode::ZeroColumn:
    case ErrorCode::ZeroOperator:
    case ErrorCode::ZeroProbabilityBranch:
    case ErrorCode::DimensionTooLarge:
        return 2;
    }
    return 1;
}

namespace detail {

inline void render_text(std::ostream &os, const std::string &prefix, const json &v) {
    if (v.is_object()) {
        for (const auto &[key, value] : v.items()) {
            render_text(os, prefix.empty() ? key : prefix + "." + key, value);
        }
        return;
    }
    os << prefix << ": " << v.dump() << '\n';
}

inline json run_payload(const CommandOptions &opt, const TargetState &t) {
    const std::string &cmd = opt.command;
    if (cmd == "analyze") {
        return to_json(decide_perfect(t, opt.tol));
    }
    if (cmd == "plan") {
        return to_json(construct_plan(t, opt.tol));
    }
    if (cmd == "baseline") {
        const double maximal = maximal_baseline(t, opt.tol);
        const PreparationPlan plan = construct_plan(t, opt.tol);
        return {{"maximal_baseline", maximal},
                {"column_weight_plan", plan.success_prob},
                {"plan_is_perfect", plan.is_perfect}};
    }
    if (cmd == "bound") {
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        if (opt.pair) {
            if (opt.pair->first == 0 || opt.pair->second == 0) {
                sdc::detail::fail(ErrorCode::InvalidArgument, "--pair is 1-based");
            }
            pair = std::make_pair(opt.pair->first - 1, opt.pair->second - 1);
        }
        return to_json(prop2_bound(t, opt.tol, pair));
    }
    if (cmd == "schmidt") {
        const SchmidtForm s = schmidt_decompose(t);
        return to_json(s, entanglement_entropy(s));
    }
    if (cmd == "simulate") {
        const PreparationPlan plan =
            opt.shared ? plan_for_shared(t, parse_shared_file(*opt.shared, t.dim(), opt.tol), opt.tol)
                       : construct_plan(t, opt.tol);
        const SimulationConfig cfg{opt.trials, opt.seed, opt.tol};
        json payload = to_json(run_protocol(plan, t, cfg), opt.seed);
        payload["shared"] = to_json(plan.shared);
        return payload;
    }
    if (cmd == "optimize") {
        return to_json(optimize_shared(t, opt.method, opt.budget, opt.tol));
    }
    sdc::detail::fail(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
}

} // namespace detail

inline DispatchResult dispatch(const CommandOptions &opt) {
    DispatchResult result;
    try {
        const std::string bytes = read_file(opt.input);
        const TargetState t = parse_state_text(bytes, opt.tol);
        json report = make_report(opt.command, sha256_hex(bytes), detail::run_payload(opt, t));
        std::ostringstream os;
        if (opt.output == OutputFormat::json) {
            os << report.dump(2) << '\n';
        } else {
            detail::render_text(os, "", report);
        }
        result.out = os.str();
    } catch (const NormalizationError &e) {
        std::ostringstream os;
        os << e.what() << " (deviation " << e.deviation() << ")\n";
        result.err = os.str();
        result.exit_code = exit_code_for(e.code());
    } catch (const Error &e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = exit_code_for(e.code());
    } catch (const json::exception &e) {
        result.err = std::string("ParseError: ") + e.what() + "\n";
        result.exit_code = 1;
    }
    return result;
}

} // namespace sdc::cli
