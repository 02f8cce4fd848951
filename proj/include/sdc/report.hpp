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
 * JSON state files and report serialization.
 *
 * State file:
 *
 *     {"d": 2,
 *      "matrix": [[re, im], ...],        // d*d entries, row-major (i, j)
 *      "normalization": "unit"}          // or "scaled"; default "unit"
 *
 * Shared-state file (permutations are 1-based):
 *
 *     {"c": [[re, im], ...], "perm_a": [1, 2, ...], "perm_b": [...]}
 *
 * Complex numbers are always [re, im] arrays. Link against OpenSSL::Crypto
 * (SHA-256 input digests).
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp> // nlohmann/json, vendored
#include <openssl/evp.h>

#include "sdc/dense_coding.hpp"
#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/optimizer.hpp"
#include "sdc/protocol_sim.hpp"
#include "sdc/state.hpp"

namespace sdc {

inline constexpr const char *kToolVersion = "0.1.0";

using json = nlohmann::json;

inline std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(),
                   nullptr) != 1) {
        detail::fail(ErrorCode::IoError, "SHA-256 digest failed");
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) {
        out << std::setw(2) << static_cast<int>(md[i]);
    }
    return out.str();
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        detail::fail(ErrorCode::IoError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        detail::fail(ErrorCode::IoError, "failed reading " + path);
    }
    return buf.str();
}

// ---------------------------------------------------------------------------
// Encoding

// Adding 0.0 turns -0.0 into 0.0 so reports do not carry sign noise.
inline json to_json(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

inline json to_json(std::span<const Complex> v) {
    json out = json::array();
    for (const auto &z : v) {
        out.push_back(to_json(z));
    }
    return out;
}

/// Matrices are arrays of rows.
inline json to_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_json(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline json one_based(std::span<const std::size_t> perm) {
    json out = json::array();
    for (std::size_t v : perm) {
        out.push_back(v + 1);
    }
    return out;
}

inline json to_json(const SharedState &s) {
    return {{"c", to_json(std::span<const Complex>(s.c))},
            {"perm_a", one_based(s.perm_a)},
            {"perm_b", one_based(s.perm_b)}};
}

inline json to_json(const GramReport &r) {
    json violations = json::array();
    for (const auto &v : r.violations) {
        violations.push_back({{"j1", v.j1 + 1}, {"j2", v.j2 + 1}, {"gamma", to_json(v.gamma)}});
    }
    return {{"gram", to_json(r.gram)},
            {"column_norms", r.column_norms},
            {"violations", std::move(violations)},
            {"perfectly_preparable", r.perfectly_preparable}};
}

inline json to_json(const PreparationPlan &p) {
    return {{"shared", to_json(p.shared)},
            {"y", to_json(p.y)},
            {"e0", to_json(p.kraus.e0)},
            {"e1", to_json(p.kraus.e1)},
            {"success_prob", p.success_prob},
            {"is_perfect", p.is_perfect},
            {"free_columns", one_based(p.free_columns)}};
}

inline json to_json(const Prop2Report &r) {
    return {{"pair", json::array({r.k1 + 1, r.k2 + 1})},
            {"gamma", to_json(r.gamma)},
            {"bound", r.bound},
            {"spectrum", r.spectrum},
            {"predicted_spectrum", r.predicted_spectrum},
            {"achieved", r.achieved}};
}

inline json to_json(const SchmidtForm &s, double entropy) {
    return {{"lambdas", s.lambdas},
            {"basis_a", to_json(s.basis_a)},
            {"basis_b", to_json(s.basis_b)},
            {"entropy_bits", entropy}};
}

inline json to_json(const SimulationResult &r, std::uint64_t seed) {
    return {{"trials", r.trials},
            {"successes", r.successes},
            {"empirical_prob", r.empirical_prob},
            {"analytic_prob", r.analytic_prob},
            {"mean_success_fidelity", r.mean_success_fidelity},
            {"ci_halfwidth", r.ci_halfwidth},
            {"seed", seed}};
}

inline std::string to_string(OptimizerMethod m) {
    return m == OptimizerMethod::grid ? "grid" : "nelder_mead";
}

inline json to_json(const OptimizationResult &r) {
    json seeds = json::array();
    for (const auto &s : r.seeds_used) {
        seeds.push_back({{"name", s.name}, {"weights", s.weights}, {"prob", s.prob}});
    }
    json history = json::array();
    for (const auto &[iteration, best] : r.history) {
        history.push_back(json::array({iteration, best}));
    }
    return {{"best_c", r.best_c},
            {"best_prob", r.best_prob},
            {"method", to_string(r.method)},
            {"evaluations", r.evaluations},
            {"seeds_used", std::move(seeds)},
            {"history", std::move(history)},
            {"converged", r.converged},
            {"improved_on_column_weights", r.improved_on_column_weights}};
}

inline json make_report(const std::string &command, const std::string &input_digest,
                        json payload) {
    return {{"command", command},
            {"input_digest", input_digest},
            {"tool_version", kToolVersion},
            {"payload", std::move(payload)}};
}

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

[[noreturn]] inline void parse_fail(const std::string &field, const std::string &what) {
    fail(ErrorCode::ParseError, "field '" + field + "': " + what);
}

inline Complex complex_from_json(const json &v, const std::string &field) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        parse_fail(field, "expected a [re, im] pair of numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

inline std::vector<Complex> complex_list(const json &v, const std::string &field) {
    if (!v.is_array()) {
        parse_fail(field, "expected an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(v.size());
    for (std::size_t n = 0; n < v.size(); ++n) {
        out.push_back(complex_from_json(v[n], field + "[" + std::to_string(n) + "]"));
    }
    return out;
}

inline std::vector<std::size_t> permutation_from_json(const json &v, const std::string &field,
                                                      std::size_t d) {
    if (!v.is_array()) {
        parse_fail(field, "expected an array of 1-based indices");
    }
    std::vector<std::size_t> out;
    for (const auto &e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 1 ||
            e.get<long long>() > static_cast<long long>(d)) {
            parse_fail(field, "entries must be integers in 1..d");
        }
        out.push_back(static_cast<std::size_t>(e.get<long long>() - 1));
    }
    return out;
}

inline json parse_json_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

} // namespace detail

inline TargetState target_from_json(const json &doc, double tol = kDefaultTol) {
    if (!doc.is_object()) {
        detail::parse_fail("<root>", "expected an object");
    }
    if (!doc.contains("d") || !doc["d"].is_number_integer() || doc["d"].get<long long>() < 1) {
        detail::parse_fail("d", "expected a positive integer");
    }
    const auto d = static_cast<std::size_t>(doc["d"].get<long long>());
    if (d > 64) {
        detail::parse_fail("d", "local dimension above 64 is not supported");
    }
    if (!doc.contains("matrix")) {
        detail::parse_fail("matrix", "missing");
    }
    const auto amps = detail::complex_list(doc["matrix"], "matrix");
    if (amps.size() != d * d) {
        detail::parse_fail("matrix", "BadLength: " + std::to_string(amps.size()) +
                                         " entries, expected d*d = " + std::to_string(d * d));
    }
    Normalization norm = Normalization::unit;
    if (doc.contains("normalization")) {
        const auto &n = doc["normalization"];
        if (n == "unit") {
            norm = Normalization::unit;
        } else if (n == "scaled") {
            norm = Normalization::scaled;
        } else {
            detail::parse_fail("normalization", "expected \"unit\" or \"scaled\"");
        }
    }
    return target_from_amplitudes(d, amps, norm, tol);
}

inline TargetState parse_state_text(const std::string &text, double tol = kDefaultTol) {
    return target_from_json(detail::parse_json_text(text), tol);
}

inline TargetState parse_state_file(const std::string &path, double tol = kDefaultTol) {
    return parse_state_text(read_file(path), tol);
}

inline SharedState shared_from_json(const json &doc, std::size_t d, double tol = kDefaultTol) {
    if (!doc.is_object() || !doc.contains("c")) {
        detail::parse_fail("c", "missing");
    }
    auto c = detail::complex_list(doc["c"], "c");
    if (c.size() != d) {
        detail::parse_fail("c", "BadLength: expected " + std::to_string(d) + " amplitudes");
    }
    std::vector<std::size_t> perm_a;
    std::vector<std::size_t> perm_b;
    if (doc.contains("perm_a")) {
        perm_a = detail::permutation_from_json(doc["perm_a"], "perm_a", d);
    }
    if (doc.contains("perm_b")) {
        perm_b = detail::permutation_from_json(doc["perm_b"], "perm_b", d);
    }
    return make_shared_state(std::move(c), std::move(perm_a), std::move(perm_b), tol);
}

inline SharedState parse_shared_file(const std::string &path, std::size_t d,
                                     double tol = kDefaultTol) {
    return shared_from_json(detail::parse_json_text(read_file(path)), d, tol);
}

} // namespace sdc
