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
 * Monte-Carlo execution of the two-outcome preparation measurement.
 *
 * Each trial is a Bernoulli draw with the analytic outcome-0 probability;
 * the post-measurement state does not depend on the trial, so it is formed
 * once. Uniform variates come from a counter-based SplitMix64 stream: trial k
 * under seed s uses mix64(s + (k + 1) * 0x9E3779B97F4A7C15), making every
 * draw a pure function of (seed, k).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdc/dense_coding.hpp"
#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/state.hpp"

namespace sdc {

struct SimulationConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
};

struct SimulationResult {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double empirical_prob = 0.0;
    double analytic_prob = 0.0;
    double mean_success_fidelity = 0.0;
    double ci_halfwidth = 0.0; ///< 3 sigma, normal approximation
};

struct ConditionalOutput {
    std::vector<Complex> state; ///< d^2 amplitudes, index i * d + j
    double fidelity_with_target = 0.0;
};

namespace rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Start of the counter sequence for `seed`. Hashing keeps neighbouring
/// seeds (0, 1, 2, ...) from feeding nearly identical counters to mix64.
constexpr std::uint64_t stream_base(std::uint64_t seed) noexcept {
    return mix64(seed ^ 0x6A09E667F3BCC909ULL);
}

/// Uniform double in [0, 1) for trial `index` of stream `seed`.
constexpr double uniform(std::uint64_t seed, std::uint64_t index) noexcept {
    const std::uint64_t bits = mix64(stream_base(seed) + (index + 1) * kGoldenGamma);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace rng

/// Probability of measurement outcome 0 (success) or 1 on the shared
/// state's reduced density sum_k |c_k|^2 |g_k><g_k|.
inline double outcome_probability(const PreparationPlan &plan, int outcome) {
    if (outcome != 0 && outcome != 1) {
        detail::fail(ErrorCode::InvalidArgument, "outcome must be 0 or 1");
    }
    const ComplexMatrix povm = gram(plan.kraus.e0);
    double p0 = 0.0;
    for (std::size_t k = 0; k < plan.shared.dim(); ++k) {
        const std::size_t g = plan.shared.perm_a[k];
        p0 += std::norm(plan.shared.c[k]) * povm(g, g).real();
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    return outcome == 0 ? p0 : 1.0 - p0;
}

/// Normalised state after outcome `outcome`, and its fidelity with |psi>.
inline ConditionalOutput conditional_output(const PreparationPlan &plan,
                                            const TargetState &t, int outcome,
                                            double tol = kDefaultTol) {
    if (outcome != 0 && outcome != 1) {
        detail::fail(ErrorCode::InvalidArgument, "outcome must be 0 or 1");
    }
    const std::size_t d = t.dim();
    if (plan.shared.dim() != d || plan.y.rows() != d) {
        detail::fail(ErrorCode::DimensionMismatch, "plan and target dimensions differ");
    }
    const ComplexMatrix &op = outcome == 0 ? plan.kraus.e0 : plan.kraus.e1;

    std::vector<Complex> shared(d * d, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
        shared[plan.shared.perm_a[k] * d + plan.shared.perm_b[k]] += plan.shared.c[k];
    }

    ConditionalOutput out;
    out.state.assign(d * d, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            const Complex e = op(i, a);
            if (e == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < d; ++j) {
                out.state[i * d + j] += e * shared[a * d + j];
            }
        }
    }
    double mass = 0.0;
    for (const auto &z : out.state) {
        mass += std::norm(z);
    }
    if (mass <= tol) {
        detail::fail(ErrorCode::ZeroProbabilityBranch,
                     "outcome " + std::to_string(outcome) + " has probability " +
                         std::to_string(mass));
    }
    const double inv = 1.0 / std::sqrt(mass);
    for (auto &z : out.state) {
        z *= inv;
    }
    const auto psi = t.amplitudes();
    Complex overlap{0.0, 0.0};
    for (std::size_t n = 0; n < psi.size(); ++n) {
        overlap += std::conj(psi[n]) * out.state[n];
    }
    out.fidelity_with_target = std::norm(overlap);
    return out;
}

inline double ci_halfwidth(std::uint64_t successes, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double floor = 1.0 / (n + 2.0);
    const double p = std::clamp(static_cast<double>(successes) / n, floor, 1.0 - floor);
    return 3.0 * std::sqrt(p * (1.0 - p) / n);
}

inline SimulationResult run_protocol(const PreparationPlan &plan, const TargetState &t,
                                     const SimulationConfig &cfg) {
    if (cfg.trials == 0) {
        detail::fail(ErrorCode::InvalidArgument, "trials must be at least 1");
    }
    SimulationResult r;
    r.trials = cfg.trials;
    r.analytic_prob = outcome_probability(plan, 0);
    for (std::uint64_t k = 0; k < cfg.trials; ++k) {
        if (rng::uniform(cfg.seed, k) < r.analytic_prob) {
            ++r.successes;
        }
    }
    r.empirical_prob = static_cast<double>(r.successes) / static_cast<double>(r.trials);
    r.ci_halfwidth = ci_halfwidth(r.successes, r.trials);
    r.mean_success_fidelity = conditional_output(plan, t, 0, cfg.tol).fidelity_with_target;
    return r;
}

} // namespace sdc
