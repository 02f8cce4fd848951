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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "sdc/dense_coding.hpp"
#include "sdc/protocol_sim.hpp"
#include "support/oracles.hpp"

using namespace sdc;
using Catch::Matchers::WithinAbs;

namespace {

TargetState bell() { return TargetState(ComplexMatrix::identity(2)); }

/// Shared vector sum_k c_k |g_k>|h_k> laid out as d^2 amplitudes.
std::vector<Complex> shared_vector(const SharedState &s) {
    const std::size_t d = s.dim();
    std::vector<Complex> v(d * d, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
        v[s.perm_a[k] * d + s.perm_b[k]] = s.c[k];
    }
    return v;
}

double mass_of(const std::vector<Complex> &v) {
    double m = 0.0;
    for (const auto &z : v) {
        m += std::norm(z);
    }
    return m;
}

} // namespace

TEST_CASE("outcome probabilities", "[protocol_sim]") {
    SECTION("Bell plan always succeeds") {
        const auto plan = construct_plan(bell());
        CHECK_THAT(outcome_probability(plan, 0), WithinAbs(1.0, 1e-12));
        CHECK_THAT(outcome_probability(plan, 1), WithinAbs(0.0, 1e-12));
    }
    SECTION("uniform d = 2 succeeds half the time") {
        const auto plan = construct_plan(testing::uniform_target(2));
        CHECK_THAT(outcome_probability(plan, 0), WithinAbs(0.5, 1e-12));
        CHECK_THAT(outcome_probability(plan, 1), WithinAbs(0.5, 1e-12));
    }
    SECTION("only outcomes 0 and 1 exist") {
        const auto plan = construct_plan(bell());
        CHECK_THROWS_AS(outcome_probability(plan, 2), Error);
    }
}

TEST_CASE("outcome probabilities match the explicit branch norms", "[protocol_sim][property]") {
    testing::Rng rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + trial % 4;
        const auto t = testing::random_generic_target(d, rng);
        const auto plan = construct_plan(t);
        const double p0 = outcome_probability(plan, 0);
        const double p1 = outcome_probability(plan, 1);
        CHECK_THAT(p0 + p1, WithinAbs(1.0, 1e-12));
        CHECK_THAT(p0, WithinAbs(plan.success_prob, 1e-9));

        const auto v = shared_vector(plan.shared);
        CHECK_THAT(mass_of(testing::kron_apply(plan.kraus.e0, v)), WithinAbs(p0, 1e-10));
        CHECK_THAT(mass_of(testing::kron_apply(plan.kraus.e1, v)), WithinAbs(p1, 1e-10));
    }
}

TEST_CASE("conditional output", "[protocol_sim]") {
    SECTION("Bell success branch is the target") {
        const auto plan = construct_plan(bell());
        const auto out = conditional_output(plan, bell(), 0);
        CHECK_THAT(out.fidelity_with_target, WithinAbs(1.0, 1e-12));
    }
    SECTION("Bell failure branch has zero probability") {
        const auto plan = construct_plan(bell());
        try {
            (void)conditional_output(plan, bell(), 1);
            FAIL("expected ZeroProbabilityBranch");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::ZeroProbabilityBranch);
        }
    }
    SECTION("uniform target failure branch misses the target") {
        const auto t = testing::uniform_target(2);
        const auto plan = construct_plan(t);
        CHECK_THAT(conditional_output(plan, t, 0).fidelity_with_target, WithinAbs(1.0, 1e-12));
        CHECK(conditional_output(plan, t, 1).fidelity_with_target < 1.0 - 1e-6);
    }
}

TEST_CASE("success branch reproduces the target", "[protocol_sim][property]") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + trial % 5;
        const auto t = trial % 2 == 0 ? testing::random_generic_target(d, rng)
                                      : testing::random_orthogonal_target(d, rng);
        const auto plan = construct_plan(t);
        const auto out = conditional_output(plan, t, 0);
        CHECK_THAT(out.fidelity_with_target, WithinAbs(1.0, 1e-9));

        // Independent route: explicit (E0 (x) I) on the shared vector.
        auto ref = testing::kron_apply(plan.kraus.e0, shared_vector(plan.shared));
        const double inv = 1.0 / std::sqrt(mass_of(ref));
        for (std::size_t n = 0; n < ref.size(); ++n) {
            CHECK(std::abs(ref[n] * inv - out.state[n]) <= 1e-10);
        }
    }
}

TEST_CASE("ci_halfwidth", "[protocol_sim]") {
    // p = 1/2, n = 100: 3 * sqrt(0.25 / 100) = 0.15.
    CHECK_THAT(ci_halfwidth(50, 100), WithinAbs(0.15, 1e-15));
    // All successes: p is clamped to 1 - 1/(n + 2).
    const double p = 1.0 - 1.0 / 12.0;
    CHECK_THAT(ci_halfwidth(10, 10), WithinAbs(3.0 * std::sqrt(p * (1.0 - p) / 10.0), 1e-15));
    CHECK(ci_halfwidth(0, 10) > 0.0);
}

TEST_CASE("run_protocol", "[protocol_sim]") {
    SECTION("Bell plan: every trial succeeds") {
        const auto plan = construct_plan(bell());
        const auto r = run_protocol(plan, bell(), {1000, 3, kDefaultTol});
        CHECK(r.successes == 1000);
        CHECK(r.empirical_prob == 1.0);
        CHECK_THAT(r.mean_success_fidelity, WithinAbs(1.0, 1e-12));
    }
    SECTION("uniform d = 2 near one half") {
        const auto t = testing::uniform_target(2);
        const auto plan = construct_plan(t);
        const auto r = run_protocol(plan, t, {100000, 1, kDefaultTol});
        CHECK_THAT(r.empirical_prob, WithinAbs(0.5, 0.005));
        CHECK(std::abs(r.empirical_prob - r.analytic_prob) <= r.ci_halfwidth);
    }
    SECTION("one trial") {
        const auto plan = construct_plan(bell());
        const auto r = run_protocol(plan, bell(), {1, 0, kDefaultTol});
        CHECK(r.trials == 1);
        CHECK(r.successes == 1);
    }
    SECTION("zero trials") {
        const auto plan = construct_plan(bell());
        CHECK_THROWS_AS(run_protocol(plan, bell(), {0, 0, kDefaultTol}), Error);
    }
    SECTION("same seed, same counts") {
        const auto t = testing::uniform_target(3);
        const auto plan = construct_plan(t);
        const auto a = run_protocol(plan, t, {20000, 77, kDefaultTol});
        const auto b = run_protocol(plan, t, {20000, 77, kDefaultTol});
        const auto c = run_protocol(plan, t, {20000, 78, kDefaultTol});
        CHECK(a.successes == b.successes);
        CHECK(a.empirical_prob == b.empirical_prob);
        CHECK(a.successes != c.successes);
    }
}

TEST_CASE("run_protocol stays inside its interval across seeds", "[protocol_sim][property]") {
    const auto t = testing::uniform_target(2);
    const auto plan = construct_plan(t);
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = run_protocol(plan, t, {10000, seed, kDefaultTol});
        if (std::abs(r.empirical_prob - r.analytic_prob) <= r.ci_halfwidth) {
            ++inside;
        }
    }
    // A 3-sigma interval misses about 0.3% of the time.
    CHECK(inside >= 98);
}

TEST_CASE("uniform stream looks uniform", "[protocol_sim][property]") {
    std::vector<int> bins(10, 0);
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double u = rng::uniform(12345, static_cast<std::uint64_t>(k));
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        ++bins[static_cast<std::size_t>(u * 10.0)];
    }
    // Chi-square with 9 degrees of freedom; 27.9 is the 0.1% tail.
    double chi2 = 0.0;
    for (int b : bins) {
        const double diff = b - n / 10.0;
        chi2 += diff * diff / (n / 10.0);
    }
    CHECK(chi2 < 27.9);
}
