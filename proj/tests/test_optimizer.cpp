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
#include "sdc/optimizer.hpp"
#include "support/oracles.hpp"

using namespace sdc;
using Catch::Matchers::WithinAbs;

namespace {

TargetState bell() { return TargetState(ComplexMatrix::identity(2)); }

TargetState single_overlap3() {
    return TargetState(ComplexMatrix{{1.0, 0.6, 0.0}, {0.0, 0.8, 0.0}, {0.0, 0.0, 1.0}});
}

/// Best weight split for d = 2 by scanning p_1 on a fine line, using the
/// closed-form 2x2 eigenvalue rather than the library's solver.
double brute_force_d2(const TargetState &t, int steps = 200000) {
    const ComplexMatrix g = gram(t.coefficients());
    double best = 0.0;
    for (int k = 1; k < steps; ++k) {
        const double p1 = static_cast<double>(k) / steps;
        const double p2 = 1.0 - p1;
        ComplexMatrix m(2, 2);
        m(0, 0) = g(0, 0) / (2.0 * p1);
        m(1, 1) = g(1, 1) / (2.0 * p2);
        m(0, 1) = g(0, 1) / (2.0 * std::sqrt(p1 * p2));
        m(1, 0) = std::conj(m(0, 1));
        best = std::max(best, 1.0 / testing::eig2_closed_form(m)[0]);
    }
    return best;
}

} // namespace

TEST_CASE("objective examples", "[optimizer]") {
    const std::vector<double> half{0.5, 0.5};
    CHECK_THAT(objective(bell(), half), WithinAbs(1.0, 1e-12));
    CHECK_THAT(objective(testing::uniform_target(2), half), WithinAbs(0.5, 1e-12));
    const std::vector<double> skew{0.8, 0.2};
    CHECK_THAT(objective(testing::uniform_target(2), skew), WithinAbs(0.32, 1e-12));

    // A needed column with no weight cannot be prepared at all.
    const std::vector<double> edge{1.0, 0.0};
    CHECK(objective(bell(), edge) == 0.0);

    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(objective(bell(), wrong), Error);
}

TEST_CASE("objective agrees with success_probability", "[optimizer][property]") {
    testing::Rng rng(4);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t d = 2 + trial % 5;
        const auto t = testing::random_generic_target(d, rng);
        std::vector<double> p(d);
        double mass = 0.0;
        for (auto &v : p) {
            v = u(rng);
            mass += v;
        }
        for (auto &v : p) {
            v /= mass;
        }
        CHECK_THAT(objective(t, p), WithinAbs(success_probability(t, shared_from_weights(p)), 1e-10));
    }
}

TEST_CASE("optimizer on perfectly preparable targets", "[optimizer]") {
    for (auto method : {OptimizerMethod::grid, OptimizerMethod::nelder_mead}) {
        const auto r = optimize_shared(bell(), method);
        CHECK_THAT(r.best_prob, WithinAbs(1.0, 1e-12));
        CHECK_FALSE(r.improved_on_column_weights);
        REQUIRE(r.best_c.size() == 2);
    }
}

TEST_CASE("optimizer reaches 1/d on uniform targets", "[optimizer]") {
    for (std::size_t d : {2u, 3u, 4u}) {
        const auto t = testing::uniform_target(d);
        const auto nm = optimize_shared(t, OptimizerMethod::nelder_mead);
        CHECK_THAT(nm.best_prob, WithinAbs(1.0 / static_cast<double>(d), 1e-9));
        const auto grid = optimize_shared(t, OptimizerMethod::grid);
        CHECK_THAT(grid.best_prob, WithinAbs(1.0 / static_cast<double>(d), 1e-9));
    }
}

TEST_CASE("optimizer never loses to its seeds", "[optimizer]") {
    const auto r = optimize_shared(single_overlap3());
    REQUIRE(r.seeds_used.size() == 2);
    CHECK(r.seeds_used[0].name == "column_weights");
    CHECK(r.seeds_used[1].name == "uniform");
    CHECK_THAT(r.seeds_used[0].prob, WithinAbs(0.625, 1e-12));
    for (const auto &seed : r.seeds_used) {
        CHECK(r.best_prob >= seed.prob);
    }
    CHECK(r.best_prob >= 0.625);
}

TEST_CASE("optimizer matches a brute-force scan for d = 2", "[optimizer][property]") {
    testing::Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = testing::random_generic_target(2, rng);
        const double ref = brute_force_d2(t);
        const auto r = optimize_shared(t);
        CHECK_THAT(r.best_prob, WithinAbs(ref, 1e-6));
        CHECK(r.best_prob >= ref - 1e-9);
    }
}

TEST_CASE("optimizer result is consistent", "[optimizer][property]") {
    testing::Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 2 + trial % 4;
        const auto t = testing::random_generic_target(d, rng);
        const auto r = optimize_shared(t);
        // best_c evaluates to best_prob.
        std::vector<double> p(d);
        for (std::size_t j = 0; j < d; ++j) {
            p[j] = r.best_c[j] * r.best_c[j];
        }
        CHECK_THAT(objective(t, p), WithinAbs(r.best_prob, 1e-12));
        for (std::size_t k = 1; k < r.history.size(); ++k) {
            CHECK(r.history[k].second >= r.history[k - 1].second);
            CHECK(r.history[k].first >= r.history[k - 1].first);
        }
        CHECK(r.evaluations <= 20000 + 64);
    }
}

TEST_CASE("grid search limits", "[optimizer]") {
    try {
        (void)optimize_shared(testing::uniform_target(5), OptimizerMethod::grid);
        FAIL("expected DimensionTooLarge");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DimensionTooLarge);
    }
    CHECK_THROWS_AS(optimize_shared(bell(), OptimizerMethod::nelder_mead, 0), Error);

    const auto small = optimize_shared(testing::uniform_target(3), OptimizerMethod::grid, 50);
    CHECK(small.evaluations <= 50);
}

TEST_CASE("zero column stays at zero weight", "[optimizer]") {
    const TargetState t(ComplexMatrix{{std::sqrt(2.0), 0.0}, {0.0, 0.0}});
    const auto r = optimize_shared(t);
    CHECK_THAT(r.best_prob, WithinAbs(1.0, 1e-12));
    CHECK(r.best_c[1] == 0.0);
}
