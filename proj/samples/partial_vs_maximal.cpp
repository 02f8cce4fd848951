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

// Prepares sqrt(3)/2 |00> + 1/2 |11> from a partially entangled resource with
// certainty, and compares with the maximally entangled resource.

#include <cmath>
#include <cstdio>

#include "sdc/sdc.hpp"

int main() {
    const sdc::ComplexMatrix x{{std::sqrt(1.5), 0.0}, {0.0, std::sqrt(0.5)}};
    const sdc::TargetState target(x);

    const auto verdict = sdc::decide_perfect(target);
    const auto plan = sdc::construct_plan(target);
    std::printf("columns orthogonal:        %s\n", verdict.perfectly_preparable ? "yes" : "no");
    std::printf("resource amplitudes:       %.6f %.6f\n", plan.shared.c[0].real(),
                plan.shared.c[1].real());
    std::printf("P(success), partial:       %.12f\n", plan.success_prob);
    std::printf("P(success), maximal:       %.12f\n", sdc::maximal_baseline(target));

    const auto sim = sdc::run_protocol(plan, target, {100000, 1, sdc::kDefaultTol});
    std::printf("simulated successes:       %llu / %llu (fidelity %.12f)\n",
                static_cast<unsigned long long>(sim.successes),
                static_cast<unsigned long long>(sim.trials), sim.mean_success_fidelity);
    return 0;
}
