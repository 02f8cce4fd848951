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
 * Numerical maximisation of the exact-preparation probability over the
 * weights p_j = |c_j|^2 of a ground-state resource.
 *
 * Phases of c_j only conjugate Y^dagger Y by a diagonal unitary, so the
 * search space is the probability simplex. Columns of x that vanish keep
 * weight 0 and are left out of the search.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdc/dense_coding.hpp"
#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/spectral.hpp"
#include "sdc/state.hpp"

namespace sdc {

enum class OptimizerMethod { grid, nelder_mead };

inline constexpr std::size_t kGridMaxDim = 4;

struct NamedSeed {
    std::string name;
    std::vector<double> weights;
    double prob = 0.0;
};

struct OptimizationResult {
    std::vector<double> best_c; ///< sqrt of the best weights, length d
    double best_prob = 0.0;
    OptimizerMethod method = OptimizerMethod::nelder_mead;
    std::uint64_t evaluations = 0;
    std::vector<NamedSeed> seeds_used;
    std::vector<std::pair<std::uint64_t, double>> history; ///< (iteration, best so far)
    bool converged = false;
    /// True when the search beat the column-weight resource by more than tol.
    bool improved_on_column_weights = false;
};

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double spread_tol = 1e-10;
    double initial_step = 0.5;
    int max_restarts = 25;
};

namespace detail {

// Evaluates 1 / ||Y^dagger Y|| from the column Gram matrix G of x: for the
// ground-state resource with weights p, (Y^dagger Y)(j1, j2) =
// G(j1, j2) / (d sqrt(p_j1 p_j2)) on columns with p_j > 0, and free columns
// (p_j = 0 on a zero column) contribute an eigenvalue 1.
class SimplexObjective {
  public:
    explicit SimplexObjective(const TargetState &t)
        : d_(t.dim()), gram_(gram(t.coefficients())) {
        for (std::size_t j = 0; j < d_; ++j) {
            if (gram_(j, j).real() > 0.0) {
                active_.push_back(j);
            }
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return d_; }
    [[nodiscard]] const std::vector<std::size_t> &active() const noexcept { return active_; }

    double operator()(std::span<const double> p) const {
        ++evaluations_;
        std::vector<std::size_t> used;
        bool has_free = false;
        for (std::size_t j = 0; j < d_; ++j) {
            const bool needed = gram_(j, j).real() > 0.0;
            if (p[j] <= 0.0) {
                if (needed) {
                    return 0.0;
                }
                has_free = true;
            } else if (needed) {
                used.push_back(j);
            }
        }
        const double dd = static_cast<double>(d_);
        ComplexMatrix m(used.size(), used.size());
        for (std::size_t a = 0; a < used.size(); ++a) {
            for (std::size_t b = 0; b < used.size(); ++b) {
                m(a, b) = gram_(used[a], used[b]) /
                          (dd * std::sqrt(p[used[a]] * p[used[b]]));
            }
        }
        double top = has_free ? 1.0 : 0.0;
        if (!used.empty()) {
            top = std::max(top, hermitian_eig(m).values.front());
        }
        return top > 0.0 ? std::min(1.0 / top, 1.0) : 0.0;
    }

    [[nodiscard]] std::uint64_t evaluations() const noexcept { return evaluations_; }

  private:
    std::size_t d_;
    ComplexMatrix gram_;
    std::vector<std::size_t> active_;
    mutable std::uint64_t evaluations_ = 0;
};

// Softmax chart of the active face: theta in R^(m-1), last logit pinned to 0.
inline std::vector<double> weights_from_logits(std::span<const double> theta,
                                               std::span<const std::size_t> active,
                                               std::size_t d) {
    std::vector<double> logits(theta.begin(), theta.end());
    logits.push_back(0.0);
    const double top = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (auto &v : logits) {
        v = std::exp(v - top);
        sum += v;
    }
    std::vector<double> p(d, 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        p[active[k]] = logits[k] / sum;
    }
    return p;
}

inline std::vector<double> logits_from_weights(std::span<const double> p,
                                               std::span<const std::size_t> active) {
    const std::size_t m = active.size();
    std::vector<double> theta(m - 1);
    const double floor = 1e-300;
    const double last = std::max(p[active[m - 1]], floor);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        theta[k] = std::log(std::max(p[active[k]], floor) / last);
    }
    return theta;
}

inline std::vector<double> sqrt_weights(std::span<const double> p) {
    std::vector<double> c(p.size());
    std::transform(p.begin(), p.end(), c.begin(),
                   [](double v) { return std::sqrt(std::max(v, 0.0)); });
    return c;
}

struct SearchState {
    std::vector<double> best_p;
    double best = -1.0;
    std::uint64_t iteration = 0;
    std::vector<std::pair<std::uint64_t, double>> history;

    void offer(std::span<const double> p, double value) {
        if (value > best) {
            best = value;
            best_p.assign(p.begin(), p.end());
            history.emplace_back(iteration, best);
        }
    }
};

// One Nelder-Mead run maximising the objective from theta0. Returns true if
// the simplex spread fell below the tolerance before the budget ran out.
inline bool nelder_mead_run(const SimplexObjective &f, std::vector<double> theta0,
                            std::uint64_t budget, const NelderMeadOptions &opt,
                            SearchState &state) {
    const std::size_t n = theta0.size();
    const auto &active = f.active();
    const std::size_t d = f.dim();

    auto value_at = [&](const std::vector<double> &theta) {
        const auto p = weights_from_logits(theta, active, d);
        const double v = f(p);
        state.offer(p, v);
        return -v; // minimise
    };

    std::vector<std::vector<double>> pts(n + 1, theta0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (f.evaluations() >= budget) {
            return false;
        }
        vals[i] = value_at(pts[i]);
    }

    std::vector<std::size_t> order(n + 1);
    while (f.evaluations() < budget) {
        ++state.iteration;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (vals[worst] - vals[best] < opt.spread_tol) {
            return true;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += pts[i][k] / static_cast<double>(n);
            }
        }
        auto along = [&](double coef) {
            std::vector<double> out(n);
            for (std::size_t k = 0; k < n; ++k) {
                out[k] = centroid[k] + coef * (pts[worst][k] - centroid[k]);
            }
            return out;
        };

        auto reflected = along(-opt.reflection);
        const double f_reflected = value_at(reflected);
        if (f_reflected < vals[best]) {
            auto expanded = along(-opt.reflection * opt.expansion);
            const double f_expanded = value_at(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = std::move(expanded);
                vals[worst] = f_expanded;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second]) {
            pts[worst] = std::move(reflected);
            vals[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < vals[worst];
        auto contracted = outside ? along(-opt.reflection * opt.contraction)
                                  : along(opt.contraction);
        const double f_contracted = value_at(contracted);
        if (f_contracted < (outside ? f_reflected : vals[worst])) {
            pts[worst] = std::move(contracted);
            vals[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                pts[i][k] = pts[best][k] + opt.shrink * (pts[i][k] - pts[best][k]);
            }
            if (f.evaluations() >= budget) {
                return false;
            }
            vals[i] = value_at(pts[i]);
        }
    }
    return false;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (std::numeric_limits<std::uint64_t>::max() >> 8)) {
            return std::numeric_limits<std::uint64_t>::max() >> 8;
        }
    }
    return r;
}

// Visits every composition of `total` into `parts` nonnegative integers.
template <typename Visit>
void for_each_composition(std::size_t total, std::size_t parts, Visit &&visit) {
    std::vector<std::size_t> k(parts, 0);
    auto rec = [&](auto &&self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == parts) {
            k[pos] = left;
            visit(std::as_const(k));
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            k[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
}

} // namespace detail

/// Success probability of the ground-state resource with weights p (phases
/// irrelevant). Returns 0 when some nonzero column of x gets no weight.
inline double objective(const TargetState &t, std::span<const double> weights) {
    if (weights.size() != t.dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "weights must have length d");
    }
    return detail::SimplexObjective(t)(weights);
}

inline OptimizationResult optimize_shared(const TargetState &t,
                                          OptimizerMethod method = OptimizerMethod::nelder_mead,
                                          std::uint64_t budget = 20000,
                                          double tol = kDefaultTol,
                                          const NelderMeadOptions &opt = {}) {
    if (budget == 0) {
        detail::fail(ErrorCode::InvalidArgument, "budget must be at least 1");
    }
    const std::size_t d = t.dim();
    if (method == OptimizerMethod::grid && d > kGridMaxDim) {
        detail::fail(ErrorCode::DimensionTooLarge,
                     "grid search supports d <= 4, got d = " + std::to_string(d));
    }
    const detail::SimplexObjective f(t);
    const auto &active = f.active();

    OptimizationResult result;
    result.method = method;
    detail::SearchState state;

    std::vector<NamedSeed> seeds;
    seeds.push_back({"column_weights", column_weights(t), 0.0});
    seeds.push_back({"uniform", std::vector<double>(d, 1.0 / static_cast<double>(d)), 0.0});
    for (auto &seed : seeds) {
        seed.prob = f(seed.weights);
        state.offer(seed.weights, seed.prob);
    }

    if (active.size() <= 1) {
        result.converged = true;
    } else if (method == OptimizerMethod::grid) {
        const std::size_t m = active.size();
        const std::uint64_t room = budget > f.evaluations() ? budget - f.evaluations() : 0;
        std::size_t resolution = 0;
        while (detail::binomial(resolution + 1 + m - 1, m - 1) <= room) {
            ++resolution;
        }
        if (resolution > 0) {
            std::vector<double> p(d, 0.0);
            detail::for_each_composition(resolution, m, [&](const std::vector<std::size_t> &k) {
                ++state.iteration;
                for (std::size_t a = 0; a < m; ++a) {
                    p[active[a]] = static_cast<double>(k[a]) / static_cast<double>(resolution);
                }
                state.offer(p, f(p));
            });
        }
        result.converged = true;
    } else {
        bool converged = true;
        for (const auto &seed : seeds) {
            // Restrict the seed to the active face and renormalise.
            std::vector<double> p(d, 0.0);
            double mass = 0.0;
            for (std::size_t j : active) {
                mass += seed.weights[j];
            }
            for (std::size_t j : active) {
                p[j] = seed.weights[j] / mass;
            }
            bool seed_converged = false;
            auto theta = detail::logits_from_weights(p, active);
            double last = -1.0;
            for (int restart = 0; restart <= opt.max_restarts; ++restart) {
                if (f.evaluations() >= budget) {
                    break;
                }
                seed_converged = detail::nelder_mead_run(f, theta, budget, opt, state);
                if (state.best <= last + 1e-15) {
                    break;
                }
                last = state.best;
                theta = detail::logits_from_weights(state.best_p, active);
            }
            converged = converged && seed_converged;
        }
        result.converged = converged;
    }

    result.best_prob = state.best;
    result.best_c = detail::sqrt_weights(state.best_p);
    result.evaluations = f.evaluations();
    result.seeds_used = std::move(seeds);
    result.history = std::move(state.history);
    result.improved_on_column_weights =
        result.best_prob > result.seeds_used.front().prob + tol;
    return result;
}

} // namespace sdc
