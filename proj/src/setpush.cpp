// Copyright 2026 The SetPush Authors
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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "setpush/estimators.hpp"

namespace setpush {

void ResidueLevel::sort_support() { std::sort(support_.begin(), support_.end()); }

void ResidueLevel::clear() {
    for (NodeId v : support_)
        mass_[v] = 0.0;
    support_.clear();
}

double ResidueLevel::total() const {
    double s = 0.0;
    for (NodeId v : support_)
        s += mass_[v];
    return s;
}

double compute_theta(const Graph &g, NodeId t, const EstimatorConfig &cfg) {
    validate(cfg);
    const auto dt = static_cast<double>(g.degree(t));
    if (cfg.theta_override)
        return *cfg.theta_override;
    const auto hops = std::max<std::size_t>(truncation_hops(cfg, g.node_count()), 1);
    const double pf = cfg.theta_scales_with_pf ? cfg.p_f : 1.0;
    const double scale = cfg.alpha * cfg.c * cfg.c * pf / (cfg.cost_constant * static_cast<double>(hops));
    const double m = static_cast<double>(g.edge_count());
    return scale * std::max(1.0 / dt, std::sqrt(2.0 * (1.0 - cfg.alpha) / m));
}

Estimate setpush(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                 const LevelObserver &observer) {
    const auto start = std::chrono::steady_clock::now();
    const auto draws0 = rng.draws();
    const double theta = compute_theta(g, t, cfg);
    const auto hops = truncation_hops(cfg, g.node_count());
    const double alpha = cfg.alpha;
    const auto n = g.node_count();

    Estimate est;
    ResidueLevel current(n);
    ResidueLevel next(n);
    ResidueLevel pi_hat(n); // alpha * sum over levels of r^(l)
    current.add(t, 1.0);
    pi_hat.add(t, alpha);

    for (std::size_t level = 0; level < hops; ++level) {
        current.sort_support();
        for (NodeId u : current.support()) {
            const double mass = (1.0 - alpha) * current[u];
            const auto nb = g.neighbors(u);
            const auto du = static_cast<double>(nb.size());
            if (mass >= theta * du) {
                const double share = mass / du;
                for (NodeId v : nb)
                    next.add(v, share);
                est.pushes += nb.size();
            } else {
                const double p_star = mass / (du * theta);
                if (!(p_star < 1.0))
                    throw ContractViolation("sampling branch with p* >= 1");
                geometric_skip_sample(nb.size(), p_star, rng, [&](std::size_t k) {
                    next.add(nb[k - 1], theta);
                    ++est.pushes;
                });
            }
        }
        if (observer)
            observer(level, current);
        current.clear();
        for (NodeId v : next.support())
            pi_hat.add(v, alpha * next[v]);
        std::swap(current, next);
    }
    if (observer) {
        current.sort_support();
        observer(hops, current);
    }

    pi_hat.sort_support();
    const auto dt = static_cast<double>(g.degree(t));
    double sum = 0.0;
    for (NodeId s : pi_hat.support())
        sum += dt / static_cast<double>(g.degree(s)) * pi_hat[s];
    est.value = sum / static_cast<double>(n);
    est.rng_draws = rng.draws() - draws0;
    est.wall_nanos = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                             start)
            .count());
    return est;
}

} // namespace setpush
