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

#include <chrono>
#include <cmath>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "setpush/estimators.hpp"

namespace setpush {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t nanos_since(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

std::uint64_t ceil_count(double x) {
    if (!(x >= 1.0))
        return 1;
    if (x > 1e18)
        throw ConfigError("walk count overflows: " + std::to_string(x));
    return static_cast<std::uint64_t>(std::ceil(x));
}

} // namespace

std::uint64_t default_reverse_walks(const Graph &g, NodeId t, const EstimatorConfig &cfg) {
    validate(cfg);
    const auto dt = static_cast<double>(g.degree(t));
    return ceil_count(3.0 * dt / (cfg.c * cfg.c * cfg.alpha));
}

Estimate reverse_mc(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                    std::optional<std::uint64_t> walks) {
    const auto start = Clock::now();
    const auto draws0 = rng.draws();
    const std::uint64_t n_r = walks ? *walks : default_reverse_walks(g, t, cfg);
    validate(cfg);
    if (n_r == 0)
        throw ValidationError("reverse_mc needs at least one walk");
    const auto dt = static_cast<double>(g.degree(t));

    // Each walk ending at s contributes 1/d_s; sum_s tally(s)/d_s collapses
    // to a single running sum.
    Estimate est;
    double weighted = 0.0;
    for (std::uint64_t w = 0; w < n_r; ++w) {
        const auto walk = alpha_walk(g, t, cfg.alpha, rng);
        weighted += 1.0 / static_cast<double>(g.degree(walk.terminal));
        est.walk_steps += walk.steps;
    }
    est.value = dt / static_cast<double>(g.node_count()) * weighted / static_cast<double>(n_r);
    est.rng_draws = rng.draws() - draws0;
    est.wall_nanos = nanos_since(start);
    return est;
}

std::uint64_t default_forward_walks(const Graph &g, const EstimatorConfig &cfg) {
    validate(cfg);
    const auto n = static_cast<double>(g.node_count());
    return ceil_count((2.0 * cfg.c / 3.0 + 2.0) * n / (cfg.c * cfg.c * cfg.alpha) *
                      std::log(1.0 / cfg.p_f));
}

Estimate forward_mc(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                    std::optional<std::uint64_t> walks) {
    const auto start = Clock::now();
    const auto draws0 = rng.draws();
    (void)g.degree(t);
    const std::uint64_t n_r = walks ? *walks : default_forward_walks(g, cfg);
    validate(cfg);
    if (n_r == 0)
        throw ValidationError("forward_mc needs at least one walk");

    Estimate est;
    std::uint64_t hits = 0;
    for (std::uint64_t w = 0; w < n_r; ++w) {
        const auto source = static_cast<NodeId>(rng.below(g.node_count()));
        const auto walk = alpha_walk(g, source, cfg.alpha, rng);
        hits += walk.terminal == t;
        est.walk_steps += walk.steps;
    }
    est.value = static_cast<double>(hits) / static_cast<double>(n_r);
    est.rng_draws = rng.draws() - draws0;
    est.wall_nanos = nanos_since(start);
    return est;
}

Estimate local_push(const Graph &g, NodeId t, const EstimatorConfig &cfg,
                    std::optional<double> epsilon, const PushObserver &observer) {
    const auto start = Clock::now();
    validate(cfg);
    (void)g.degree(t);
    const auto n = g.node_count();
    const double eps = epsilon ? *epsilon : cfg.c * cfg.alpha / static_cast<double>(n);
    if (!(eps > 0.0))
        throw ConfigError("epsilon must be positive");
    const double alpha = cfg.alpha;

    std::vector<double> residue(n, 0.0);
    std::vector<double> reserve(n, 0.0);
    // Max-heap keyed by residue. Entries go stale when a node's residue
    // grows or is pushed; a popped entry is live only if it still matches.
    std::priority_queue<std::pair<double, NodeId>> heap;
    residue[t] = 1.0;
    heap.emplace(1.0, t);

    Estimate est;
    double reserve_sum = 0.0;
    while (!heap.empty()) {
        const auto [r, v] = heap.top();
        heap.pop();
        if (r != residue[v] || r < eps)
            continue;
        residue[v] = 0.0;
        reserve[v] += alpha * r;
        reserve_sum += alpha * r;
        for (NodeId u : g.neighbors(v)) {
            residue[u] += (1.0 - alpha) * r / static_cast<double>(g.degree(u));
            if (residue[u] >= eps)
                heap.emplace(residue[u], u);
        }
        est.pushes += g.degree(v);
        if (observer)
            observer(reserve_sum / static_cast<double>(n));
    }

    double sum = 0.0;
    for (double x : reserve)
        sum += x;
    est.value = sum / static_cast<double>(n);
    est.wall_nanos = nanos_since(start);
    return est;
}

std::string_view to_string(Method m) {
    switch (m) {
    case Method::SetPush:
        return "setpush";
    case Method::ReverseMc:
        return "reverse-mc";
    case Method::ForwardMc:
        return "forward-mc";
    case Method::LocalPush:
        return "local-push";
    }
    throw ContractViolation("unknown method");
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::SetPush, Method::ReverseMc, Method::ForwardMc, Method::LocalPush})
        if (to_string(m) == name)
            return m;
    throw ValidationError("unknown method '" + std::string(name) +
                          "' (expected setpush, reverse-mc, forward-mc or local-push)");
}

bool uses_rng(Method m) { return m != Method::LocalPush; }

Estimate run(Method m, const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng) {
    switch (m) {
    case Method::SetPush:
        return setpush(g, t, cfg, rng);
    case Method::ReverseMc:
        return reverse_mc(g, t, cfg, rng);
    case Method::ForwardMc:
        return forward_mc(g, t, cfg, rng);
    case Method::LocalPush:
        return local_push(g, t, cfg);
    }
    throw ContractViolation("unknown method");
}

Estimate amplified(const EstimatorFn &inner, std::uint64_t seed, std::uint64_t query,
                   std::size_t repetitions, std::size_t groups) {
    if (groups < 1 || repetitions < groups)
        throw ValidationError("amplified needs repetitions >= groups >= 1");
    Estimate total;
    std::vector<double> values;
    values.reserve(repetitions);
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        RngStream rng(seed, stream_id(query, rep));
        const Estimate e = inner(rng);
        values.push_back(e.value);
        total.pushes += e.pushes;
        total.walk_steps += e.walk_steps;
        total.rng_draws += e.rng_draws;
        total.wall_nanos += e.wall_nanos;
    }
    total.value = median_of_means(values, groups);
    return total;
}

} // namespace setpush
