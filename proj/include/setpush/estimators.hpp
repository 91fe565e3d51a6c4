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

#ifndef SETPUSH_ESTIMATORS_HPP_
#define SETPUSH_ESTIMATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setpush/config.hpp"
#include "setpush/graph.hpp"
#include "setpush/sampling.hpp"

namespace setpush {

/// Single-node PageRank estimate plus what it cost.
struct Estimate {
    double value = 0.0;
    /// Residue increments (one per neighbor touched by a push).
    std::uint64_t pushes = 0;
    /// Random-walk moves.
    std::uint64_t walk_steps = 0;
    std::uint64_t rng_draws = 0;
    std::uint64_t wall_nanos = 0;
};

/**
 * Sparse per-level residue vector over nodes 0..n-1.
 *
 * Backed by a dense array plus the list of touched nodes, so clearing and
 * iterating cost O(support) rather than O(n). Entries are nonnegative and a
 * node is in the support iff its mass is nonzero.
 */
class ResidueLevel {
public:
    explicit ResidueLevel(std::size_t n) : mass_(n, 0.0) {}

    void add(NodeId v, double x) {
        if (mass_[v] == 0.0)
            support_.push_back(v);
        mass_[v] += x;
    }
    double operator[](NodeId v) const { return mass_[v]; }

    /// Touched nodes, ascending after sort_support().
    std::span<const NodeId> support() const noexcept { return support_; }
    void sort_support();
    void clear();
    double total() const;
    std::size_t node_count() const noexcept { return mass_.size(); }

private:
    std::vector<double> mass_;
    std::vector<NodeId> support_;
};

/// Called once per level l = 0..L with r^(l) before it is cleared.
using LevelObserver = std::function<void(std::size_t level, const ResidueLevel &residue)>;

/// Push threshold. theta_override wins; otherwise
/// alpha c^2 p_f / (K L) * max{1/d_t, sqrt(2(1-alpha)/m)}.
double compute_theta(const Graph &g, NodeId t, const EstimatorConfig &cfg);

/**
 * Level-synchronous randomized push from the target.
 *
 * Level l+1 residue is built from level l: a node u whose pushable mass
 * (1-alpha) r(u) is at least theta d_u spreads it evenly over all
 * neighbors; otherwise each neighbor independently receives theta with
 * probability (1-alpha) r(u) / (d_u theta), selected by geometric skipping.
 * Returns (1/n) sum_s (d_t/d_s) alpha sum_l r^(l)(s), an unbiased estimate
 * of PageRank truncated at L hops.
 */
Estimate setpush(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                 const LevelObserver &observer = {});

/// ceil(3 d_t / (c^2 alpha)).
std::uint64_t default_reverse_walks(const Graph &g, NodeId t, const EstimatorConfig &cfg);

/// Walks from the target; returns (d_t/n) sum_s (hits(s)/n_r) / d_s.
Estimate reverse_mc(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                    std::optional<std::uint64_t> walks = std::nullopt);

/// ceil((2c/3 + 2) n / (c^2 alpha) ln(1/p_f)).
std::uint64_t default_forward_walks(const Graph &g, const EstimatorConfig &cfg);

/// Walks from uniform sources; returns the fraction stopping at t.
Estimate forward_mc(const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng,
                    std::optional<std::uint64_t> walks = std::nullopt);

/// Called after every backward push with the running estimate.
using PushObserver = std::function<void(double running_estimate)>;

/// Backward push from the target, largest residue first, until every
/// residue is below epsilon (default c alpha / n). Deterministic.
Estimate local_push(const Graph &g, NodeId t, const EstimatorConfig &cfg,
                    std::optional<double> epsilon = std::nullopt,
                    const PushObserver &observer = {});

enum class Method { SetPush, ReverseMc, ForwardMc, LocalPush };

std::string_view to_string(Method m);
/// Accepts "setpush", "reverse-mc", "forward-mc", "local-push".
Method parse_method(std::string_view name);
bool uses_rng(Method m);

/// Runs @a m with its default parameters.
Estimate run(Method m, const Graph &g, NodeId t, const EstimatorConfig &cfg, RngStream &rng);

using EstimatorFn = std::function<Estimate(RngStream &)>;

/// Runs @a inner on streams stream_id(query, 0..repetitions-1) and returns the
/// median of means of the values; counters are summed.
Estimate amplified(const EstimatorFn &inner, std::uint64_t seed, std::uint64_t query,
                   std::size_t repetitions, std::size_t groups);

} // namespace setpush

#endif // SETPUSH_ESTIMATORS_HPP_
