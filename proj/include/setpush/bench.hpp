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

// Experiment runner: repeated queries over target sets and config grids,
// error summaries against the power-iteration oracle, and cost-vs-degree
// scaling fits.

#ifndef SETPUSH_BENCH_HPP_
#define SETPUSH_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "setpush/config.hpp"
#include "setpush/estimators.hpp"
#include "setpush/graph.hpp"

namespace setpush::bench {

inline constexpr int kSchemaVersion = 1;

struct Target {
    NodeId node;
    std::string bucket; // "all" unless a bucket policy assigned one
};

struct TargetPolicy {
    enum class Kind {
        Uniform,        // k distinct nodes, uniformly
        DegreeWeighted, // k distinct nodes, drawn with probability ~ degree
        DegreeBuckets,  // up to k per bucket: >=100d, [10d,100d), [d,10d), [d/10,d), [d/100,d/10)
        Log2Buckets,    // up to k per bucket [2^j, 2^(j+1)) of degree
        Explicit,       // the listed nodes
    };
    Kind kind = Kind::Uniform;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    /// Log2Buckets only: skip nodes above this degree.
    std::optional<std::size_t> max_degree;
    std::vector<std::uint64_t> nodes; // Explicit only, original ids
};

std::string to_string(TargetPolicy::Kind kind);
TargetPolicy::Kind parse_policy(std::string_view name);

/// Labels of the five relative degree buckets, in order.
const std::vector<std::string> &relative_bucket_labels();

/// Bucket label of @a degree relative to the average degree, or nullopt if
/// it falls below the last bucket.
std::optional<std::size_t> relative_bucket(double degree, double avg_degree);

/// Selected targets, each node at most once, in ascending (bucket, node)
/// order for bucket policies and in draw order otherwise.
std::vector<Target> select_targets(const Graph &g, const TargetPolicy &policy);

struct ExperimentSpec {
    /// Graph source: edge-list path or generator spec (used by load_graph).
    std::string graph_path;
    std::optional<std::string> generator;
    std::vector<Method> methods{Method::SetPush};
    TargetPolicy targets;
    std::vector<EstimatorConfig> configs{EstimatorConfig{}};
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    /// Compare against the power-iteration oracle (needs n <= 10^4).
    bool with_oracle = true;
    /// Walk count for the Monte-Carlo estimators; default per config.
    std::optional<std::uint64_t> walks;
    /// Worker threads; 0 means hardware concurrency.
    std::size_t threads = 0;
};

Graph load_graph(const ExperimentSpec &spec);
ExperimentSpec spec_from_json(const nlohmann::json &doc);
nlohmann::json spec_to_json(const ExperimentSpec &spec);

struct RunRecord {
    Target target;
    std::uint64_t original_id = 0;
    std::size_t degree = 0;
    Method method = Method::SetPush;
    std::size_t config_index = 0;
    EstimatorConfig config;
    std::size_t repetition = 0;
    std::optional<double> theta; // SetPush only
    std::size_t hops = 0;
    Estimate estimate;
    std::optional<double> pagerank;
};

/**
 * Runs every (target, config, method, repetition) combination. Repetition r
 * of the q-th (target, config, method) triple uses stream stream_id(q, r) of
 * spec.seed, so the result does not depend on the thread count. Records are
 * ordered by (target, config, method, repetition).
 */
std::vector<RunRecord> run_experiment(const Graph &g, const ExperimentSpec &spec);

struct ErrorSummary {
    Method method = Method::SetPush;
    std::size_t config_index = 0;
    std::string group; // bucket label, or target original id
    std::size_t count = 0;
    double mean_degree = 0.0;
    double mean = 0.0;
    std::optional<double> variance; // absent for a single record
    std::optional<double> mean_c_emp_over_c;
    std::optional<double> failure_rate;
    /// p_f + 3 sqrt(p_f (1 - p_f) / count).
    std::optional<double> failure_bound;
    double mean_pushes = 0.0;
    double mean_walk_steps = 0.0;
};

enum class GroupBy { Bucket, Target };

/// One row per nonempty (method, config, group), in that order. Error
/// fields are present only when every record in the group has an oracle.
std::vector<ErrorSummary> summarize(const std::vector<RunRecord> &records,
                                    GroupBy by = GroupBy::Bucket);

struct ScalingRow {
    std::string bucket;
    std::size_t targets = 0;
    double mean_degree = 0.0;
    double mean_cost = 0.0; // pushes + walk steps
};

struct ScalingFit {
    Method method;
    std::vector<ScalingRow> rows; // ascending mean degree
    double slope = 0.0;           // least squares, log(cost) on log(degree)
    double intercept = 0.0;
};

/// Least-squares slope and intercept of y on x.
std::pair<double, double> fit_line(const std::vector<double> &x, const std::vector<double> &y);

/// Fits log mean cost against log mean degree across buckets, per method.
/// Throws ValidationError if a method has fewer than two nonempty buckets.
std::vector<ScalingFit> scaling_fit(const std::vector<RunRecord> &records);

/// run_experiment followed by scaling_fit.
std::vector<ScalingFit> scaling_study(const Graph &g, const ExperimentSpec &spec);

/// One row per record. wall_nanos is included only with @a timing, since it
/// is the one machine-dependent column.
void write_csv(std::ostream &out, const std::vector<RunRecord> &records, bool timing = false);

nlohmann::json summary_json(const Graph &g, const ExperimentSpec &spec,
                            const std::vector<ErrorSummary> &summaries);

} // namespace setpush::bench

#endif // SETPUSH_BENCH_HPP_
