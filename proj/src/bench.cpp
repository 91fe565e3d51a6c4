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

#include "setpush/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "setpush/oracle.hpp"
#include "setpush/sampling.hpp"

namespace setpush::bench {
namespace {

// Stream reserved for target selection, disjoint from any stream_id(q, r)
// with q < 2^31.
constexpr std::uint64_t kTargetStream = 0xfffffffe00000000ULL;

/// First @a k entries of a uniform random permutation of @a items.
template <typename T>
std::vector<T> draw_without_replacement(std::vector<T> items, std::size_t k, RngStream &rng) {
    k = std::min(k, items.size());
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(items.size() - i));
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
}

std::string log2_label(std::size_t j) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "deg2^%02zu", j);
    return buf;
}

std::size_t floor_log2(std::size_t d) {
    std::size_t j = 0;
    while (d >>= 1)
        ++j;
    return j;
}

std::vector<Target> bucket_sample(std::map<std::size_t, std::vector<NodeId>> members,
                                  const std::vector<std::string> &labels, std::size_t k,
                                  RngStream &rng) {
    std::vector<Target> out;
    for (auto &[index, nodes] : members) {
        auto picked = draw_without_replacement(std::move(nodes), k, rng);
        std::sort(picked.begin(), picked.end());
        for (NodeId v : picked)
            out.push_back({v, labels[index]});
    }
    return out;
}

} // namespace

std::string to_string(TargetPolicy::Kind kind) {
    switch (kind) {
    case TargetPolicy::Kind::Uniform:
        return "uniform";
    case TargetPolicy::Kind::DegreeWeighted:
        return "degree_weighted";
    case TargetPolicy::Kind::DegreeBuckets:
        return "degree_buckets";
    case TargetPolicy::Kind::Log2Buckets:
        return "log2_buckets";
    case TargetPolicy::Kind::Explicit:
        return "explicit";
    }
    throw ContractViolation("unknown target policy");
}

TargetPolicy::Kind parse_policy(std::string_view name) {
    using K = TargetPolicy::Kind;
    for (K k : {K::Uniform, K::DegreeWeighted, K::DegreeBuckets, K::Log2Buckets, K::Explicit})
        if (to_string(k) == name)
            return k;
    throw ValidationError("unknown target policy '" + std::string(name) + "'");
}

const std::vector<std::string> &relative_bucket_labels() {
    static const std::vector<std::string> labels{"b1", "b2", "b3", "b4", "b5"};
    return labels;
}

std::optional<std::size_t> relative_bucket(double degree, double avg_degree) {
    // Lower edges of the buckets as multiples of the average degree.
    static constexpr double kEdges[] = {100.0, 10.0, 1.0, 0.1, 0.01};
    for (std::size_t i = 0; i < std::size(kEdges); ++i)
        if (degree >= kEdges[i] * avg_degree)
            return i;
    return std::nullopt;
}

std::vector<Target> select_targets(const Graph &g, const TargetPolicy &policy) {
    using K = TargetPolicy::Kind;
    if (policy.k < 1 && policy.kind != K::Explicit)
        throw ValidationError("target policy needs k >= 1");
    RngStream rng(policy.seed, kTargetStream);
    const auto n = g.node_count();
    std::vector<Target> out;

    switch (policy.kind) {
    case K::Uniform: {
        std::vector<NodeId> all(n);
        for (NodeId v = 0; v < n; ++v)
            all[v] = v;
        for (NodeId v : draw_without_replacement(std::move(all), policy.k, rng))
            out.push_back({v, "all"});
        break;
    }
    case K::DegreeWeighted: {
        // Successive degree-proportional draws, redrawing nodes already taken.
        std::vector<double> cumulative(n);
        double total = 0.0;
        for (NodeId v = 0; v < n; ++v)
            cumulative[v] = total += static_cast<double>(g.degree(v));
        std::vector<bool> taken(n, false);
        const auto k = std::min(policy.k, n);
        while (out.size() < k) {
            const double x = rng.uniform() * total;
            auto v = static_cast<NodeId>(std::upper_bound(cumulative.begin(), cumulative.end(), x) -
                                         cumulative.begin());
            v = std::min<NodeId>(v, static_cast<NodeId>(n - 1));
            if (!taken[v]) {
                taken[v] = true;
                out.push_back({v, "all"});
            }
        }
        break;
    }
    case K::DegreeBuckets: {
        const double avg = stats(g).avg_degree;
        std::map<std::size_t, std::vector<NodeId>> members;
        for (NodeId v = 0; v < n; ++v)
            if (auto b = relative_bucket(static_cast<double>(g.degree(v)), avg))
                members[*b].push_back(v);
        out = bucket_sample(std::move(members), relative_bucket_labels(), policy.k, rng);
        break;
    }
    case K::Log2Buckets: {
        std::map<std::size_t, std::vector<NodeId>> members;
        std::vector<std::string> labels;
        for (NodeId v = 0; v < n; ++v) {
            const auto d = g.degree(v);
            if (policy.max_degree && d > *policy.max_degree)
                continue;
            members[floor_log2(d)].push_back(v);
        }
        for (std::size_t j = 0; j < 64; ++j)
            labels.push_back(log2_label(j));
        out = bucket_sample(std::move(members), labels, policy.k, rng);
        break;
    }
    case K::Explicit:
        for (std::uint64_t id : policy.nodes) {
            const auto v = g.find_original(id);
            if (!v)
                throw ValidationError("target " + std::to_string(id) + " is not in the graph");
            out.push_back({*v, "all"});
        }
        break;
    }
    return out;
}

Graph load_graph(const ExperimentSpec &spec) {
    if (spec.generator)
        return generate(parse_generator_spec(*spec.generator));
    if (spec.graph_path.empty())
        throw ValidationError("experiment needs a graph path or a generator");
    return load_edge_list(spec.graph_path);
}

std::vector<RunRecord> run_experiment(const Graph &g, const ExperimentSpec &spec) {
    if (spec.repetitions < 1)
        throw ValidationError("repetitions must be >= 1");
    if (spec.methods.empty() || spec.configs.empty())
        throw ValidationError("experiment needs at least one method and one config");
    for (const auto &cfg : spec.configs)
        validate(cfg);
    if (spec.with_oracle && g.node_count() > oracle::kDenseNodeLimit)
        throw ValidationError("error metrics need the oracle, limited to n <= " +
                              std::to_string(oracle::kDenseNodeLimit) + " (n = " +
                              std::to_string(g.node_count()) + ")");

    const auto targets = select_targets(g, spec.targets);
    if (targets.empty())
        throw ValidationError("target policy selected no nodes");

    std::map<double, oracle::Vector<double>> truth; // by alpha
    if (spec.with_oracle)
        for (const auto &cfg : spec.configs)
            if (!truth.count(cfg.alpha))
                truth.emplace(cfg.alpha, oracle::pagerank<double>(g, cfg.alpha).values);

    const auto n_cfg = spec.configs.size();
    const auto n_method = spec.methods.size();
    const auto reps = spec.repetitions;
    const auto queries = targets.size() * n_cfg * n_method;
    if (queries >= (std::uint64_t{1} << 31) || reps >= (std::uint64_t{1} << 32))
        throw ValidationError("experiment too large for the stream-id layout");

    std::vector<RunRecord> records(queries * reps);
    for (std::size_t q = 0; q < queries; ++q) {
        const auto mi = q % n_method;
        const auto ci = (q / n_method) % n_cfg;
        const auto &target = targets[q / (n_method * n_cfg)];
        const auto &cfg = spec.configs[ci];
        RunRecord base;
        base.target = target;
        base.original_id = g.original_id(target.node);
        base.degree = g.degree(target.node);
        base.method = spec.methods[mi];
        base.config_index = ci;
        base.config = cfg;
        base.hops = truncation_hops(cfg, g.node_count());
        if (base.method == Method::SetPush)
            base.theta = compute_theta(g, target.node, cfg);
        if (spec.with_oracle)
            base.pagerank = truth.at(cfg.alpha)(target.node);
        for (std::size_t r = 0; r < reps; ++r) {
            records[q * reps + r] = base;
            records[q * reps + r].repetition = r;
        }
    }

    auto run_one = [&](std::size_t job) {
        auto &rec = records[job];
        RngStream rng(spec.seed, stream_id(job / reps, job % reps));
        const NodeId t = rec.target.node;
        switch (rec.method) {
        case Method::ReverseMc:
            rec.estimate = reverse_mc(g, t, rec.config, rng, spec.walks);
            break;
        case Method::ForwardMc:
            rec.estimate = forward_mc(g, t, rec.config, rng, spec.walks);
            break;
        default:
            rec.estimate = run(rec.method, g, t, rec.config, rng);
        }
    };

    std::size_t threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, records.size());
    if (threads == 1) {
        for (std::size_t job = 0; job < records.size(); ++job)
            run_one(job);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t job; (job = next.fetch_add(1)) < records.size();) {
                try {
                    run_one(job);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = records.size();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    return records;
}

std::vector<ErrorSummary> summarize(const std::vector<RunRecord> &records, GroupBy by) {
    using Key = std::tuple<int, std::size_t, std::string>;
    std::map<Key, std::size_t> index;
    std::vector<Key> order;
    std::vector<std::vector<const RunRecord *>> groups;
    for (const auto &rec : records) {
        Key key{static_cast<int>(rec.method), rec.config_index,
                by == GroupBy::Bucket ? rec.target.bucket : std::to_string(rec.original_id)};
        auto [it, fresh] = index.try_emplace(key, groups.size());
        if (fresh) {
            order.push_back(key);
            groups.emplace_back();
        }
        groups[it->second].push_back(&rec);
    }
    std::vector<std::size_t> perm(order.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(std::get<0>(order[a]), std::get<1>(order[a])) <
               std::tie(std::get<0>(order[b]), std::get<1>(order[b]));
    });

    std::vector<ErrorSummary> out;
    for (std::size_t i : perm) {
        const auto &members = groups[i];
        const auto count = static_cast<double>(members.size());
        ErrorSummary s;
        s.method = members.front()->method;
        s.config_index = members.front()->config_index;
        s.group = std::get<2>(order[i]);
        s.count = members.size();

        bool have_truth = true;
        double sum = 0.0, c_emp_sum = 0.0;
        std::size_t failures = 0;
        for (const auto *rec : members) {
            sum += rec->estimate.value;
            s.mean_degree += static_cast<double>(rec->degree);
            s.mean_pushes += static_cast<double>(rec->estimate.pushes);
            s.mean_walk_steps += static_cast<double>(rec->estimate.walk_steps);
            if (!rec->pagerank || !(*rec->pagerank > 0.0)) {
                have_truth = false;
                continue;
            }
            const double c_emp = std::abs(rec->estimate.value - *rec->pagerank) / *rec->pagerank;
            c_emp_sum += c_emp / rec->config.c;
            failures += c_emp > rec->config.c;
        }
        s.mean = sum / count;
        s.mean_degree /= count;
        s.mean_pushes /= count;
        s.mean_walk_steps /= count;
        if (members.size() > 1) {
            double ss = 0.0;
            for (const auto *rec : members)
                ss += (rec->estimate.value - s.mean) * (rec->estimate.value - s.mean);
            s.variance = ss / (count - 1.0);
        }
        if (have_truth) {
            const double pf = members.front()->config.p_f;
            s.mean_c_emp_over_c = c_emp_sum / count;
            s.failure_rate = static_cast<double>(failures) / count;
            s.failure_bound = pf + 3.0 * std::sqrt(pf * (1.0 - pf) / count);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::pair<double, double> fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("line fit needs at least two points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (!(sxx > 0.0))
        throw ValidationError("line fit needs at least two distinct x values");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::vector<ScalingFit> scaling_fit(const std::vector<RunRecord> &records) {
    std::vector<ScalingFit> out;
    for (const auto &s : summarize(records, GroupBy::Bucket)) {
        if (out.empty() || out.back().method != s.method)
            out.push_back(ScalingFit{s.method, {}, 0.0, 0.0});
        auto &rows = out.back().rows;
        // A repeated bucket means several configs of one method were mixed.
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const ScalingRow &r) { return r.bucket == s.group; });
        if (it != rows.end())
            throw ValidationError("scaling fit expects one config per method");
        rows.push_back({s.group, s.count, s.mean_degree, s.mean_pushes + s.mean_walk_steps});
    }
    for (auto &fit : out) {
        std::sort(fit.rows.begin(), fit.rows.end(), [](const ScalingRow &a, const ScalingRow &b) {
            return a.mean_degree < b.mean_degree;
        });
        std::vector<double> x, y;
        for (const auto &row : fit.rows) {
            if (!(row.mean_cost > 0.0))
                throw ValidationError("bucket " + row.bucket + " has zero cost");
            x.push_back(std::log(row.mean_degree));
            y.push_back(std::log(row.mean_cost));
        }
        if (x.size() < 2)
            throw ValidationError("scaling fit needs at least two nonempty buckets for " +
                                  std::string(to_string(fit.method)));
        std::tie(fit.slope, fit.intercept) = fit_line(x, y);
    }
    return out;
}

std::vector<ScalingFit> scaling_study(const Graph &g, const ExperimentSpec &spec) {
    return scaling_fit(run_experiment(g, spec));
}

void write_csv(std::ostream &out, const std::vector<RunRecord> &records, bool timing) {
    out << "method,config,alpha,c,p_f,target,degree,bucket,repetition,theta,hops,value,"
           "pagerank,pushes,walk_steps,rng_draws";
    if (timing)
        out << ",wall_nanos";
    out << '\n';
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const auto &r : records) {
        out << to_string(r.method) << ',' << r.config_index << ',' << num(r.config.alpha) << ','
            << num(r.config.c) << ',' << num(r.config.p_f) << ',' << r.original_id << ','
            << r.degree << ',' << r.target.bucket << ',' << r.repetition << ','
            << (r.theta ? num(*r.theta) : "") << ',' << r.hops << ',' << num(r.estimate.value)
            << ',' << (r.pagerank ? num(*r.pagerank) : "") << ',' << r.estimate.pushes << ','
            << r.estimate.walk_steps << ',' << r.estimate.rng_draws;
        if (timing)
            out << ',' << r.estimate.wall_nanos;
        out << '\n';
    }
}

namespace {

nlohmann::json config_to_json(const EstimatorConfig &cfg) {
    nlohmann::json j{{"alpha", cfg.alpha},
                     {"c", cfg.c},
                     {"p_f", cfg.p_f},
                     {"cost_constant", cfg.cost_constant},
                     {"theta_scales_with_pf", cfg.theta_scales_with_pf}};
    if (cfg.theta_override)
        j["theta"] = *cfg.theta_override;
    if (cfg.hops_override)
        j["hops"] = *cfg.hops_override;
    return j;
}

EstimatorConfig config_from_json(const nlohmann::json &j) {
    EstimatorConfig cfg;
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.c = j.value("c", cfg.c);
    cfg.p_f = j.value("p_f", cfg.p_f);
    cfg.cost_constant = j.value("cost_constant", cfg.cost_constant);
    cfg.theta_scales_with_pf = j.value("theta_scales_with_pf", cfg.theta_scales_with_pf);
    if (j.contains("theta"))
        cfg.theta_override = j.at("theta").get<double>();
    if (j.contains("hops"))
        cfg.hops_override = j.at("hops").get<std::size_t>();
    validate(cfg);
    return cfg;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T> &x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

} // namespace

ExperimentSpec spec_from_json(const nlohmann::json &doc) {
    static const std::vector<std::string> known{"graph",       "gen",         "method",
                                                "methods",     "targets",     "configs",
                                                "config",      "repetitions", "seed",
                                                "oracle",      "walks",       "threads"};
    try {
        if (!doc.is_object())
            throw ValidationError("experiment spec must be a JSON object");
        for (const auto &[key, _] : doc.items())
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw ValidationError("unknown experiment spec key '" + key + "'");

        ExperimentSpec spec;
        spec.graph_path = doc.value("graph", std::string{});
        if (doc.contains("gen"))
            spec.generator = doc.at("gen").get<std::string>();
        if (doc.contains("methods")) {
            spec.methods.clear();
            for (const auto &m : doc.at("methods"))
                spec.methods.push_back(parse_method(m.get<std::string>()));
        } else if (doc.contains("method")) {
            spec.methods = {parse_method(doc.at("method").get<std::string>())};
        }
        if (doc.contains("targets")) {
            const auto &t = doc.at("targets");
            spec.targets.kind = parse_policy(t.value("policy", std::string{"uniform"}));
            spec.targets.k = t.value("k", spec.targets.k);
            spec.targets.seed = t.value("seed", spec.targets.seed);
            if (t.contains("max_degree"))
                spec.targets.max_degree = t.at("max_degree").get<std::size_t>();
            if (t.contains("nodes"))
                spec.targets.nodes = t.at("nodes").get<std::vector<std::uint64_t>>();
        }
        if (doc.contains("configs")) {
            spec.configs.clear();
            for (const auto &c : doc.at("configs"))
                spec.configs.push_back(config_from_json(c));
        } else if (doc.contains("config")) {
            spec.configs = {config_from_json(doc.at("config"))};
        }
        spec.repetitions = doc.value("repetitions", spec.repetitions);
        spec.seed = doc.value("seed", spec.seed);
        spec.with_oracle = doc.value("oracle", spec.with_oracle);
        if (doc.contains("walks"))
            spec.walks = doc.at("walks").get<std::uint64_t>();
        spec.threads = doc.value("threads", spec.threads);
        return spec;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("experiment spec: ") + e.what());
    }
}

nlohmann::json spec_to_json(const ExperimentSpec &spec) {
    nlohmann::json j;
    if (spec.generator)
        j["gen"] = *spec.generator;
    else
        j["graph"] = spec.graph_path;
    j["methods"] = nlohmann::json::array();
    for (Method m : spec.methods)
        j["methods"].push_back(std::string(to_string(m)));
    nlohmann::json t{{"policy", to_string(spec.targets.kind)},
                     {"k", spec.targets.k},
                     {"seed", spec.targets.seed}};
    if (spec.targets.max_degree)
        t["max_degree"] = *spec.targets.max_degree;
    if (!spec.targets.nodes.empty())
        t["nodes"] = spec.targets.nodes;
    j["targets"] = t;
    j["configs"] = nlohmann::json::array();
    for (const auto &cfg : spec.configs)
        j["configs"].push_back(config_to_json(cfg));
    j["repetitions"] = spec.repetitions;
    j["seed"] = spec.seed;
    j["oracle"] = spec.with_oracle;
    if (spec.walks)
        j["walks"] = *spec.walks;
    return j;
}

nlohmann::json summary_json(const Graph &g, const ExperimentSpec &spec,
                            const std::vector<ErrorSummary> &summaries) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &s : summaries)
        rows.push_back({{"method", std::string(to_string(s.method))},
                        {"config", s.config_index},
                        {"group", s.group},
                        {"count", s.count},
                        {"mean_degree", s.mean_degree},
                        {"mean", s.mean},
                        {"variance", optional_json(s.variance)},
                        {"mean_c_emp_over_c", optional_json(s.mean_c_emp_over_c)},
                        {"failure_rate", optional_json(s.failure_rate)},
                        {"failure_bound", optional_json(s.failure_bound)},
                        {"mean_pushes", s.mean_pushes},
                        {"mean_walk_steps", s.mean_walk_steps}});
    return {{"schema_version", kSchemaVersion},
            {"graph", {{"nodes", g.node_count()}, {"edges", g.edge_count()}}},
            {"spec", spec_to_json(spec)},
            {"summaries", rows}};
}

} // namespace setpush::bench
