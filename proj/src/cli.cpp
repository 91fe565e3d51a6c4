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

#include "setpush/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "setpush/bench.hpp"
#include "setpush/estimators.hpp"
#include "setpush/graph.hpp"
#include "setpush/oracle.hpp"

namespace setpush::cli {
namespace {

constexpr const char *kGenHelp =
    "generator spec kind:param[:param...]: complete:N, star:N, path:N, ring:N, "
    "power_law:N[:EXPONENT[:SEED]], erdos_renyi:N:P[:SEED]; shorthands kN, pN";

struct GraphSource {
    std::string path;
    std::string gen;

    void add_to(CLI::App &cmd) {
        auto *g = cmd.add_option("--graph", path, "edge-list file");
        auto *s = cmd.add_option("--gen", gen, kGenHelp);
        g->excludes(s);
    }

    Graph load() const {
        if (!gen.empty())
            return generate(parse_generator_spec(gen));
        if (path.empty())
            throw ValidationError("one of --graph or --gen is required");
        return load_edge_list(path);
    }
};

struct ConfigFlags {
    EstimatorConfig cfg;
    std::optional<double> theta;

    void add_to(CLI::App &cmd) {
        cmd.add_option("--alpha", cfg.alpha, "stop probability per step")->capture_default_str();
        cmd.add_option("--c", cfg.c, "relative error target")->capture_default_str();
        cmd.add_option("--pf", cfg.p_f, "failure probability")->capture_default_str();
        cmd.add_option("--theta", theta, "fixed push threshold (setpush)");
        cmd.add_option("--cost-constant", cfg.cost_constant, "K in the default threshold")
            ->capture_default_str();
    }

    EstimatorConfig get() const {
        EstimatorConfig out = cfg;
        out.theta_override = theta;
        validate(out);
        return out;
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot write " + path.string());
    return f;
}

// --- query ---------------------------------------------------------------

struct QueryArgs {
    GraphSource source;
    ConfigFlags config;
    std::uint64_t target = 0;
    std::string method = "setpush";
    std::uint64_t seed = 0;
    std::optional<std::size_t> reps;
    std::optional<std::size_t> groups;
    std::optional<std::uint64_t> walks;
    std::optional<double> epsilon;
    bool json = false;
    bool timing = false;
};

int cmd_query(const QueryArgs &a, std::ostream &out) {
    const Graph g = a.source.load();
    const EstimatorConfig cfg = a.config.get();
    const Method method = parse_method(a.method);
    const auto t = g.find_original(a.target);
    if (!t)
        throw ValidationError("target " + std::to_string(a.target) + " is not in the graph");

    auto inner = [&](RngStream &rng) -> Estimate {
        switch (method) {
        case Method::SetPush:
            return setpush(g, *t, cfg, rng);
        case Method::ReverseMc:
            return reverse_mc(g, *t, cfg, rng, a.walks);
        case Method::ForwardMc:
            return forward_mc(g, *t, cfg, rng, a.walks);
        case Method::LocalPush:
            return local_push(g, *t, cfg, a.epsilon);
        }
        throw ContractViolation("unknown method");
    };
    const std::size_t reps = a.reps.value_or(1);
    if (reps < 1)
        throw ValidationError("--reps must be >= 1");
    const std::size_t groups = a.groups.value_or(std::min(reps, default_group_count(cfg.p_f)));
    const Estimate est = amplified(inner, a.seed, 0, reps, groups);

    const auto hops = truncation_hops(cfg, g.node_count());
    std::optional<double> theta;
    if (method == Method::SetPush)
        theta = compute_theta(g, *t, cfg);

    if (a.json) {
        nlohmann::json j{{"schema_version", bench::kSchemaVersion},
                         {"method", std::string(to_string(method))},
                         {"target", a.target},
                         {"degree", g.degree(*t)},
                         {"nodes", g.node_count()},
                         {"edges", g.edge_count()},
                         {"alpha", cfg.alpha},
                         {"c", cfg.c},
                         {"p_f", cfg.p_f},
                         {"seed", a.seed},
                         {"repetitions", reps},
                         {"groups", groups},
                         {"theta", theta ? nlohmann::json(*theta) : nlohmann::json(nullptr)},
                         {"hops", hops},
                         {"value", est.value},
                         {"pushes", est.pushes},
                         {"walk_steps", est.walk_steps},
                         {"rng_draws", est.rng_draws}};
        if (a.timing)
            j["wall_nanos"] = est.wall_nanos;
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "method      " << to_string(method) << '\n'
        << "target      " << a.target << " (degree " << g.degree(*t) << ")\n"
        << "value       " << fmt(est.value) << '\n';
    if (theta)
        out << "theta       " << fmt(*theta) << '\n';
    out << "L           " << hops << '\n'
        << "pushes      " << est.pushes << '\n'
        << "walk steps  " << est.walk_steps << '\n'
        << "rng draws   " << est.rng_draws << '\n';
    if (reps > 1)
        out << "repetitions " << reps << " in " << groups << " groups\n";
    if (a.timing)
        out << "wall ms     " << fmt(static_cast<double>(est.wall_nanos) / 1e6) << '\n';
    return kOk;
}

// --- oracle --------------------------------------------------------------

struct OracleArgs {
    GraphSource source;
    double alpha = 0.2;
    double c = 0.1;
    std::string out_path;
};

int cmd_oracle(const OracleArgs &a, std::ostream &out) {
    const Graph g = a.source.load();
    if (g.node_count() > oracle::kDenseNodeLimit)
        throw CapacityError("oracle limited to n <= " + std::to_string(oracle::kDenseNodeLimit) +
                            " (n = " + std::to_string(g.node_count()) + ")");
    if (!(a.c > 0.0))
        throw ConfigError("c must be positive");
    const auto pr = oracle::pagerank<double>(g, a.alpha);
    const auto hops = truncation_hops(a.alpha, a.c, g.node_count());
    const auto truncated = oracle::truncated_pagerank<double>(g, a.alpha, hops);
    if (a.out_path.empty()) {
        oracle::write_csv(out, g, pr.values, truncated);
    } else {
        auto f = open_out(a.out_path);
        oracle::write_csv(f, g, pr.values, truncated);
    }
    return kOk;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
    GraphSource source;
    ConfigFlags config;
    std::string spec_path;
    std::string out_dir;
    std::vector<std::string> methods;
    std::string policy = "uniform";
    std::size_t k = 10;
    std::uint64_t target_seed = 0;
    std::vector<std::uint64_t> targets;
    std::size_t reps = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> walks;
    std::optional<std::size_t> threads;
    bool no_oracle = false;
    bool json = false;
    bool timing = false;
};

bench::ExperimentSpec bench_spec(const BenchArgs &a) {
    bench::ExperimentSpec spec;
    if (!a.spec_path.empty()) {
        std::ifstream f(a.spec_path);
        if (!f)
            throw IoError("cannot open " + a.spec_path);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error &e) {
            throw ValidationError(a.spec_path + ": " + e.what());
        }
        spec = bench::spec_from_json(doc);
        if (!a.source.path.empty() || !a.source.gen.empty()) {
            spec.graph_path = a.source.path;
            spec.generator.reset();
            if (!a.source.gen.empty())
                spec.generator = a.source.gen;
        }
    } else {
        spec.graph_path = a.source.path;
        if (!a.source.gen.empty())
            spec.generator = a.source.gen;
        spec.methods.clear();
        for (const auto &m : a.methods)
            spec.methods.push_back(parse_method(m));
        if (spec.methods.empty())
            spec.methods.push_back(Method::SetPush);
        spec.targets.kind = bench::parse_policy(a.policy);
        spec.targets.k = a.k;
        spec.targets.seed = a.target_seed;
        if (!a.targets.empty()) {
            spec.targets.kind = bench::TargetPolicy::Kind::Explicit;
            spec.targets.nodes = a.targets;
        }
        spec.configs = {a.config.get()};
        spec.repetitions = a.reps;
        spec.seed = a.seed;
        spec.with_oracle = !a.no_oracle;
        spec.walks = a.walks;
    }
    if (a.threads)
        spec.threads = *a.threads;
    return spec;
}

int cmd_bench(const BenchArgs &a, std::ostream &out) {
    const auto spec = bench_spec(a);
    const Graph g = bench::load_graph(spec);
    const auto records = bench::run_experiment(g, spec);
    const auto summaries = bench::summarize(records);
    const auto doc = bench::summary_json(g, spec, summaries);

    const std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    {
        auto f = open_out(dir / "records.csv");
        bench::write_csv(f, records, a.timing);
    }
    {
        auto f = open_out(dir / "summary.json");
        f << doc.dump(2) << '\n';
    }

    if (a.json) {
        out << doc.dump(2) << '\n';
        return kOk;
    }
    out << records.size() << " records written to " << (dir / "records.csv").string() << '\n';
    for (const auto &s : summaries) {
        out << to_string(s.method) << " config " << s.config_index << " [" << s.group
            << "] n=" << s.count << " mean=" << fmt(s.mean)
            << " pushes=" << fmt(s.mean_pushes) << " walk_steps=" << fmt(s.mean_walk_steps);
        if (s.failure_rate)
            out << " c_emp/c=" << fmt(*s.mean_c_emp_over_c) << " failure=" << fmt(*s.failure_rate);
        out << '\n';
    }
    return kOk;
}

// --- gen / validate ------------------------------------------------------

struct GenArgs {
    std::string gen;
    std::optional<std::uint64_t> seed;
    std::string out_path;
};

int cmd_gen(const GenArgs &a, std::ostream &out) {
    auto spec = parse_generator_spec(a.gen);
    if (a.seed)
        std::visit(
            [&](auto &s) {
                if constexpr (requires { s.seed; })
                    s.seed = *a.seed;
            },
            spec);
    const Graph g = generate(spec);
    if (a.out_path.empty()) {
        write_edge_list(g, out);
    } else {
        auto f = open_out(a.out_path);
        write_edge_list(g, f);
    }
    return kOk;
}

struct ValidateArgs {
    GraphSource source;
    bool json = false;
};

int cmd_validate(const ValidateArgs &a, std::ostream &out, std::ostream &err) {
    const Graph g = a.source.load();
    validate(g);
    const auto st = stats(g);
    if (g.dropped_self_loops() > 0)
        err << "warning: dropped " << g.dropped_self_loops() << " self-loop(s)\n";
    if (g.collapsed_duplicates() > 0)
        err << "warning: collapsed " << g.collapsed_duplicates() << " duplicate edge(s)\n";
    if (a.json) {
        out << nlohmann::json{{"schema_version", bench::kSchemaVersion},
                              {"nodes", g.node_count()},
                              {"edges", g.edge_count()},
                              {"avg_degree", st.avg_degree},
                              {"min_degree", st.min_degree},
                              {"max_degree", st.max_degree},
                              {"dropped_self_loops", g.dropped_self_loops()},
                              {"collapsed_duplicates", g.collapsed_duplicates()}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << "nodes       " << g.node_count() << '\n'
        << "edges       " << g.edge_count() << '\n'
        << "avg degree  " << fmt(st.avg_degree) << '\n'
        << "min degree  " << st.min_degree << '\n'
        << "max degree  " << st.max_degree << '\n'
        << "self-loops dropped    " << g.dropped_self_loops() << '\n'
        << "duplicates collapsed  " << g.collapsed_duplicates() << '\n';
    return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Single-node PageRank estimation on undirected graphs", "setpush"};
    app.require_subcommand(1);

    QueryArgs q;
    auto *query = app.add_subcommand("query", "estimate the PageRank of one node");
    q.source.add_to(*query);
    q.config.add_to(*query);
    query->add_option("--target", q.target, "target node (id as in the input)")->required();
    query->add_option("--method", q.method, "setpush, reverse-mc, forward-mc or local-push")
        ->capture_default_str();
    query->add_option("--seed", q.seed, "random seed")->capture_default_str();
    query->add_option("--reps", q.reps, "independent repetitions, combined by median of means");
    query->add_option("--groups", q.groups, "median-of-means groups (default min(reps, 8 ln(1/pf)))");
    query->add_option("--walks", q.walks, "walk count for the Monte-Carlo methods");
    query->add_option("--epsilon", q.epsilon, "push threshold for local-push (default c*alpha/n)");
    query->add_flag("--json", q.json, "machine-readable output");
    query->add_flag("--timing", q.timing, "report wall-clock time");

    OracleArgs o;
    auto *orc = app.add_subcommand("oracle", "exact PageRank and truncated PageRank as CSV");
    o.source.add_to(*orc);
    orc->add_option("--alpha", o.alpha, "stop probability per step")->capture_default_str();
    orc->add_option("--c", o.c, "relative error that fixes the truncation length")
        ->capture_default_str();
    orc->add_option("--out", o.out_path, "output file (default stdout)");

    BenchArgs b;
    auto *bch = app.add_subcommand("bench", "repeated-query experiment with error summaries");
    b.source.add_to(*bch);
    b.config.add_to(*bch);
    bch->add_option("--spec", b.spec_path, "experiment spec (JSON)");
    bch->add_option("--out-dir", b.out_dir, "directory for records.csv and summary.json")
        ->required();
    bch->add_option("--method", b.methods, "estimator(s); may be repeated")->delimiter(',');
    bch->add_option("--policy", b.policy,
                    "target policy: uniform, degree_weighted, degree_buckets, log2_buckets")
        ->capture_default_str();
    bch->add_option("--k", b.k, "targets (per bucket for bucket policies)")->capture_default_str();
    bch->add_option("--target-seed", b.target_seed, "seed of the target selection")
        ->capture_default_str();
    bch->add_option("--target", b.targets, "explicit target id(s)")->delimiter(',');
    bch->add_option("--reps", b.reps, "repetitions per target")->capture_default_str();
    bch->add_option("--seed", b.seed, "random seed")->capture_default_str();
    bch->add_option("--walks", b.walks, "walk count for the Monte-Carlo methods");
    bch->add_option("--threads", b.threads, "worker threads (default: all cores)");
    bch->add_flag("--no-oracle", b.no_oracle, "skip error metrics (no n limit)");
    bch->add_flag("--json", b.json, "print the JSON summary");
    bch->add_flag("--timing", b.timing, "add a wall_nanos column to the CSV");

    GenArgs gn;
    auto *gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    gen->add_option("--gen", gn.gen, kGenHelp)->required();
    gen->add_option("--seed", gn.seed, "override the generator seed");
    gen->add_option("--out", gn.out_path, "output file (default stdout)");

    ValidateArgs v;
    auto *val = app.add_subcommand("validate", "check an edge list and print degree statistics");
    v.source.add_to(*val);
    val->add_flag("--json", v.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*query)
            return cmd_query(q, out);
        if (*orc)
            return cmd_oracle(o, out);
        if (*bch)
            return cmd_bench(b, out);
        if (*gen)
            return cmd_gen(gn, out);
        if (*val)
            return cmd_validate(v, out, err);
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const IndexError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    throw ContractViolation("no subcommand dispatched");
}

} // namespace setpush::cli
