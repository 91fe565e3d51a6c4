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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion;
// `acceptance --criterion N` runs a single one. Exit status is nonzero if
// any selected criterion fails.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "setpush/bench.hpp"
#include "setpush/estimators.hpp"
#include "setpush/oracle.hpp"
#include "setpush/sampling.hpp"
#include "support.hpp"

namespace setpush {
namespace {

using setpush::testing::make;
using setpush::testing::mixed_suite;
using setpush::testing::moments;
using setpush::testing::small_suite;

// Pinned tolerances.
constexpr double kOracleTol = 1e-10;     // oracle identities, deterministic regime
constexpr double kRoundingSlack = 1e-12; // one-sided bounds against oracle values
constexpr double kMeanSigmas = 4.0;
constexpr double kZeroVarianceFloor = 1e-12; // mean band when every run is identical
constexpr double kSetPushVarSlack = 1.05;
constexpr double kSetPushCostSlack = 1.1;
constexpr double kReverseVarSlack = 1.2;
constexpr double kSlopeLo = 0.8, kSlopeHi = 1.2;
constexpr double kFlatSlope = 0.15;
constexpr double kChi2Df7P001 = 24.321886347856854;

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects failures; detail carries the first few plus the worst margin.
class Check {
public:
    void expect(bool ok, const std::string &what) {
        ++checks_;
        if (!ok) {
            if (failures_ < 3)
                first_ += (first_.empty() ? "" : "; ") + what;
            ++failures_;
        }
    }
    void note(const std::string &s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
    Outcome outcome() const {
        std::ostringstream d;
        d << checks_ << " checks";
        if (!notes_.empty())
            d << ", " << notes_;
        if (failures_)
            d << "; " << failures_ << " failed: " << first_;
        return {failures_ == 0, d.str()};
    }

private:
    std::size_t checks_ = 0, failures_ = 0;
    std::string first_, notes_;
};

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

std::string where(const std::string &graph, NodeId t) { return graph + " t=" + std::to_string(t); }

// 1. PageRank/PPR identity, reversibility, per-level mass, lower bound.
Outcome oracle_identities() {
    Check check;
    const double a = 0.2;
    for (const auto &text : mixed_suite()) {
        const Graph g = make(text);
        const auto n = g.node_count();
        const auto pr = oracle::pagerank<double>(g, a, 1e-15).values;
        std::vector<oracle::Vector<double>> ppr;
        oracle::Vector<double> avg = oracle::Vector<double>::Zero(static_cast<Eigen::Index>(n));
        for (NodeId s = 0; s < n; ++s) {
            ppr.push_back(oracle::ppr_vector<double>(g, s, a));
            avg += ppr.back();
        }
        avg /= static_cast<double>(n);
        double worst = 0.0;
        for (NodeId t = 0; t < n; ++t) {
            worst = std::max(worst, std::abs(avg(t) - pr(t)));
            check.expect(pr(t) >= a / static_cast<double>(n) - kOracleTol, where(text, t) + " below a/n");
        }
        check.expect(worst <= kOracleTol, text + " mean PPR vs PageRank " + fmt(worst));

        double rev = 0.0;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                rev = std::max(rev, std::abs(ppr[u](v) * static_cast<double>(g.degree(u)) -
                                             ppr[v](u) * static_cast<double>(g.degree(v))));
        check.expect(rev <= kOracleTol, text + " reversibility " + fmt(rev));

        const auto levels = oracle::lhop_ppr_tables<double>(g, a, truncation_hops(a, 0.1, n));
        double mass = 0.0, level_rev = 0.0;
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const auto &m = levels[l];
            const double expect = a * std::pow(1 - a, static_cast<double>(l));
            mass = std::max(mass, (m.rowwise().sum().array() - expect).abs().maxCoeff());
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < u; ++v)
                    level_rev = std::max(level_rev, std::abs(m(u, v) * static_cast<double>(g.degree(u)) -
                                                             m(v, u) * static_cast<double>(g.degree(v))));
        }
        check.expect(mass <= kOracleTol, text + " per-level mass " + fmt(mass));
        check.expect(level_rev <= kOracleTol, text + " per-level reversibility " + fmt(level_rev));
    }
    check.note(std::to_string(mixed_suite().size()) + " graphs");
    return check.outcome();
}

// 2. 0 <= pi - pi_bar <= (c/2) pi.
Outcome truncation_bound() {
    Check check;
    double worst = 0.0; // largest gap / (c/2 pi)
    for (const auto &text : mixed_suite()) {
        const Graph g = make(text);
        const auto pr = oracle::pagerank<double>(g, 0.2, 1e-15).values;
        for (double c : {0.1, 0.5}) {
            const auto tr = oracle::truncated_pagerank<double>(g, 0.2, truncation_hops(0.2, c, g.node_count()));
            for (NodeId t = 0; t < g.node_count(); ++t) {
                const double gap = pr(t) - tr(t);
                worst = std::max(worst, gap / (c / 2 * pr(t)));
                check.expect(gap >= -kRoundingSlack && gap <= c / 2 * pr(t) + kRoundingSlack,
                             where(text, t) + " c=" + fmt(c) + " gap " + fmt(gap));
            }
        }
    }
    check.note("max gap/(c/2 pi) " + fmt(worst));
    return check.outcome();
}

// 3. theta = 1e-18 makes SetPush a deterministic evaluation of pi_bar.
Outcome deterministic_regime() {
    Check check;
    EstimatorConfig cfg;
    cfg.theta_override = 1e-18;
    double worst = 0.0;
    std::size_t graphs = 0;
    for (const auto &text : mixed_suite()) {
        const Graph g = make(text);
        if (g.node_count() > 64)
            continue;
        ++graphs;
        const auto tr =
            oracle::truncated_pagerank<double>(g, cfg.alpha, truncation_hops(cfg, g.node_count()));
        for (NodeId t = 0; t < g.node_count(); ++t) {
            RngStream rng(1, t);
            const auto est = setpush(g, t, cfg, rng);
            const double err = std::abs(est.value - tr(t));
            worst = std::max(worst, err);
            check.expect(err <= kOracleTol, where(text, t) + " err " + fmt(err));
            check.expect(est.rng_draws == 0, where(text, t) + " drew randomness");
        }
    }
    check.note(std::to_string(graphs) + " graphs, max err " + fmt(worst));
    return check.outcome();
}

// 4-6 share one sweep over the small suite.
struct SetPushSweep {
    Check unbiased, variance, cost;
};

const SetPushSweep &setpush_sweep() {
    static const SetPushSweep sweep = [] {
        SetPushSweep s;
        constexpr int kRuns = 20000;
        std::uint64_t sampled_draws = 0;
        double worst_var = 0.0, worst_cost = 0.0;
        // Default theta, then a coarse theta that forces the sampling branch.
        for (const std::optional<double> theta : {std::optional<double>{}, std::optional<double>{0.02}}) {
            for (const auto &text : small_suite()) {
                const Graph g = make(text);
                EstimatorConfig cfg;
                cfg.theta_override = theta;
                const auto n = g.node_count();
                const auto hops = truncation_hops(cfg, n);
                const auto pr = oracle::pagerank<double>(g, cfg.alpha, 1e-15).values;
                const auto tr = oracle::truncated_pagerank<double>(g, cfg.alpha, hops);
                const std::string arm = theta ? " theta=0.02" : " default theta";
                for (NodeId t = 0; t < n; ++t) {
                    const double th = compute_theta(g, t, cfg);
                    std::vector<double> values;
                    values.reserve(kRuns);
                    double pushes = 0.0;
                    for (int run = 0; run < kRuns; ++run) {
                        RngStream rng(theta ? 41 : 40, stream_id(t, run));
                        const auto est = setpush(g, t, cfg, rng);
                        values.push_back(est.value);
                        pushes += static_cast<double>(est.pushes);
                        if (theta)
                            sampled_draws += est.rng_draws;
                    }
                    const auto m = moments(values);
                    const auto label = where(text, t) + arm;
                    const double band = std::max(kMeanSigmas * m.std_error(), kZeroVarianceFloor);
                    s.unbiased.expect(std::abs(m.mean - tr(t)) <= band,
                                      label + " mean off by " + fmt(m.mean - tr(t)));
                    const double bound = static_cast<double>(hops) * th *
                                         static_cast<double>(g.degree(t)) / static_cast<double>(n) * pr(t);
                    worst_var = std::max(worst_var, m.variance / bound);
                    s.variance.expect(m.variance <= kSetPushVarSlack * bound,
                                      label + " var/bound " + fmt(m.variance / bound));
                    const double cap = 1.0 / (cfg.alpha * th);
                    worst_cost = std::max(worst_cost, pushes / kRuns / cap);
                    s.cost.expect(pushes / kRuns <= kSetPushCostSlack * cap,
                                  label + " pushes/cap " + fmt(pushes / kRuns / cap));
                }
            }
        }
        s.unbiased.note("sampling arm drew " + std::to_string(sampled_draws) + " variates");
        s.variance.note("max var/bound " + fmt(worst_var));
        s.cost.note("max pushes*alpha*theta " + fmt(worst_cost));
        return s;
    }();
    return sweep;
}

Outcome setpush_unbiased() { return setpush_sweep().unbiased.outcome(); }
Outcome setpush_variance() { return setpush_sweep().variance.outcome(); }
Outcome setpush_cost() { return setpush_sweep().cost.outcome(); }

// 7. Failure rate of |est - pi| > c pi within the binomial band around p_f.
Outcome contract() {
    Check check;
    for (const auto &text : {"complete:16", "power_law:2000:2.5:1"}) {
        bench::ExperimentSpec spec;
        spec.methods = {Method::SetPush, Method::ReverseMc};
        spec.targets.kind = bench::TargetPolicy::Kind::Uniform;
        spec.targets.k = 4;
        spec.targets.seed = 7;
        spec.repetitions = 1000;
        spec.seed = 11;
        const auto summaries = bench::summarize(bench::run_experiment(make(text), spec));
        for (const auto &s : summaries) {
            const std::string label = std::string(text) + " " + std::string(to_string(s.method));
            check.expect(*s.failure_rate <= *s.failure_bound,
                         label + " failure rate " + fmt(*s.failure_rate) + " > " + fmt(*s.failure_bound));
            check.note(label + " " + fmt(*s.failure_rate));
        }
    }
    return check.outcome();
}

// 8. Var <= d_t pi(t) / (n n_r) for the reverse walk estimator.
Outcome reverse_variance() {
    Check check;
    double worst = 0.0;
    for (const auto &text : {"star:9", "k2"}) {
        const Graph g = make(text);
        const EstimatorConfig cfg;
        const auto pr = oracle::pagerank<double>(g, cfg.alpha, 1e-15).values;
        const double n = static_cast<double>(g.node_count());
        for (NodeId t = 0; t < g.node_count(); ++t) {
            const auto walks = default_reverse_walks(g, t, cfg);
            std::vector<double> values;
            for (int batch = 0; batch < 1000; ++batch) {
                RngStream rng(8, stream_id(t, batch));
                values.push_back(reverse_mc(g, t, cfg, rng).value);
            }
            const double bound = static_cast<double>(g.degree(t)) * pr(t) / (n * static_cast<double>(walks));
            const double var = moments(values).variance;
            worst = std::max(worst, var / bound);
            check.expect(var <= kReverseVarSlack * bound, where(text, t) + " var/bound " + fmt(var / bound));
        }
    }
    check.note("max var/bound " + fmt(worst));
    return check.outcome();
}

// 9. LocalPush underestimates by at most c pi.
Outcome local_push_guarantee() {
    Check check;
    double worst = 0.0;
    for (const auto &text : mixed_suite()) {
        const Graph g = make(text);
        for (double c : {0.1, 0.5}) {
            EstimatorConfig cfg;
            cfg.c = c;
            const auto pr = oracle::pagerank<double>(g, cfg.alpha, 1e-15).values;
            for (NodeId t = 0; t < g.node_count(); ++t) {
                const double gap = pr(t) - local_push(g, t, cfg).value;
                worst = std::max(worst, gap / (c * pr(t)));
                check.expect(gap >= -kRoundingSlack && gap <= c * pr(t) + kRoundingSlack,
                             where(text, t) + " c=" + fmt(c) + " gap/(c pi) " + fmt(gap / (c * pr(t))));
            }
        }
    }
    check.note("max gap/(c pi) " + fmt(worst));
    return check.outcome();
}

// 10. Cost against target degree on a power-law graph, and the star plateau.
Outcome cost_scaling() {
    Check check;
    const Graph g = make("power_law:50000:2.5:1");
    const EstimatorConfig cfg;
    const double m = static_cast<double>(g.edge_count());
    const auto cap = static_cast<std::size_t>(0.3 * std::sqrt(m / (2 * (1 - cfg.alpha))));

    bench::ExperimentSpec spec;
    spec.targets.kind = bench::TargetPolicy::Kind::Log2Buckets;
    spec.targets.max_degree = cap;
    spec.targets.seed = 10;
    spec.with_oracle = false;
    spec.seed = 10;

    spec.methods = {Method::SetPush};
    spec.targets.k = 5;
    const auto sp = bench::scaling_study(g, spec).at(0);
    std::string rows;
    for (const auto &r : sp.rows)
        rows += (rows.empty() ? "" : " ") + fmt(r.mean_degree) + ":" + fmt(r.mean_cost);
    check.expect(sp.slope >= kSlopeLo && sp.slope <= kSlopeHi, "setpush slope " + fmt(sp.slope));
    check.note("d_t cap " + std::to_string(cap) + ", setpush slope " + fmt(sp.slope) + " [" + rows + "]");

    spec.methods = {Method::ForwardMc};
    spec.targets.k = 1;
    const auto fw = bench::scaling_study(g, spec).at(0);
    check.expect(std::abs(fw.slope) <= kFlatSlope, "forward-mc slope " + fmt(fw.slope));
    check.note("forward-mc slope " + fmt(fw.slope));

    for (const auto &text : {"star:1000", "star:10000", "star:100000"}) {
        const Graph star = make(text);
        const double sm = static_cast<double>(star.edge_count());
        const double dt = static_cast<double>(star.degree(0));
        check.expect(dt > std::sqrt(sm) && std::sqrt(2 * (1 - cfg.alpha) / sm) > 1 / dt,
                     std::string(text) + " not on the sqrt(m) branch");
        const double theta = compute_theta(star, 0, cfg);
        double pushes = 0.0;
        constexpr int kRuns = 20;
        for (int run = 0; run < kRuns; ++run) {
            RngStream rng(10, stream_id(0, run));
            pushes += static_cast<double>(setpush(star, 0, cfg, rng).pushes);
        }
        const double ratio = pushes / kRuns * cfg.alpha * theta;
        check.expect(ratio <= kSetPushCostSlack, std::string(text) + " pushes*alpha*theta " + fmt(ratio));
        check.note(std::string(text) + " pushes*alpha*theta " + fmt(ratio));
    }
    return check.outcome();
}

// 11. Skip sampler emits independent Bernoulli(p) inclusions.
Outcome sampler() {
    Check check;
    constexpr int kTrials = 100000;
    constexpr double kP = 0.4;
    RngStream rng(11, 0);
    std::array<int, 8> counts{};
    std::array<int, 3> marginal{};
    double total = 0.0;
    for (int trial = 0; trial < kTrials; ++trial) {
        unsigned mask = 0;
        for (std::size_t k : geometric_skip_sample(3, kP, rng)) {
            mask |= 1u << (k - 1);
            ++marginal[k - 1];
            total += 1.0;
        }
        ++counts[mask];
    }
    double chi2 = 0.0;
    for (unsigned mask = 0; mask < 8; ++mask) {
        const int ones = std::popcount(mask);
        const double expect = kTrials * std::pow(kP, ones) * std::pow(1 - kP, 3 - ones);
        chi2 += (counts[mask] - expect) * (counts[mask] - expect) / expect;
    }
    check.expect(chi2 < kChi2Df7P001, "pattern chi2 " + fmt(chi2));
    const double msd = std::sqrt(kP * (1 - kP) / kTrials);
    for (int k = 0; k < 3; ++k)
        check.expect(std::abs(static_cast<double>(marginal[k]) / kTrials - kP) <= kMeanSigmas * msd,
                     "marginal " + std::to_string(k + 1));
    const double csd = std::sqrt(3 * kP * (1 - kP) / kTrials);
    check.expect(std::abs(total / kTrials - 3 * kP) <= kMeanSigmas * csd, "expected count");
    check.note("chi2 " + fmt(chi2) + " (df 7)");
    return check.outcome();
}

// 12. Repeated CLI invocations with the same seed produce identical bytes.
struct Captured {
    int status = -1;
    std::string out;
};

Captured capture(const std::string &args) {
    const std::string cmd = std::string(SETPUSH_CLI_PATH) + " " + args + " 2>/dev/null";
    Captured c;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return c;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        c.out.append(buf.data(), got);
    c.status = pclose(pipe);
    return c;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
    Check check;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "setpush_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string graph = "--gen power_law:300:2.5:1";
    const std::vector<std::string> commands{
        "query " + graph + " --target 5 --method setpush --seed 3 --json",
        "query " + graph + " --target 5 --method setpush --theta 0.01 --seed 3 --json",
        "query " + graph + " --target 5 --method reverse-mc --seed 3 --json",
        "query " + graph + " --target 5 --method forward-mc --walks 20000 --seed 3 --json",
        "query " + graph + " --target 5 --method local-push --seed 3 --json",
        "query " + graph + " --target 5 --theta 0.01 --reps 12 --groups 4 --seed 3 --json",
        "validate " + graph + " --json",
    };
    for (const auto &cmd : commands) {
        const auto a = capture(cmd);
        const auto b = capture(cmd);
        check.expect(a.status == 0 && !a.out.empty(), cmd + " exited " + std::to_string(a.status));
        check.expect(a.out == b.out, cmd + " differs");
    }
    const std::string bench = "bench " + graph +
                              " --method setpush,reverse-mc --policy log2_buckets --k 2 --reps 5 "
                              "--seed 4 --json --out-dir ";
    const auto a = capture(bench + (dir / "a").string());
    const auto b = capture(bench + (dir / "b").string());
    check.expect(a.status == 0 && !a.out.empty(), "bench exited " + std::to_string(a.status));
    check.expect(a.out == b.out, "bench stdout differs");
    for (const auto &file : {"records.csv", "summary.json"})
        check.expect(slurp(dir / "a" / file) == slurp(dir / "b" / file), std::string("bench ") + file + " differs");
    fs::remove_all(dir);
    return check.outcome();
}

struct Criterion {
    const char *name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {"oracle identities", oracle_identities},
        {"truncation bound", truncation_bound},
        {"setpush deterministic regime", deterministic_regime},
        {"setpush unbiasedness", setpush_unbiased},
        {"setpush variance bound", setpush_variance},
        {"setpush cost bound", setpush_cost},
        {"(c, p_f) contract", contract},
        {"reverse-mc variance bound", reverse_variance},
        {"local-push guarantee", local_push_guarantee},
        {"cost scaling", cost_scaling},
        {"geometric sampler", sampler},
        {"cli determinism", determinism},
    };
    return all;
}

} // namespace
} // namespace setpush

int main(int argc, char **argv) {
    using setpush::criteria;
    using setpush::Outcome;
    CLI::App app{"SetPush acceptance checks"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Run only these criteria (1-12)")
        ->check(CLI::Range(1, static_cast<int>(criteria().size())));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria().size()); ++i)
            selected.push_back(i);

    int failed = 0;
    for (int id : selected) {
        const auto &c = criteria()[static_cast<std::size_t>(id - 1)];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
