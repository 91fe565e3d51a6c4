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

// Exact reference quantities for small graphs: PageRank by power iteration,
// personalized PageRank, per-hop PPR tables and truncated PageRank. All
// routines are templated on the scalar type so they can be re-run in long
// double as a cross-check.

#ifndef SETPUSH_ORACLE_HPP_
#define SETPUSH_ORACLE_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "setpush/config.hpp"
#include "setpush/errors.hpp"
#include "setpush/graph.hpp"

namespace setpush::oracle {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest n for which dense n x n computations are allowed.
inline constexpr std::size_t kDenseNodeLimit = 10000;
/// Memory ceiling for the stacked per-hop tables.
inline constexpr std::size_t kDenseByteLimit = std::size_t{2} << 30;

inline void require_dense(const Graph &g, std::size_t matrices, std::size_t scalar_bytes) {
    const auto n = g.node_count();
    if (n > kDenseNodeLimit)
        throw CapacityError("dense oracle limited to n <= " + std::to_string(kDenseNodeLimit) +
                            " (n = " + std::to_string(n) + "); use an estimator instead");
    if (matrices * n * n * scalar_bytes > kDenseByteLimit)
        throw CapacityError("dense per-hop tables would need " +
                            std::to_string(matrices * n * n * scalar_bytes >> 20) +
                            " MiB; use an estimator or fewer hops");
}

/// Column-stochastic P = A D^-1: P(v, u) = 1/d_u for every edge {u, v}.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> transition_matrix(const Graph &g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    std::vector<Eigen::Triplet<Scalar>> entries;
    entries.reserve(g.adjacency().size());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const Scalar w = Scalar(1) / static_cast<Scalar>(g.degree(u));
        for (NodeId v : g.neighbors(u))
            entries.emplace_back(v, u, w);
    }
    Eigen::SparseMatrix<Scalar> p(n, n);
    p.setFromTriplets(entries.begin(), entries.end());
    return p;
}

/// Exactly @a iterations applications of x <- (1-alpha) P x + (alpha/n) 1,
/// starting from the uniform vector.
template <typename Scalar>
Vector<Scalar> power_method(const Graph &g, Scalar alpha, int iterations) {
    if (iterations < 1)
        throw ValidationError("power_method needs iterations >= 1");
    if (!(alpha > 0 && alpha < 1))
        throw ValidationError("alpha must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto p = transition_matrix<Scalar>(g);
    const Scalar teleport = alpha / static_cast<Scalar>(n);
    Vector<Scalar> x = Vector<Scalar>::Constant(n, Scalar(1) / static_cast<Scalar>(n));
    for (int k = 0; k < iterations; ++k)
        x = ((1 - alpha) * (p * x)).array() + teleport;
    return x;
}

template <typename Scalar>
struct Converged {
    Vector<Scalar> values;
    int iterations = 0;
    Scalar last_change = 0; // max-norm change of the final iteration
};

/// Power iteration until the max-norm change drops to @a tol or
/// @a max_iterations is reached, whichever comes first.
template <typename Scalar>
Converged<Scalar> pagerank(const Graph &g, Scalar alpha, Scalar tol = Scalar(1e-12),
                           int max_iterations = 2000) {
    if (!(alpha > 0 && alpha < 1))
        throw ValidationError("alpha must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto p = transition_matrix<Scalar>(g);
    const Scalar teleport = alpha / static_cast<Scalar>(n);
    Converged<Scalar> out;
    out.values = Vector<Scalar>::Constant(n, Scalar(1) / static_cast<Scalar>(n));
    for (int k = 0; k < max_iterations; ++k) {
        Vector<Scalar> next = ((1 - alpha) * (p * out.values)).array() + teleport;
        out.last_change = (next - out.values).cwiseAbs().maxCoeff();
        out.values.swap(next);
        out.iterations = k + 1;
        if (out.last_change <= tol)
            break;
    }
    return out;
}

/// Personalized PageRank vector of source @a s, summed as the power series
/// sum_l alpha (1-alpha)^l P^l e_s until the remaining tail mass is below
/// machine precision.
template <typename Scalar>
Vector<Scalar> ppr_vector(const Graph &g, NodeId s, Scalar alpha) {
    require_dense(g, 0, sizeof(Scalar));
    if (!(alpha > 0 && alpha < 1))
        throw ValidationError("alpha must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    (void)g.degree(s);
    const auto p = transition_matrix<Scalar>(g);
    Vector<Scalar> term = Vector<Scalar>::Zero(n);
    term(s) = alpha;
    Vector<Scalar> sum = term;
    Scalar tail = 1 - alpha;
    while (tail > std::numeric_limits<Scalar>::epsilon() / 16) {
        term = (1 - alpha) * (p * term);
        sum += term;
        tail *= 1 - alpha;
    }
    return sum;
}

/// Per-hop PPR tables: element [l](s, t) is the probability that an
/// alpha-discounted walk from s stops at t after exactly l moves.
template <typename Scalar>
std::vector<Matrix<Scalar>> lhop_ppr_tables(const Graph &g, Scalar alpha, std::size_t max_hops) {
    require_dense(g, max_hops + 1, sizeof(Scalar));
    if (!(alpha > 0 && alpha < 1))
        throw ValidationError("alpha must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::SparseMatrix<Scalar> pt = transition_matrix<Scalar>(g).transpose();
    std::vector<Matrix<Scalar>> levels;
    levels.reserve(max_hops + 1);
    levels.push_back(alpha * Matrix<Scalar>::Identity(n, n));
    // Row s of level l+1 is (1-alpha) P applied to row s of level l.
    for (std::size_t l = 0; l < max_hops; ++l)
        levels.push_back((1 - alpha) * (levels.back() * pt));
    return levels;
}

template <typename Scalar>
struct OracleTables {
    Scalar alpha = 0;
    std::size_t max_hops = 0;
    Vector<Scalar> pagerank;
    std::vector<Matrix<Scalar>> lhop;
    Vector<Scalar> truncated;

    std::size_t node_count() const { return static_cast<std::size_t>(pagerank.size()); }
};

/// (1/n) sum_s sum_{l <= L} pi_s^(l)(t) for every t.
template <typename Scalar>
Vector<Scalar> truncated_pagerank(const std::vector<Matrix<Scalar>> &lhop) {
    if (lhop.empty())
        throw ValidationError("truncated_pagerank: no hop levels");
    const auto n = lhop.front().rows();
    Vector<Scalar> out = Vector<Scalar>::Zero(n);
    for (const auto &level : lhop)
        out += level.colwise().sum().transpose();
    return out / static_cast<Scalar>(n);
}

/// Truncated PageRank from tables, checking that the tables were built with
/// the hop count the configured relative error demands.
template <typename Scalar>
Vector<Scalar> truncated_pagerank(const OracleTables<Scalar> &tables, double c) {
    const auto want = truncation_hops(static_cast<double>(tables.alpha), c, tables.node_count());
    if (want != tables.max_hops)
        throw ValidationError("tables built with L = " + std::to_string(tables.max_hops) +
                              " but c = " + std::to_string(c) + " needs L = " +
                              std::to_string(want));
    return truncated_pagerank(tables.lhop);
}

/// Sparse route to truncated PageRank that needs no n x n storage:
/// sum_{l <= L} alpha (1-alpha)^l P^l (1/n) 1.
template <typename Scalar>
Vector<Scalar> truncated_pagerank(const Graph &g, Scalar alpha, std::size_t max_hops) {
    if (!(alpha > 0 && alpha < 1))
        throw ValidationError("alpha must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto p = transition_matrix<Scalar>(g);
    Vector<Scalar> term = Vector<Scalar>::Constant(n, alpha / static_cast<Scalar>(n));
    Vector<Scalar> sum = term;
    for (std::size_t l = 0; l < max_hops; ++l) {
        term = (1 - alpha) * (p * term);
        sum += term;
    }
    return sum;
}

template <typename Scalar>
OracleTables<Scalar> build_tables(const Graph &g, Scalar alpha, std::size_t max_hops) {
    OracleTables<Scalar> t;
    t.alpha = alpha;
    t.max_hops = max_hops;
    t.lhop = lhop_ppr_tables<Scalar>(g, alpha, max_hops);
    t.pagerank = pagerank<Scalar>(g, alpha).values;
    t.truncated = truncated_pagerank<Scalar>(t.lhop);
    return t;
}

/// CSV with header "node,pagerank,truncated"; node ids are original ids.
void write_csv(std::ostream &out, const Graph &g, const Vector<double> &pagerank,
               const Vector<double> &truncated);

} // namespace setpush::oracle

#endif // SETPUSH_ORACLE_HPP_
