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

#ifndef SETPUSH_GRAPH_HPP_
#define SETPUSH_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace setpush {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

/**
 * Immutable simple undirected graph in CSR form.
 *
 * Every undirected edge {u, v} is stored twice, once in each endpoint's
 * adjacency list. Lists are sorted ascending, contain no self-loops and no
 * duplicates, and every node has degree at least one. Nodes are dense ids
 * 0..n-1; the id a node had in its source (file or generator) is kept as its
 * "original id" for reporting.
 */
class Graph {
public:
    /// Builds a graph on @a n nodes. Self-loops are dropped, duplicate edges
    /// are collapsed. Throws ValidationError if a node ends up isolated or
    /// n is zero. @a original_ids, if nonempty, must have length n.
    static Graph from_edges(std::size_t n, EdgeList edges,
                            std::vector<std::uint64_t> original_ids = {});

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    /// Undirected edges, each counted once.
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    std::size_t degree(NodeId u) const {
        check(u);
        return offsets_[u + 1] - offsets_[u];
    }

    /// Ascending. Element k (0-based) is the (k+1)-th neighbor.
    std::span<const NodeId> neighbors(NodeId u) const {
        check(u);
        return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    std::span<const NodeId> adjacency() const noexcept { return neighbors_; }

    std::uint64_t original_id(NodeId u) const {
        check(u);
        return original_ids_.empty() ? u : original_ids_[u];
    }
    std::optional<NodeId> find_original(std::uint64_t id) const;

    /// Self-loops removed while building.
    std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
    /// Repeated edges collapsed while building (an undirected edge listed
    /// k times counts k-1).
    std::size_t collapsed_duplicates() const noexcept { return collapsed_duplicates_; }

    /// Labelled equality: same size and the same edge set over original ids.
    friend bool operator==(const Graph &a, const Graph &b);

private:
    Graph() = default;
    void check(NodeId u) const;

    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> neighbors_;
    std::vector<std::uint64_t> original_ids_; // empty means identity
    std::unordered_map<std::uint64_t, NodeId> by_original_;
    std::size_t dropped_self_loops_ = 0;
    std::size_t collapsed_duplicates_ = 0;
};

struct GraphStats {
    double avg_degree = 0.0;
    std::size_t max_degree = 0;
    std::size_t min_degree = 0;
};

GraphStats stats(const Graph &g);

/// Parses a SNAP-style edge list. '#' and '%' lines and blank lines are
/// skipped; ids are remapped densely in order of first appearance.
Graph load_edge_list(std::istream &in);
Graph load_edge_list(const std::filesystem::path &path);

/// Canonical form: a "# n m" header, then one "a b" line per edge with
/// a < b in original-id space, sorted ascending.
void write_edge_list(const Graph &g, std::ostream &out);

/// Throws ValidationError describing the first broken structural invariant.
void validate(const Graph &g);

namespace gen {
struct Complete {
    std::size_t n;
};
struct Star {
    std::size_t n;
};
struct Path {
    std::size_t n;
};
struct Ring {
    std::size_t n;
};
/// Configuration model over a Pareto(exponent) degree sequence with minimum
/// degree 2, self-loops and multi-edges erased.
struct PowerLaw {
    std::size_t n;
    double exponent = 2.5;
    std::uint64_t seed = 0;
};
struct ErdosRenyi {
    std::size_t n;
    double p;
    std::uint64_t seed = 0;
};
} // namespace gen

using GeneratorSpec =
    std::variant<gen::Complete, gen::Star, gen::Path, gen::Ring, gen::PowerLaw, gen::ErdosRenyi>;

/// Deterministic for a fixed spec. Nodes left isolated by the random
/// families are attached to one uniformly random other node.
Graph generate(const GeneratorSpec &spec);

/// Grammar: kind:param[:param...], e.g. "complete:4", "power_law:10000:2.5:7",
/// "erdos_renyi:100:0.05:7". Shorthands "k<n>" (complete) and "p<n>" (path)
/// are accepted.
GeneratorSpec parse_generator_spec(std::string_view text);
std::string to_string(const GeneratorSpec &spec);

} // namespace setpush

#endif // SETPUSH_GRAPH_HPP_
