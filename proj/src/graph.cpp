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

#include "setpush/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "setpush/errors.hpp"

namespace setpush {

Graph Graph::from_edges(std::size_t n, EdgeList edges, std::vector<std::uint64_t> original_ids) {
    if (n == 0)
        throw ValidationError("empty graph");
    if (n > std::numeric_limits<NodeId>::max())
        throw ValidationError("too many nodes: " + std::to_string(n));
    if (!original_ids.empty() && original_ids.size() != n)
        throw ValidationError("original id table does not match node count");

    Graph g;
    g.original_ids_ = std::move(original_ids);

    // Directed copies, both orientations, then sort + unique per row.
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw IndexError("edge endpoint out of range");
        if (u == v) {
            ++g.dropped_self_loops_;
            continue;
        }
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    edges.clear();
    edges.shrink_to_fit();

    std::sort(arcs.begin(), arcs.end());
    const auto before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    g.collapsed_duplicates_ = (before - arcs.size()) / 2;

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs)
        ++g.offsets_[u + 1];
    for (std::size_t u = 0; u < n; ++u)
        g.offsets_[u + 1] += g.offsets_[u];
    g.neighbors_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
        g.neighbors_[i] = arcs[i].second;

    for (std::size_t u = 0; u < n; ++u) {
        if (g.offsets_[u + 1] == g.offsets_[u]) {
            const auto id = g.original_ids_.empty() ? u : g.original_ids_[u];
            throw ValidationError("node " + std::to_string(id) + " has degree 0");
        }
    }

    if (!g.original_ids_.empty()) {
        g.by_original_.reserve(n);
        for (std::size_t u = 0; u < n; ++u)
            g.by_original_.emplace(g.original_ids_[u], static_cast<NodeId>(u));
    }
    return g;
}

void Graph::check(NodeId u) const {
    if (u >= node_count())
        throw IndexError("node " + std::to_string(u) + " out of range [0, " +
                         std::to_string(node_count()) + ")");
}

std::optional<NodeId> Graph::find_original(std::uint64_t id) const {
    if (original_ids_.empty()) {
        if (id < node_count())
            return static_cast<NodeId>(id);
        return std::nullopt;
    }
    if (auto it = by_original_.find(id); it != by_original_.end())
        return it->second;
    return std::nullopt;
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> labelled_edges(const Graph &g) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto a = g.original_id(u);
        for (NodeId v : g.neighbors(u)) {
            const auto b = g.original_id(v);
            if (a < b)
                out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool operator==(const Graph &a, const Graph &b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    return labelled_edges(a) == labelled_edges(b);
}

GraphStats stats(const Graph &g) {
    GraphStats s;
    s.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
    s.min_degree = std::numeric_limits<std::size_t>::max();
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto d = g.degree(u);
        s.max_degree = std::max(s.max_degree, d);
        s.min_degree = std::min(s.min_degree, d);
    }
    return s;
}

namespace {

bool parse_id(std::string_view tok, std::uint64_t &out) {
    const auto *first = tok.data();
    const auto *last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (i > start)
            toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

} // namespace

Graph load_edge_list(std::istream &in) {
    std::unordered_map<std::uint64_t, NodeId> dense;
    std::vector<std::uint64_t> original;
    EdgeList edges;

    auto intern = [&](std::uint64_t id) {
        auto [it, inserted] = dense.try_emplace(id, static_cast<NodeId>(original.size()));
        if (inserted)
            original.push_back(id);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#' || toks[0].front() == '%')
            continue;
        if (toks.size() != 2)
            throw ParseError(lineno, "expected two node ids, got " + std::to_string(toks.size()) +
                                         " fields");
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        if (!parse_id(toks[0], a) || !parse_id(toks[1], b))
            throw ParseError(lineno, "node ids must be nonnegative integers");
        const auto u = intern(a);
        const auto v = intern(b);
        edges.emplace_back(u, v);
    }
    if (in.bad())
        throw IoError("read failure after line " + std::to_string(lineno));
    if (original.empty())
        throw ValidationError("empty graph: no edges found");

    const auto n = original.size();
    return Graph::from_edges(n, std::move(edges), std::move(original));
}

Graph load_edge_list(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return load_edge_list(in);
}

void write_edge_list(const Graph &g, std::ostream &out) {
    out << "# " << g.node_count() << ' ' << g.edge_count() << '\n';
    for (auto [a, b] : labelled_edges(g))
        out << a << ' ' << b << '\n';
}

void validate(const Graph &g) {
    const auto n = g.node_count();
    const auto offs = g.offsets();
    if (offs.front() != 0 || offs.back() != g.adjacency().size())
        throw ValidationError("offsets do not span the adjacency array");
    for (NodeId u = 0; u < n; ++u) {
        if (offs[u + 1] < offs[u])
            throw ValidationError("offsets decrease at node " + std::to_string(u));
        const auto nb = g.neighbors(u);
        if (nb.empty())
            throw ValidationError("node " + std::to_string(g.original_id(u)) + " has degree 0");
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] >= n)
                throw ValidationError("neighbor out of range at node " + std::to_string(u));
            if (nb[k] == u)
                throw ValidationError("self-loop at node " + std::to_string(u));
            if (k > 0 && nb[k] <= nb[k - 1])
                throw ValidationError("adjacency of node " + std::to_string(u) +
                                      " not strictly ascending");
            const auto back = g.neighbors(nb[k]);
            if (!std::binary_search(back.begin(), back.end(), u))
                throw ValidationError("asymmetric edge " + std::to_string(u) + "-" +
                                      std::to_string(nb[k]));
        }
    }
}

} // namespace setpush
