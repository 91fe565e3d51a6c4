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
#include <charconv>
#include <cmath>
#include <sstream>

#include "setpush/errors.hpp"
#include "setpush/graph.hpp"
#include "setpush/sampling.hpp"

namespace setpush {

namespace {

void require_n(std::size_t n, std::size_t min, const char *kind) {
    if (n < min)
        throw ValidationError(std::string(kind) + " needs n >= " + std::to_string(min) +
                              ", got " + std::to_string(n));
}

// Any node with no incident edge gets one edge to a uniformly random other
// node. Checked against the final (deduplicated) degree, so a node whose
// only edges were self-loops is patched too.
void attach_isolated(std::size_t n, EdgeList &edges, RngStream &rng) {
    std::vector<bool> touched(n, false);
    for (auto [u, v] : edges) {
        if (u != v) {
            touched[u] = true;
            touched[v] = true;
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (touched[u])
            continue;
        auto v = static_cast<NodeId>(rng.below(n - 1));
        if (v >= u)
            ++v;
        edges.emplace_back(static_cast<NodeId>(u), v);
        touched[v] = true;
    }
}

Graph make(const gen::Complete &spec) {
    require_n(spec.n, 2, "complete");
    EdgeList edges;
    edges.reserve(spec.n * (spec.n - 1) / 2);
    for (NodeId u = 0; u < spec.n; ++u)
        for (NodeId v = u + 1; v < spec.n; ++v)
            edges.emplace_back(u, v);
    return Graph::from_edges(spec.n, std::move(edges));
}

Graph make(const gen::Star &spec) {
    require_n(spec.n, 2, "star");
    EdgeList edges;
    for (NodeId v = 1; v < spec.n; ++v)
        edges.emplace_back(0, v);
    return Graph::from_edges(spec.n, std::move(edges));
}

Graph make(const gen::Path &spec) {
    require_n(spec.n, 2, "path");
    EdgeList edges;
    for (NodeId v = 1; v < spec.n; ++v)
        edges.emplace_back(v - 1, v);
    return Graph::from_edges(spec.n, std::move(edges));
}

Graph make(const gen::Ring &spec) {
    require_n(spec.n, 3, "ring");
    EdgeList edges;
    for (NodeId v = 0; v < spec.n; ++v)
        edges.emplace_back(v, static_cast<NodeId>((v + 1) % spec.n));
    return Graph::from_edges(spec.n, std::move(edges));
}

Graph make(const gen::ErdosRenyi &spec) {
    require_n(spec.n, 2, "erdos_renyi");
    if (!(spec.p > 0.0 && spec.p <= 1.0))
        throw ValidationError("erdos_renyi needs 0 < p <= 1");
    RngStream rng(spec.seed, 0);
    EdgeList edges;
    // Row u chooses among the n-1-u partners above it.
    for (NodeId u = 0; u + 1 < spec.n; ++u) {
        geometric_skip_sample(spec.n - 1 - u, spec.p, rng, [&](std::size_t k) {
            edges.emplace_back(u, static_cast<NodeId>(u + k));
        });
    }
    attach_isolated(spec.n, edges, rng);
    return Graph::from_edges(spec.n, std::move(edges));
}

Graph make(const gen::PowerLaw &spec) {
    require_n(spec.n, 2, "power_law");
    if (!(spec.exponent > 1.0))
        throw ValidationError("power_law needs exponent > 1");
    constexpr double kMinDegree = 2.0;
    RngStream rng(spec.seed, 0);
    const auto cap = static_cast<double>(spec.n - 1);
    std::vector<NodeId> stubs;
    for (NodeId u = 0; u < spec.n; ++u) {
        const double x = kMinDegree * std::pow(rng.uniform(), -1.0 / (spec.exponent - 1.0));
        const auto k = static_cast<std::size_t>(std::min(std::floor(x), cap));
        stubs.insert(stubs.end(), k, u);
    }
    if (stubs.size() % 2 == 1)
        stubs.pop_back();
    // Fisher-Yates with the stream's own bounded draws keeps this portable.
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);
    EdgeList edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        edges.emplace_back(stubs[i], stubs[i + 1]);
    attach_isolated(spec.n, edges, rng);
    return Graph::from_edges(spec.n, std::move(edges));
}

template <typename T>
T parse_number(std::string_view tok, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError("bad " + std::string(what) + " '" + std::string(tok) +
                              "' in generator spec");
    return value;
}

} // namespace

Graph generate(const GeneratorSpec &spec) {
    return std::visit([](const auto &s) { return make(s); }, spec);
}

GeneratorSpec parse_generator_spec(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos)
            break;
        start = colon + 1;
    }
    const auto kind = parts[0];
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() - 1 < lo || parts.size() - 1 > hi)
            throw ValidationError("generator '" + std::string(kind) + "' takes " +
                                  std::to_string(lo) + ".." + std::to_string(hi) + " parameters");
    };
    auto size_at = [&](std::size_t i) { return parse_number<std::size_t>(parts[i], "node count"); };

    if (parts.size() == 1 && kind.size() > 1 && (kind[0] == 'k' || kind[0] == 'p')) {
        const auto n = parse_number<std::size_t>(kind.substr(1), "node count");
        if (kind[0] == 'k')
            return gen::Complete{n};
        return gen::Path{n};
    }
    if (kind == "complete") {
        arity(1, 1);
        return gen::Complete{size_at(1)};
    }
    if (kind == "star") {
        arity(1, 1);
        return gen::Star{size_at(1)};
    }
    if (kind == "path") {
        arity(1, 1);
        return gen::Path{size_at(1)};
    }
    if (kind == "ring") {
        arity(1, 1);
        return gen::Ring{size_at(1)};
    }
    if (kind == "power_law") {
        arity(1, 3);
        gen::PowerLaw s{size_at(1)};
        if (parts.size() > 2)
            s.exponent = parse_number<double>(parts[2], "exponent");
        if (parts.size() > 3)
            s.seed = parse_number<std::uint64_t>(parts[3], "seed");
        return s;
    }
    if (kind == "erdos_renyi") {
        arity(2, 3);
        gen::ErdosRenyi s{size_at(1), parse_number<double>(parts[2], "probability")};
        if (parts.size() > 3)
            s.seed = parse_number<std::uint64_t>(parts[3], "seed");
        return s;
    }
    throw ValidationError("unknown generator '" + std::string(kind) + "'");
}

std::string to_string(const GeneratorSpec &spec) {
    std::ostringstream os;
    std::visit(
        [&](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, gen::Complete>)
                os << "complete:" << s.n;
            else if constexpr (std::is_same_v<T, gen::Star>)
                os << "star:" << s.n;
            else if constexpr (std::is_same_v<T, gen::Path>)
                os << "path:" << s.n;
            else if constexpr (std::is_same_v<T, gen::Ring>)
                os << "ring:" << s.n;
            else if constexpr (std::is_same_v<T, gen::PowerLaw>)
                os << "power_law:" << s.n << ':' << s.exponent << ':' << s.seed;
            else
                os << "erdos_renyi:" << s.n << ':' << s.p << ':' << s.seed;
        },
        spec);
    return os.str();
}

} // namespace setpush
