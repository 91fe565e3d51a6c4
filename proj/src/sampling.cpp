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

#include "setpush/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace setpush {

std::vector<std::size_t> geometric_skip_sample(std::size_t d, double p_star, RngStream &rng) {
    std::vector<std::size_t> out;
    geometric_skip_sample(d, p_star, rng, [&](std::size_t k) { out.push_back(k); });
    return out;
}

WalkResult alpha_walk(const Graph &g, NodeId start, double alpha, RngStream &rng) {
    NodeId cur = start;
    std::uint64_t steps = 0;
    while (rng.uniform() >= alpha) {
        const auto nb = g.neighbors(cur);
        cur = nb[rng.below(nb.size())];
        ++steps;
    }
    return {cur, steps};
}

double median_of_means(std::span<const double> estimates, std::size_t groups) {
    if (estimates.empty())
        throw ValidationError("median_of_means: no estimates");
    if (groups < 1 || groups > estimates.size())
        throw ValidationError("median_of_means: groups must be in [1, " +
                              std::to_string(estimates.size()) + "]");

    const auto len = estimates.size();
    const auto base = len / groups;
    const auto extra = len % groups;
    std::vector<double> means;
    means.reserve(groups);
    std::size_t pos = 0;
    for (std::size_t gi = 0; gi < groups; ++gi) {
        const auto size = base + (gi < extra ? 1 : 0);
        const auto chunk = estimates.subspan(pos, size);
        means.push_back(std::accumulate(chunk.begin(), chunk.end(), 0.0) /
                        static_cast<double>(size));
        pos += size;
    }
    const auto mid = means.begin() + static_cast<std::ptrdiff_t>((groups - 1) / 2);
    std::nth_element(means.begin(), mid, means.end());
    return *mid;
}

std::size_t default_group_count(double p_f) {
    if (!(p_f > 0.0 && p_f < 1.0))
        throw ValidationError("p_f must lie in (0, 1)");
    return static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / p_f)));
}

} // namespace setpush
