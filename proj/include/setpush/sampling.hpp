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

#ifndef SETPUSH_SAMPLING_HPP_
#define SETPUSH_SAMPLING_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "setpush/errors.hpp"
#include "setpush/graph.hpp"

namespace setpush {

__extension__ using Uint128 = unsigned __int128;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream id for repetition @a rep of query @a query. Fixed layout:
/// high 32 bits query index, low 32 bits repetition index.
constexpr std::uint64_t stream_id(std::uint64_t query, std::uint64_t rep) noexcept {
    return (query << 32) | (rep & 0xffffffffULL);
}

/**
 * Seeded random stream.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. It is seeded with mix64(seed ^ mix64(stream_id)), so every
 * (seed, stream_id) pair names its own sequence. Uniform variates are built
 * from raw engine words here rather than through <random> distributions,
 * whose algorithms differ between standard libraries.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), engine_(mix64(seed ^ mix64(stream))) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }
    /// Engine words consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0)
            throw ContractViolation("below(0)");
        Uint128 prod = static_cast<Uint128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(prod);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                prod = static_cast<Uint128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(prod);
            }
        }
        return static_cast<std::uint64_t>(prod >> 64);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

/**
 * Walks the 1-based positions 1..limit, stopping at each one independently
 * with probability p. Gaps are Geometric(p) on {1, 2, ...}, drawn by
 * inversion as 1 + floor(ln U / ln(1 - p)), so the work is proportional to
 * the number of positions emitted plus one.
 */
class GeometricSampleCursor {
public:
    GeometricSampleCursor(std::size_t limit, double p) : limit_(limit), p_(p) {
        if (!(p > 0.0))
            throw ContractViolation("geometric sampling needs p > 0");
        if (p > 1.0)
            throw ContractViolation("geometric sampling needs p <= 1");
        log_q_ = p < 1.0 ? std::log1p(-p) : 0.0;
    }

    /// Next emitted position, or nullopt once the cursor passes the limit.
    std::optional<std::size_t> next(RngStream &rng) {
        if (idx_ > limit_)
            return std::nullopt;
        double gap = 1.0;
        if (p_ < 1.0)
            gap += std::floor(std::log(rng.uniform()) / log_q_);
        if (gap > static_cast<double>(limit_ - idx_)) {
            idx_ = limit_ + 1;
            return std::nullopt;
        }
        idx_ += static_cast<std::size_t>(gap);
        return idx_;
    }

    std::size_t position() const noexcept { return idx_; }
    double success_prob() const noexcept { return p_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
    double p_;
    double log_q_ = 0.0;
    std::size_t idx_ = 0;
};

/// Calls @a emit(k) for each selected 1-based position k, ascending.
template <typename Emit>
void geometric_skip_sample(std::size_t d, double p_star, RngStream &rng, Emit &&emit) {
    GeometricSampleCursor cursor(d, p_star);
    while (auto k = cursor.next(rng))
        emit(*k);
}

std::vector<std::size_t> geometric_skip_sample(std::size_t d, double p_star, RngStream &rng);

struct WalkResult {
    NodeId terminal;
    std::uint64_t steps; // moves taken before stopping
};

/// alpha-discounted random walk: stop with probability alpha at each node,
/// otherwise move to a uniformly random neighbor.
WalkResult alpha_walk(const Graph &g, NodeId start, double alpha, RngStream &rng);

/// Median of the means of @a groups contiguous, near-equal chunks. The
/// lower median is taken for an even number of groups.
double median_of_means(std::span<const double> estimates, std::size_t groups);

/// ceil(8 ln(1/p_f)).
std::size_t default_group_count(double p_f);

} // namespace setpush

#endif // SETPUSH_SAMPLING_HPP_
