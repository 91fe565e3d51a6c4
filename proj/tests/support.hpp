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

// Graph fixtures and small statistics helpers shared by the unit tests and
// the acceptance runner.

#ifndef SETPUSH_TESTS_SUPPORT_HPP_
#define SETPUSH_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "setpush/graph.hpp"

namespace setpush::testing {

inline Graph from_text(const std::string &text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

inline Graph make(const std::string &spec) { return generate(parse_generator_spec(spec)); }

/// Twenty graphs with n <= 200 across every generator family.
inline const std::vector<std::string> &mixed_suite() {
    static const std::vector<std::string> specs{
        "complete:2",          "complete:8",           "complete:16",
        "star:9",              "star:17",              "path:3",
        "path:12",             "ring:5",               "ring:40",
        "power_law:30:2.5:1",  "power_law:50:2.5:2",   "power_law:64:2.2:3",
        "power_law:100:2.5:4", "power_law:150:2.8:5",  "power_law:200:2.5:6",
        "erdos_renyi:20:0.3:1", "erdos_renyi:60:0.1:2", "erdos_renyi:100:0.05:7",
        "erdos_renyi:150:0.04:3", "erdos_renyi:200:0.03:4",
    };
    return specs;
}

/// The small graphs used for the SetPush statistical checks.
inline const std::vector<std::string> &small_suite() {
    static const std::vector<std::string> specs{"complete:2", "path:3", "star:9", "complete:8"};
    return specs;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0; // sample variance, n - 1 denominator
    std::size_t count = 0;

    double std_error() const { return std::sqrt(variance / static_cast<double>(count)); }
};

inline Moments moments(std::span<const double> xs) {
    Moments m;
    m.count = xs.size();
    for (double x : xs)
        m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    for (double x : xs)
        m.variance += (x - m.mean) * (x - m.mean);
    if (xs.size() > 1)
        m.variance /= static_cast<double>(xs.size() - 1);
    return m;
}

/// Chi-square critical value, 7 degrees of freedom, upper tail 1e-3.
inline constexpr double kChi2Df7P001 = 24.321886347856854;

} // namespace setpush::testing

#endif // SETPUSH_TESTS_SUPPORT_HPP_
