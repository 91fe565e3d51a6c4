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

#include "setpush/oracle.hpp"

#include <cstdio>
#include <ostream>

namespace setpush::oracle {

void write_csv(std::ostream &out, const Graph &g, const Vector<double> &pagerank,
               const Vector<double> &truncated) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (pagerank.size() != n || truncated.size() != n)
        throw ValidationError("oracle vectors do not match the graph");
    out << "node,pagerank,truncated\n";
    char buf[64];
    for (Eigen::Index u = 0; u < n; ++u) {
        out << g.original_id(static_cast<NodeId>(u));
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", pagerank(u), truncated(u));
        out << buf;
    }
}

} // namespace setpush::oracle
