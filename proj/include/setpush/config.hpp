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

#ifndef SETPUSH_CONFIG_HPP_
#define SETPUSH_CONFIG_HPP_

#include <cmath>
#include <cstddef>
#include <optional>

#include "setpush/errors.hpp"

namespace setpush {

/// Parameters shared by all estimators. The approximation target is
/// |estimate - pi(t)| <= c pi(t) with probability at least 1 - p_f.
struct EstimatorConfig {
    double alpha = 0.2;
    double c = 0.1;
    double p_f = 0.1;
    std::optional<double> theta_override;
    std::optional<std::size_t> hops_override;
    /// K in theta = alpha c^2 p_f / (K L) * max{1/d_t, sqrt(2(1-alpha)/m)}.
    double cost_constant = 4.0;
    /// When false, p_f is dropped from theta (use with cost_constant = 12
    /// for the constant-probability form).
    bool theta_scales_with_pf = true;
};

inline void validate(const EstimatorConfig &cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1)");
    if (!(cfg.c > 0.0))
        throw ConfigError("c must be positive");
    if (!(cfg.p_f > 0.0 && cfg.p_f < 1.0))
        throw ConfigError("p_f must lie in (0, 1)");
    if (!(cfg.cost_constant > 0.0))
        throw ConfigError("cost_constant must be positive");
    if (cfg.theta_override && !(*cfg.theta_override > 0.0))
        throw ConfigError("theta must be positive");
}

/// Walk-length cutoff L = ceil(log_{1-alpha}(c alpha / 2n)), floored at 0.
inline std::size_t truncation_hops(double alpha, double c, std::size_t n) {
    const double hops = std::log(c * alpha / (2.0 * static_cast<double>(n))) / std::log1p(-alpha);
    if (!(hops > 0.0))
        return 0;
    return static_cast<std::size_t>(std::ceil(hops));
}

inline std::size_t truncation_hops(const EstimatorConfig &cfg, std::size_t n) {
    if (cfg.hops_override)
        return *cfg.hops_override;
    return truncation_hops(cfg.alpha, cfg.c, n);
}

} // namespace setpush

#endif // SETPUSH_CONFIG_HPP_
