// Copyright 2026 The phasetomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasetomo/estimate.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace phasetomo {

void EstimationConfig::check() const {
    if (radial_bins < 4) {
        throw DomainError("EstimationConfig: radial_bins must be at least 4");
    }
    if (!(r_fit_max > 0.0) || !std::isfinite(r_fit_max)) {
        throw DomainError("EstimationConfig: r_fit_max must be positive");
    }
    if (poly_degree && *poly_degree < 0) {
        throw DomainError("EstimationConfig: poly_degree must be nonnegative");
    }
    if (min_count_per_bin < 1) {
        throw DomainError("EstimationConfig: min_count_per_bin must be at least 1");
    }
}

RadialProfile estimate_profile(const SampleSet &samples, int l, const EstimationConfig &cfg, EstimateStats *stats) {
    cfg.check();
    if (l < 0) {
        throw DomainError("estimate_profile: l must be nonnegative");
    }
    if (samples.count != static_cast<std::int64_t>(samples.points.size())) {
        throw EstimationError("estimate_profile: sample count does not match the number of points");
    }
    const std::int64_t needed = static_cast<std::int64_t>(cfg.radial_bins) * cfg.min_count_per_bin;
    if (samples.count < needed) {
        throw EstimationError("estimate_profile: " + std::to_string(samples.count) + " samples, need at least " +
                              std::to_string(needed));
    }
    const double r_top = samples.r_max > 0.0 ? std::min(cfg.r_fit_max, samples.r_max) : cfg.r_fit_max;
    const double width = r_top / cfg.radial_bins;
    const auto bins = static_cast<std::size_t>(cfg.radial_bins);
    std::vector<std::int64_t> hits(bins, 0);
    std::vector<double> sum_c(bins, 0.0), sum_s(bins, 0.0), sum_cc(bins, 0.0), sum_ss(bins, 0.0);
    for (const PhasePoint &z : samples.points) {
        if (z.r() >= r_top) {
            continue;
        }
        const auto b = std::min(bins - 1, static_cast<std::size_t>(z.r() / width));
        const double c = std::cos(l * z.theta());
        const double s = std::sin(l * z.theta());
        ++hits[b];
        sum_c[b] += c;
        sum_s[b] += s;
        sum_cc[b] += c * c;
        sum_ss[b] += s * s;
    }

    RadialProfile out;
    out.s = samples.s;
    out.l = l;
    out.kind = ProfileKind::sampled;
    EstimateStats local;
    const double n = static_cast<double>(samples.count);
    const double mass = 1.0 - samples.truncated_mass;
    for (std::size_t b = 0; b < bins; ++b) {
        if (hits[b] < cfg.min_count_per_bin) {
            ++local.bins_dropped;
            continue;
        }
        ++local.bins_used;
        const double r1 = width * static_cast<double>(b);
        const double r2 = width * static_cast<double>(b + 1);
        const double scale = mass / (r2 * r2 - r1 * r1);
        const double mean_c = sum_c[b] / n;
        const double mean_s = sum_s[b] / n;
        const double var_c = std::max(0.0, sum_cc[b] / n - mean_c * mean_c);
        const double var_s = std::max(0.0, sum_ss[b] / n - mean_s * mean_s);
        out.radii.push_back(0.5 * (r1 + r2));
        out.bin_lo.push_back(r1);
        out.bin_hi.push_back(r2);
        out.values.emplace_back(scale * mean_c, l == 0 ? 0.0 : scale * mean_s);
        out.std_error.push_back(scale * std::sqrt(std::max(var_c, var_s) / n));
    }
    if (stats != nullptr) {
        *stats = local;
    }
    out.check();
    return out;
}

}  // namespace phasetomo
