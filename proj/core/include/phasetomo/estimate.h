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

#ifndef PHASETOMO_ESTIMATE_H
#define PHASETOMO_ESTIMATE_H

#include <optional>

#include "phasetomo/forward.h"

namespace phasetomo {

struct EstimationConfig {
    int radial_bins = 48;
    double r_fit_max = 4.0;
    /// Degree of the auxiliary polynomial x^h Q(x); automatic (exact) when unset.
    std::optional<int> poly_degree;
    int min_count_per_bin = 20;

    /// Throws DomainError unless radial_bins >= 4, r_fit_max > 0, poly_degree >= 0 and min_count_per_bin >= 1.
    void check() const;
};

struct EstimateStats {
    int bins_used = 0;
    int bins_dropped = 0;  ///< bins below min_count_per_bin
};

/// Binned estimate of G^{|s>}_{rho,l} from samples.
///
/// [0, min(r_fit_max, r_max)] is cut into equal-width bins. For the bin [r1, r2]
/// the estimate is
///   (1 - truncated_mass) / (count (r2^2 - r1^2)) * sum_{i in bin} e^{i l theta_i},
/// the mean of G_l over the bin in x = r^2, reported at the bin midpoint. The
/// standard error is that of the mean of the per-sample summand over all
/// samples, taking the larger of the real and imaginary parts. Bins with fewer
/// than min_count_per_bin samples are dropped.
///
/// Throws EstimationError if count < radial_bins * min_count_per_bin.
RadialProfile estimate_profile(const SampleSet &samples, int l, const EstimationConfig &cfg,
                               EstimateStats *stats = nullptr);

}  // namespace phasetomo

#endif
