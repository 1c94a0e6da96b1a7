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

#ifndef PHASETOMO_POLYFIT_H
#define PHASETOMO_POLYFIT_H

// Least-squares fit of a radial profile to its exact model class
//
//   G_l(r) = e^{-x} r^l Q(x),   x = r^2,   Q a polynomial of degree D.
//
// Analytic profiles are fitted pointwise through y = e^x r^{-l} G_l. Sampled
// profiles are fitted as bin averages over x, weighted by 1/stderr^2. The
// basis is Chebyshev on [0, x_max] internally; results are monomial in x.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phasetomo/forward.h"

namespace phasetomo {

struct RadialFit {
    int degree = 0;
    /// q_0..q_D, coefficients of Q in powers of x.
    std::vector<std::complex<double>> coefficients;
    /// Covariance of the real parts of q (the imaginary parts share it). Zero for analytic fits.
    Eigen::MatrixXd covariance;
    /// Analytic: relative RMS residual. Sampled: sqrt(chi^2 / dof), larger of re and im.
    double misfit = 0.0;
    int points = 0;
};

/// Relative RMS residual above which an analytic fit is rejected.
constexpr double kAnalyticMisfitLimit = 1e-8;
/// sqrt(chi^2 / dof) above which a sampled fit is rejected.
constexpr double kSampledMisfitLimit = 10.0;

/// Degree of Q for a profile (s, l) of a dim-dimensional state: dim - 1 - l + s,
/// or p_degree - floor(l/2) when the degree of P = x^{floor(l/2)} Q is given explicitly.
int fit_degree(int dim, int s, int l, std::optional<int> p_degree = std::nullopt);

/// Fits Q of the given degree. Throws FitError when there are fewer usable
/// points than coefficients or the misfit exceeds its limit.
RadialFit fit_radial_polynomial(const RadialProfile &profile, int degree);

/// Mean of e^{-x} r^l x^k over the bin r_lo <= r <= r_hi with respect to x.
double bin_average_monomial(int l, int k, double r_lo, double r_hi);

}  // namespace phasetomo

#endif
