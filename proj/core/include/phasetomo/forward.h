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

#ifndef PHASETOMO_FORWARD_H
#define PHASETOMO_FORWARD_H

// Forward model: the outcome densities G^{|s>}_rho(r, theta) of the phase-space
// observables generated by number states |s><s|, their angular Fourier
// components, the lambda-parameterized family W^lambda, and sampling.
//
// Densities are taken against the measure d^2z / pi = r dr dtheta / pi.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "phasetomo/scalar.h"
#include "phasetomo/special_fn.h"
#include "phasetomo/states.h"

namespace phasetomo {

enum class ProfileKind { analytic, sampled };

/// Radial function r -> G^{|s>}_{rho,l}(r) for one observable index s and Fourier index l.
///
/// Sampled profiles carry a standard error per radius and the radial bin
/// [bin_lo, bin_hi] each value was averaged over (the value estimates the mean of
/// G_l over the bin with respect to x = r^2).
struct RadialProfile {
    int s = 0;
    int l = 0;
    ProfileKind kind = ProfileKind::analytic;
    std::vector<double> radii;
    std::vector<std::complex<double>> values;
    std::vector<double> std_error;
    std::vector<double> bin_lo;
    std::vector<double> bin_hi;

    /// Throws DomainError if an invariant is violated.
    void check() const;
};

/// Simulated outcomes of one observable E^{|s>} restricted to the disk r <= r_max.
struct SampleSet {
    int s = 0;
    std::int64_t count = 0;
    std::vector<PhasePoint> points;
    std::uint64_t seed = 0;
    double r_max = 0.0;
    double truncated_mass = 0.0;  ///< probability outside the disk, by quadrature
    bool truncation_warning = false;  ///< truncated_mass > 0.01
};

/// f^s_{nm}(r) = <n|D(r)|s><s|D(r)^*|m>, real and symmetric in (n, m).
double f_coeff(int s, int n, int m, double r);

/// G^{|s>}_rho(z) = sum_{m,n} rho_mn e^{i theta (n - m)} f^s_{nm}(r).
/// Throws ConsistencyError if the imaginary part exceeds 1e-8.
double density(int s, const DensityMatrix &rho, const PhasePoint &z);

/// Fast repeated evaluation of density(s, rho, .) for a fixed (s, rho):
/// factorial ratios are tabulated and Laguerre factors use the recurrence.
class DensityEvaluator {
   public:
    DensityEvaluator(int s, const DensityMatrix &rho);
    double operator()(double r, double theta) const;
    int s() const {
        return s_;
    }

   private:
    int s_;
    DensityMatrix rho_;
    std::vector<double> sqrt_ratio_;  // sqrt(min(n,s)! / max(n,s)!)
    mutable std::vector<std::complex<double>> v_;
};

/// G^{|s>}_{rho,l}(r) = sum_{n=0}^{dim-1-l} rho_{n+l,n} f^s_{n,n+l}(r) on the given radii.
RadialProfile fourier_component(int s, const DensityMatrix &rho, int l, std::span<const double> radii);

/// Cahill-Glauber function K^lambda_{n,n+l}(r), closed Laguerre form (lambda = 0 by its limit).
double cahill_glauber_K(double lambda, int n, int l, double r);

/// Same function by the finite sum over u.
double cahill_glauber_K_series(double lambda, int n, int l, double r);

/// Closed form for complex lambda, 0 < |lambda| < 1.
std::complex<double> cahill_glauber_K(std::complex<double> lambda, int n, int l, double r);

/// Polynomial parts of the two forms of K^lambda_{n,n+l}, with the common factor
/// sqrt(n!/(n+l)!) r^l e^{-(1-lambda) x} removed (x = r^2):
///   closed:  (1-lambda)^{l+1} lambda^n L^l_n((2 - lambda - 1/lambda) x)
///   series:  (n+l)! sum_u (1-lambda)^{2u+l+1} lambda^{n-u} x^u / ((n-u)! (l+u)! u!)
/// Exact over Rational (lambda != 0 for the closed part).
template <class T>
T cahill_glauber_closed_part(const T &lambda, int n, int l, const T &x) {
    const T one = ScalarTraits<T>::from_int(std::int64_t{1});
    const T two = ScalarTraits<T>::from_int(std::int64_t{2});
    T arg = (two - lambda - one / lambda) * x;
    T out = laguerre_sum<T>(l, n, arg);
    for (int i = 0; i < l + 1; ++i) {
        out *= (one - lambda);
    }
    for (int i = 0; i < n; ++i) {
        out *= lambda;
    }
    return out;
}

template <class T>
T cahill_glauber_series_part(const T &lambda, int n, int l, const T &x) {
    const T one = ScalarTraits<T>::from_int(std::int64_t{1});
    T total = ScalarTraits<T>::from_int(std::int64_t{0});
    for (int u = 0; u <= n; ++u) {
        T term = one;
        for (int i = 0; i < 2 * u + l + 1; ++i) {
            term *= (one - lambda);
        }
        for (int i = 0; i < n - u; ++i) {
            term *= lambda;
        }
        for (int i = 0; i < u; ++i) {
            term *= x;
        }
        term /= ScalarTraits<T>::from_int(factorial(n - u) * factorial(l + u) * factorial(u));
        total += term;
    }
    return total * ScalarTraits<T>::from_int(factorial(n + l));
}

/// W^lambda_rho(z) = (1 - lambda) sum_k lambda^k G^{|k>}_rho(z), truncated at the
/// first K with lambda^{K+1} <= 1e-12 (each |G^{|k>}| <= 1).
double w_lambda_density(double lambda, const DensityMatrix &rho, const PhasePoint &z);

/// W^lambda_rho(z) for complex lambda (0 < |lambda| < 1) assembled from the
/// closed Cahill-Glauber form: sum_{m,n} rho_mn e^{i theta (n-m)} K^lambda_{nm}(r).
std::complex<double> w_lambda_density_closed(std::complex<double> lambda, const DensityMatrix &rho,
                                             const PhasePoint &z);

/// (1/s!) d^s/dlambda^s [(1-lambda)^{-1} W^lambda_rho(z)] at lambda = 0, extracted
/// as a power-series coefficient by the Cauchy integral on |lambda| = radius
/// with `nodes` equally spaced points.
double lambda_series_coefficient(int s, const DensityMatrix &rho, const PhasePoint &z, double radius = 0.5,
                                 int nodes = 64);

/// Detector efficiency eta in (0, 1] to lambda = 1 - eta.
double efficiency_to_lambda(double eta);

/// Default sampling disk radius 4 + sqrt(dim) + sqrt(s).
double default_r_max(int dim, int s);

/// Probability mass of G^{|s>}_rho on the disk r <= r_max: composite Gauss-Legendre
/// in x = r^2 times a 256-node trapezoid rule in theta.
double disk_mass(int s, const DensityMatrix &rho, double r_max);

/// Rejection sampling of `count` outcomes on the disk r <= r_max. Proposals are
/// uniform in (r^2, theta); a proposal z is accepted with probability G(z) <= 1.
/// Deterministic for a given seed.
SampleSet sample(int s, const DensityMatrix &rho, std::int64_t count, std::uint64_t seed, double r_max);

}  // namespace phasetomo

#endif
