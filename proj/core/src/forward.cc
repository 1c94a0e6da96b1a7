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

#include "phasetomo/forward.h"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace phasetomo {

namespace {

constexpr double kImaginaryTolerance = 1e-8;
constexpr double kLambdaTailBound = 1e-12;
constexpr int kAngularNodes = 256;
constexpr double kTruncationWarning = 0.01;

double uniform53(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// <n| D(r) |s> for real r >= 0.
double real_displacement(int n, int s, double r) {
    return displacement_element(n, s, PhasePoint(r, 0.0)).real();
}

// Composite Gauss-Legendre on [0, x_max] applied to g(x).
template <class F>
double integrate_x(double x_max, F &&g) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const int panels = std::max(1, static_cast<int>(std::ceil(x_max / 2.0)));
    const double width = x_max / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = p * width;
        total += Rule::integrate(g, a, a + width);
    }
    return total;
}

}  // namespace

void RadialProfile::check() const {
    if (s < 0 || l < 0) {
        throw DomainError("RadialProfile: s and l must be nonnegative");
    }
    if (radii.size() != values.size()) {
        throw DomainError("RadialProfile: radii and values differ in length");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!std::isfinite(radii[i]) || radii[i] < 0.0) {
            throw DomainError("RadialProfile: radii must be finite and nonnegative");
        }
        if (i > 0 && !(radii[i] > radii[i - 1])) {
            throw DomainError("RadialProfile: radii must be strictly increasing");
        }
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
            throw DomainError("RadialProfile: values must be finite");
        }
        if (l == 0 && std::abs(values[i].imag()) > 1e-10) {
            throw DomainError("RadialProfile: l = 0 profile values must be real");
        }
    }
    if (kind == ProfileKind::sampled) {
        if (std_error.size() != radii.size() || bin_lo.size() != radii.size() || bin_hi.size() != radii.size()) {
            throw DomainError("RadialProfile: sampled profile needs stderr and bin edges for every radius");
        }
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(std_error[i] >= 0.0) || !std::isfinite(std_error[i])) {
                throw DomainError("RadialProfile: stderr must be finite and nonnegative");
            }
            if (!(bin_lo[i] >= 0.0 && bin_lo[i] < bin_hi[i])) {
                throw DomainError("RadialProfile: bin edges must satisfy 0 <= lo < hi");
            }
        }
    } else if (!std_error.empty()) {
        throw DomainError("RadialProfile: analytic profiles carry no stderr");
    }
}

double f_coeff(int s, int n, int m, double r) {
    if (s < 0 || n < 0 || m < 0) {
        throw DomainError("f_coeff: indices must be nonnegative");
    }
    if (r < 0.0) {
        throw DomainError("f_coeff: r must be nonnegative");
    }
    return real_displacement(n, s, r) * real_displacement(m, s, r);
}

double density(int s, const DensityMatrix &rho, const PhasePoint &z) {
    if (s < 0) {
        throw DomainError("density: s must be nonnegative");
    }
    // With v_n = <n|D(z)|s>, e^{i theta (n-m)} f^s_{nm}(r) = v_n conj(v_m), so the
    // double sum is v^dagger rho v.
    const int dim = rho.dim();
    Eigen::VectorXcd v(dim);
    for (int n = 0; n < dim; ++n) {
        v(n) = displacement_element(n, s, z);
    }
    std::complex<double> g = v.dot(rho.entries() * v);
    if (std::abs(g.imag()) > kImaginaryTolerance) {
        throw ConsistencyError("density: imaginary part " + std::to_string(g.imag()) + " (is rho Hermitian?)");
    }
    return g.real();
}

DensityEvaluator::DensityEvaluator(int s, const DensityMatrix &rho) : s_(s), rho_(rho) {
    if (s < 0) {
        throw DomainError("DensityEvaluator: s must be nonnegative");
    }
    sqrt_ratio_.resize(static_cast<std::size_t>(rho.dim()));
    for (int n = 0; n < rho.dim(); ++n) {
        sqrt_ratio_[static_cast<std::size_t>(n)] = std::exp(log_sqrt_factorial_ratio(std::min(n, s), std::max(n, s)));
    }
    v_.resize(static_cast<std::size_t>(rho.dim()));
}

double DensityEvaluator::operator()(double r, double theta) const {
    const int dim = rho_.dim();
    const double x = r * r;
    const double damping = std::exp(-0.5 * x);
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> phase = 1.0;
    for (int n = 0; n < dim; ++n) {
        const int gap = std::abs(n - s_);
        double mag = sqrt_ratio_[static_cast<std::size_t>(n)] * damping * laguerre(gap, std::min(n, s_), x);
        if (gap > 0) {
            mag *= std::pow(r, gap);
        }
        if (s_ > n && gap % 2 != 0) {
            mag = -mag;
        }
        v_[static_cast<std::size_t>(n)] = phase * mag;
        phase *= step;
    }
    const auto &e = rho_.entries();
    double total = 0.0;
    for (int m = 0; m < dim; ++m) {
        const auto vm = v_[static_cast<std::size_t>(m)];
        total += e(m, m).real() * std::norm(vm);
        for (int n = m + 1; n < dim; ++n) {
            total += 2.0 * (std::conj(vm) * e(m, n) * v_[static_cast<std::size_t>(n)]).real();
        }
    }
    return total;
}

RadialProfile fourier_component(int s, const DensityMatrix &rho, int l, std::span<const double> radii) {
    if (l < 0 || l >= rho.dim()) {
        throw DomainError("fourier_component: l must lie in [0, dim)");
    }
    RadialProfile out;
    out.s = s;
    out.l = l;
    out.kind = ProfileKind::analytic;
    out.radii.assign(radii.begin(), radii.end());
    out.values.reserve(radii.size());
    for (double r : radii) {
        std::complex<double> g = 0.0;
        for (int n = 0; n + l < rho.dim(); ++n) {
            g += rho(n + l, n) * f_coeff(s, n, n + l, r);
        }
        if (l == 0) {
            g.imag(0.0);
        }
        out.values.push_back(g);
    }
    out.check();
    return out;
}

double cahill_glauber_K(double lambda, int n, int l, double r) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("cahill_glauber_K: lambda must lie in [0, 1)");
    }
    if (n < 0 || l < 0) {
        throw DomainError("cahill_glauber_K: indices must be nonnegative");
    }
    const double x = r * r;
    if (lambda == 0.0) {
        // Only the u = n term of the series survives.
        return std::pow(r, 2 * n + l) * std::exp(-x) / std::sqrt(factorial_f(n) * factorial_f(n + l));
    }
    const double prefactor = std::exp(log_sqrt_factorial_ratio(n, n + l) - (1.0 - lambda) * x) * std::pow(r, l);
    return prefactor * cahill_glauber_closed_part<double>(lambda, n, l, x);
}

double cahill_glauber_K_series(double lambda, int n, int l, double r) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("cahill_glauber_K_series: lambda must lie in [0, 1)");
    }
    const double x = r * r;
    const double prefactor = std::exp(log_sqrt_factorial_ratio(n, n + l) - (1.0 - lambda) * x) * std::pow(r, l);
    return prefactor * cahill_glauber_series_part<double>(lambda, n, l, x);
}

std::complex<double> cahill_glauber_K(std::complex<double> lambda, int n, int l, double r) {
    if (!(std::abs(lambda) > 0.0 && std::abs(lambda) < 1.0)) {
        throw DomainError("cahill_glauber_K: complex lambda must satisfy 0 < |lambda| < 1");
    }
    const double x = r * r;
    const std::complex<double> one(1.0);
    std::complex<double> out = std::exp(log_sqrt_factorial_ratio(n, n + l) - (one - lambda) * x) * std::pow(r, l);
    out *= std::pow(one - lambda, l + 1) * std::pow(lambda, n);
    return out * laguerre(l, n, (2.0 - lambda - one / lambda) * x);
}

double w_lambda_density(double lambda, const DensityMatrix &rho, const PhasePoint &z) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("w_lambda_density: lambda must lie in [0, 1)");
    }
    int last = 0;
    if (lambda > 0.0) {
        last = std::max(0, static_cast<int>(std::ceil(std::log(kLambdaTailBound) / std::log(lambda))) - 1);
        while (std::pow(lambda, last + 1) > kLambdaTailBound) {
            ++last;
        }
    }
    double total = 0.0;
    double weight = 1.0;
    for (int k = 0; k <= last; ++k) {
        total += weight * density(k, rho, z);
        weight *= lambda;
    }
    return (1.0 - lambda) * total;
}

std::complex<double> w_lambda_density_closed(std::complex<double> lambda, const DensityMatrix &rho,
                                             const PhasePoint &z) {
    const int dim = rho.dim();
    std::complex<double> total = 0.0;
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const int lo = std::min(m, n);
            const int gap = std::abs(n - m);
            total += rho(m, n) * std::polar(1.0, z.theta() * (n - m)) * cahill_glauber_K(lambda, lo, gap, z.r());
        }
    }
    return total;
}

double lambda_series_coefficient(int s, const DensityMatrix &rho, const PhasePoint &z, double radius, int nodes) {
    if (s < 0 || nodes <= s || !(radius > 0.0 && radius < 1.0)) {
        throw DomainError("lambda_series_coefficient: need s >= 0, nodes > s and 0 < radius < 1");
    }
    std::complex<double> total = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const std::complex<double> lambda = std::polar(radius, 2.0 * std::numbers::pi * j / nodes);
        const std::complex<double> f = w_lambda_density_closed(lambda, rho, z) / (1.0 - lambda);
        total += f * std::pow(lambda, -s);
    }
    return (total / static_cast<double>(nodes)).real();
}

double efficiency_to_lambda(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw DomainError("efficiency_to_lambda: eta must lie in (0, 1]");
    }
    return 1.0 - eta;
}

double default_r_max(int dim, int s) {
    return 4.0 + std::sqrt(static_cast<double>(dim)) + std::sqrt(static_cast<double>(s));
}

double disk_mass(int s, const DensityMatrix &rho, double r_max) {
    if (!(r_max > 0.0)) {
        throw DomainError("disk_mass: r_max must be positive");
    }
    DensityEvaluator g(s, rho);
    // d^2z / pi = dx dtheta / (2 pi); the trapezoid weight 2 pi / N cancels the 2 pi.
    auto angular_mean = [&](double x) {
        const double r = std::sqrt(x);
        double acc = 0.0;
        for (int j = 0; j < kAngularNodes; ++j) {
            acc += g(r, 2.0 * std::numbers::pi * j / kAngularNodes);
        }
        return acc / kAngularNodes;
    };
    return integrate_x(r_max * r_max, angular_mean);
}

SampleSet sample(int s, const DensityMatrix &rho, std::int64_t count, std::uint64_t seed, double r_max) {
    if (count < 0) {
        throw DomainError("sample: count must be nonnegative");
    }
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
        throw DomainError("sample: r_max must be positive and finite");
    }
    SampleSet out;
    out.s = s;
    out.count = count;
    out.seed = seed;
    out.r_max = r_max;
    const double mass = disk_mass(s, rho, r_max);
    out.truncated_mass = std::clamp(1.0 - mass, 0.0, 1.0);
    out.truncation_warning = out.truncated_mass > kTruncationWarning;
    if (count == 0) {
        return out;
    }
    if (mass < 1e-9) {
        throw DomainError("sample: the disk r <= r_max carries no probability mass");
    }
    DensityEvaluator g(s, rho);
    std::mt19937_64 rng(seed);
    const double x_max = r_max * r_max;
    out.points.reserve(static_cast<std::size_t>(count));
    while (static_cast<std::int64_t>(out.points.size()) < count) {
        const double x = uniform53(rng) * x_max;
        const double theta = uniform53(rng) * 2.0 * std::numbers::pi;
        const double u = uniform53(rng);
        const double r = std::sqrt(x);
        if (u < g(r, theta)) {
            out.points.emplace_back(r, theta);
        }
    }
    return out;
}

}  // namespace phasetomo
