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

#include "phasetomo/recon_single.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "phasetomo/polyfit.h"

namespace phasetomo {

namespace {

std::string label(int s, int l) {
    return "(s=" + std::to_string(s) + ", l=" + std::to_string(l) + ")";
}

void check_indices(int s, int l) {
    if (s < 0 || l < 0) {
        throw DomainError("coefficient matrix: s and l must be nonnegative");
    }
}

}  // namespace

Rational h_coeff_reduced(int s, int l, std::int64_t t, std::int64_t n) {
    check_indices(s, l);
    if (t < 0 || n < 0) {
        throw DomainError("h_coeff: t and n must be nonnegative");
    }
    const std::int64_t h = l / 2;
    const std::int64_t odd = l % 2;
    const std::int64_t denom = h + t + n - s + odd;
    if (t - h < 0 || denom < 0) {
        return Rational(0);
    }
    Rational sum(0);
    for (std::int64_t u = std::max<std::int64_t>(0, n - s); u <= std::min(n, t - h); ++u) {
        BigInt num = binomial(2 * (u + h) + odd, u) * binomial(s - n + u, t - h - u);
        if (num == 0) {
            continue;
        }
        sum += Rational(num, factorial(n - u) * factorial(u - n + s));
    }
    sum.canonicalize();
    Rational out = sum / Rational(factorial(denom));
    if ((s + h + t + n) % 2 != 0) {
        out = -out;
    }
    return out;
}

double h_coeff(int s, int l, std::int64_t t, std::int64_t n) {
    const Rational r = h_coeff_reduced(s, l, t, n);
    if (sgn(r) == 0) {
        return 0.0;
    }
    // t! sqrt(n!(n+l)!) = t! n! sqrt((n+l)!/n!)
    return Rational(Rational(factorial(t) * factorial(n)) * r).get_d() * sqrt_factorial_ratio(n + l, n);
}

CoefficientMatrix build_coefficient_matrix(int s, int l, int size) {
    check_indices(s, l);
    if (size < 1) {
        throw DomainError("build_coefficient_matrix: size must be at least 1");
    }
    CoefficientMatrix out;
    out.s = s;
    out.l = l;
    out.h = l / 2;
    out.a = Eigen::MatrixXd::Zero(size, size);
    for (int p = 0; p < size; ++p) {
        const std::int64_t t = p + s + out.h;
        for (int n = 0; n < size; ++n) {
            const double v = h_coeff(s, l, t, n);
            if (n < p && v != 0.0) {
                throw ConsistencyError("build_coefficient_matrix: A" + label(s, l) + " has a nonzero entry below the diagonal at (" +
                                       std::to_string(p) + ", " + std::to_string(n) + ")");
            }
            out.a(p, n) = v;
        }
        if (out.a(p, p) == 0.0) {
            throw SingularSystemError("build_coefficient_matrix: A" + label(s, l) + " has a zero diagonal at p = " +
                                          std::to_string(p),
                                      p);
        }
    }
    return out;
}

TriangularOperator<Rational> reduced_coefficient_operator(int s, int l) {
    check_indices(s, l);
    const int h = l / 2;
    return TriangularOperator<Rational>(
        [s, l, h](std::int64_t p, std::int64_t n) -> Rational { return h_coeff_reduced(s, l, p + s + h, n); }, 2 * s);
}

TriangularOperator<Rational> exact_coefficient_operator(int s) {
    check_indices(s, 0);
    return TriangularOperator<Rational>(
        [s](std::int64_t p, std::int64_t n) -> Rational {
            return Rational(factorial(p + s) * factorial(n)) * h_coeff_reduced(s, 0, p + s, n);
        },
        2 * s);
}

const Eigen::MatrixXd &inverse_coefficient_matrix(int s, int l, int size) {
    check_indices(s, l);
    if (size < 1) {
        throw DomainError("inverse_coefficient_matrix: size must be at least 1");
    }
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<const Eigen::MatrixXd>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[{s, l, size}];
    if (slot) {
        return *slot;
    }
    const int h = l / 2;
    const TriangularOperator<Rational> r = reduced_coefficient_operator(s, l);
    for (int p = 0; p < size; ++p) {
        if (sgn(r(p, p)) == 0) {
            throw SingularSystemError("inverse_coefficient_matrix: A" + label(s, l) + " has a zero diagonal at p = " +
                                          std::to_string(p),
                                      p);
        }
    }
    const TriangularOperator<Rational> rinv = inverse(r);
    // A = diag(t_p!) R diag(sigma_n)  =>  B_{np} = Rinv_{np} / (sigma_n t_p!).
    auto b = std::make_unique<Eigen::MatrixXd>(Eigen::MatrixXd::Zero(size, size));
    for (int n = 0; n < size; ++n) {
        const double inv_sigma = 1.0 / (factorial_f(n) * sqrt_factorial_ratio(n + l, n));
        for (int p = n; p < size; ++p) {
            const Rational v = Rational(rinv(n, p) / Rational(factorial(p + s + h)));
            (*b)(n, p) = v.get_d() * inv_sigma;
        }
    }
    slot = std::move(b);
    return *slot;
}

MomentVector moments_from_profile(const RadialProfile &profile, int dim, std::optional<int> p_degree) {
    if (dim < 1 || profile.l >= dim) {
        throw DomainError("moments_from_profile: need 0 <= l < dim");
    }
    const int s = profile.s;
    const int l = profile.l;
    const int h = l / 2;
    const int degree = fit_degree(dim, s, l, p_degree);
    const int len = dim - l;
    RadialFit fit = fit_radial_polynomial(profile, degree);
    MomentVector m;
    m.s = s;
    m.l = l;
    m.misfit = fit.misfit;
    m.entries.resize(static_cast<std::size_t>(len));
    m.covariance = Eigen::MatrixXd::Zero(len, len);
    std::vector<double> scale(static_cast<std::size_t>(len));
    for (int p = 0; p < len; ++p) {
        scale[static_cast<std::size_t>(p)] = factorial_f(p + s + h);
        if (p + s <= degree) {
            m.entries[static_cast<std::size_t>(p)] =
                scale[static_cast<std::size_t>(p)] * fit.coefficients[static_cast<std::size_t>(p + s)];
        }
    }
    for (int p = 0; p + s <= degree && p < len; ++p) {
        for (int q = 0; q + s <= degree && q < len; ++q) {
            m.covariance(p, q) =
                scale[static_cast<std::size_t>(p)] * scale[static_cast<std::size_t>(q)] * fit.covariance(p + s, q + s);
        }
    }
    return m;
}

Band reconstruct_band(int s, int l, const MomentVector &m, int band_len) {
    if (band_len < 0 || band_len > static_cast<int>(m.entries.size())) {
        throw DomainError("reconstruct_band: moments do not cover the band");
    }
    if (m.s != s || m.l != l) {
        throw DomainError("reconstruct_band: moment vector belongs to " + label(m.s, m.l));
    }
    Band out;
    out.l = l;
    if (band_len == 0) {
        return out;
    }
    const Eigen::MatrixXd &b = inverse_coefficient_matrix(s, l, band_len);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(band_len, band_len);
    if (m.covariance.rows() >= band_len) {
        cov = m.covariance.topLeftCorner(band_len, band_len);
    }
    const Eigen::MatrixXd band_cov = b * cov * b.transpose();
    for (int n = 0; n < band_len; ++n) {
        std::complex<double> acc = 0.0;
        for (int p = n; p < band_len; ++p) {
            acc += b(n, p) * m.entries[static_cast<std::size_t>(p)];
        }
        out.values.push_back(acc);
        out.std_error.push_back(std::sqrt(std::max(0.0, band_cov(n, n))));
    }
    return out;
}

ReconstructionResult reconstruct_single(int s, std::span<const RadialProfile> profiles, int dim,
                                        std::optional<int> p_degree) {
    if (dim < 1 || s < 0) {
        throw DomainError("reconstruct_single: need dim >= 1 and s >= 0");
    }
    std::vector<const RadialProfile *> by_l(static_cast<std::size_t>(dim), nullptr);
    for (const RadialProfile &p : profiles) {
        if (p.s == s && p.l >= 0 && p.l < dim) {
            by_l[static_cast<std::size_t>(p.l)] = &p;
        }
    }
    std::vector<Band> bands;
    std::vector<BandDiagnostics> diagnostics;
    for (int l = 0; l < dim; ++l) {
        const RadialProfile *p = by_l[static_cast<std::size_t>(l)];
        if (p == nullptr) {
            throw CoverageError("reconstruct_single: no profile " + label(s, l));
        }
        BandDiagnostics diag;
        diag.l = l;
        MomentVector m = moments_from_profile(*p, dim, p_degree);
        diag.max_misfit = m.misfit;
        Band band = reconstruct_band(s, l, m, dim - l);
        std::vector<std::complex<double>> tail = band.values;
        tail.push_back({});
        diag.condition = condition_check(tail, l, l);
        bands.push_back(std::move(band));
        diagnostics.push_back(diag);
    }
    return assemble(dim, bands, std::move(diagnostics));
}

ReconstructionResult reconstruct_single(const Tomogram &t, int s, std::optional<int> p_degree) {
    std::vector<RadialProfile> profiles;
    for (int l = 0; l < t.dim_hint(); ++l) {
        profiles.push_back(t.at(s, l));
    }
    return reconstruct_single(s, profiles, t.dim_hint(), p_degree);
}

}  // namespace phasetomo
