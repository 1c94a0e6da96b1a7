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

#include "phasetomo/polyfit.h"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace phasetomo {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

// Values T_0..T_D of the Chebyshev polynomials at u in [-1, 1].
void chebyshev_row(double u, int degree, double *out) {
    out[0] = 1.0;
    if (degree >= 1) {
        out[1] = u;
    }
    for (int k = 2; k <= degree; ++k) {
        out[k] = 2.0 * u * out[k - 1] - out[k - 2];
    }
}

// M with q = M c, where sum_k c_k T_k(2x/X - 1) = sum_j q_j x^j.
Eigen::MatrixXd chebyshev_to_monomial(int degree, double x_max) {
    const int n = degree + 1;
    // Coefficients of T_k in powers of u.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    t(0, 0) = 1.0;
    if (n > 1) {
        t(1, 1) = 1.0;
    }
    for (int k = 2; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            t(k, j) = -t(k - 2, j) + (j > 0 ? 2.0 * t(k - 1, j - 1) : 0.0);
        }
    }
    // u^j = (a x - 1)^j with a = 2 / X, expanded in powers of x.
    const double a = 2.0 / x_max;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);  // u(j, i): coefficient of x^i in u^j
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            u(j, i) = binomial_f(j, i) * std::pow(a, i) * (((j - i) % 2 == 0) ? 1.0 : -1.0);
        }
    }
    // q_i = sum_k c_k sum_j t(k, j) u(j, i).
    return (t * u).transpose();
}

struct Design {
    Eigen::MatrixXd x;
    Eigen::VectorXd re;
    Eigen::VectorXd im;
    Eigen::VectorXd sigma;  // empty for analytic
};

Design analytic_design(const RadialProfile &p, int degree, double x_max) {
    std::vector<std::size_t> use;
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        if (p.radii[i] > 0.0 || p.l == 0) {
            use.push_back(i);
        }
    }
    Design d;
    const auto rows = static_cast<Eigen::Index>(use.size());
    d.x.resize(rows, degree + 1);
    d.re.resize(rows);
    d.im.resize(rows);
    std::vector<double> row(static_cast<std::size_t>(degree + 1));
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double r = p.radii[use[static_cast<std::size_t>(i)]];
        const double x = r * r;
        chebyshev_row(2.0 * x / x_max - 1.0, degree, row.data());
        for (int k = 0; k <= degree; ++k) {
            d.x(i, k) = row[static_cast<std::size_t>(k)];
        }
        const std::complex<double> y =
            p.values[use[static_cast<std::size_t>(i)]] * std::exp(x) / (p.l > 0 ? std::pow(r, p.l) : 1.0);
        d.re(i) = y.real();
        d.im(i) = y.imag();
    }
    return d;
}

Design sampled_design(const RadialProfile &p, int degree, double x_max) {
    Design d;
    const auto rows = static_cast<Eigen::Index>(p.radii.size());
    d.x.resize(rows, degree + 1);
    d.re.resize(rows);
    d.im.resize(rows);
    d.sigma.resize(rows);
    double floor = 0.0;
    for (double e : p.std_error) {
        if (e > 0.0 && (floor == 0.0 || e < floor)) {
            floor = e;
        }
    }
    if (floor == 0.0) {
        floor = 1e-300;
    }
    std::vector<double> row(static_cast<std::size_t>(degree + 1));
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double lo = p.bin_lo[idx];
        const double hi = p.bin_hi[idx];
        const double dx = hi * hi - lo * lo;
        // (1/dx) int 2 r e^{-r^2} r^l T_k(2 r^2 / X - 1) dr, integrand smooth in r.
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(degree + 1);
        for (std::size_t j = 0; j < Rule::abscissa().size(); ++j) {
            for (int sign : {-1, 1}) {
                const double node = Rule::abscissa()[j];
                if (node == 0.0 && sign < 0) {
                    continue;
                }
                const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * sign * node;
                const double w = 0.5 * (hi - lo) * Rule::weights()[j];
                const double x = r * r;
                chebyshev_row(2.0 * x / x_max - 1.0, degree, row.data());
                const double base = w * 2.0 * r * std::exp(-x) * std::pow(r, p.l);
                for (int k = 0; k <= degree; ++k) {
                    acc(k) += base * row[static_cast<std::size_t>(k)];
                }
            }
        }
        d.x.row(i) = acc.transpose() / dx;
        d.re(i) = p.values[idx].real();
        d.im(i) = p.values[idx].imag();
        d.sigma(i) = std::max(p.std_error[idx], floor);
    }
    return d;
}

}  // namespace

double bin_average_monomial(int l, int k, double r_lo, double r_hi) {
    if (!(r_lo >= 0.0 && r_lo < r_hi)) {
        throw DomainError("bin_average_monomial: need 0 <= r_lo < r_hi");
    }
    auto integrand = [&](double r) { return 2.0 * r * std::exp(-r * r) * std::pow(r, l + 2 * k); };
    return Rule::integrate(integrand, r_lo, r_hi) / (r_hi * r_hi - r_lo * r_lo);
}

int fit_degree(int dim, int s, int l, std::optional<int> p_degree) {
    if (p_degree) {
        return std::max(0, *p_degree - l / 2);
    }
    return std::max(0, dim - 1 - l + s);
}

RadialFit fit_radial_polynomial(const RadialProfile &profile, int degree) {
    profile.check();
    if (degree < 0) {
        throw DomainError("fit_radial_polynomial: degree must be nonnegative");
    }
    const bool sampled = profile.kind == ProfileKind::sampled;
    double x_max = 0.0;
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        const double r = sampled ? profile.bin_hi[i] : profile.radii[i];
        x_max = std::max(x_max, r * r);
    }
    const std::string where = "(s=" + std::to_string(profile.s) + ", l=" + std::to_string(profile.l) + ")";
    if (!(x_max > 0.0)) {
        throw FitError("fit_radial_polynomial: profile " + where + " has no radius above 0");
    }
    Design d = sampled ? sampled_design(profile, degree, x_max) : analytic_design(profile, degree, x_max);
    const int n = static_cast<int>(d.x.rows());
    if (n < degree + 1) {
        throw FitError("fit_radial_polynomial: profile " + where + " has " + std::to_string(n) +
                       " usable points for " + std::to_string(degree + 1) + " coefficients");
    }

    Eigen::MatrixXd a = d.x;
    Eigen::VectorXd bre = d.re;
    Eigen::VectorXd bim = d.im;
    if (sampled) {
        for (int i = 0; i < n; ++i) {
            a.row(i) /= d.sigma(i);
            bre(i) /= d.sigma(i);
            bim(i) /= d.sigma(i);
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < degree + 1) {
        throw FitError("fit_radial_polynomial: design matrix for " + where + " is rank deficient");
    }
    Eigen::VectorXd cre = qr.solve(bre);
    Eigen::VectorXd cim = qr.solve(bim);

    RadialFit fit;
    fit.degree = degree;
    fit.points = n;
    const Eigen::MatrixXd m = chebyshev_to_monomial(degree, x_max);
    const Eigen::VectorXd qre = m * cre;
    const Eigen::VectorXd qim = m * cim;
    fit.coefficients.resize(static_cast<std::size_t>(degree + 1));
    for (int k = 0; k <= degree; ++k) {
        fit.coefficients[static_cast<std::size_t>(k)] = {qre(k), qim(k)};
    }

    const double res_re = (a * cre - bre).squaredNorm();
    const double res_im = (a * cim - bim).squaredNorm();
    if (sampled) {
        const int dof = n - (degree + 1);
        fit.misfit = dof > 0 ? std::sqrt(std::max(res_re, res_im) / dof) : 0.0;
        const Eigen::MatrixXd normal = a.transpose() * a;
        const Eigen::MatrixXd cov_c = normal.ldlt().solve(Eigen::MatrixXd::Identity(degree + 1, degree + 1));
        fit.covariance = m * cov_c * m.transpose();
        if (fit.misfit > kSampledMisfitLimit) {
            throw FitError("fit_radial_polynomial: sqrt(chi^2/dof) = " + std::to_string(fit.misfit) + " for " +
                           where + " exceeds " + std::to_string(kSampledMisfitLimit));
        }
    } else {
        const double scale = std::sqrt(bre.squaredNorm() + bim.squaredNorm());
        fit.misfit = scale > 0.0 ? std::sqrt(res_re + res_im) / scale : 0.0;
        fit.covariance = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
        if (fit.misfit > kAnalyticMisfitLimit) {
            throw FitError("fit_radial_polynomial: relative residual " + std::to_string(fit.misfit) + " for " +
                           where + " exceeds " + std::to_string(kAnalyticMisfitLimit) +
                           " (profile is not of the assumed degree)");
        }
    }
    return fit;
}

}  // namespace phasetomo
