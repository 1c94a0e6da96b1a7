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

#include "phasetomo/recon_tomogram.h"

#include <algorithm>
#include <cmath>

#include "phasetomo/polyfit.h"
#include "phasetomo/triinv.h"

namespace phasetomo {

namespace {

std::string label(int s, int l) {
    return "(s=" + std::to_string(s) + ", l=" + std::to_string(l) + ")";
}

ToeplitzBand<double> binomial_band(int l) {
    std::vector<double> a(static_cast<std::size_t>(l + 1));
    for (int u = 0; u <= l; ++u) {
        a[static_cast<std::size_t>(u)] = (u % 2 == 0 ? 1.0 : -1.0) * binomial_f(l, u);
    }
    return ToeplitzBand<double>(std::move(a));
}

// (-1)^l l! sqrt(n!/(n+l)!): rho_{n+l,n} = scale * c_{n+l}.
double band_scale(int l, int n) {
    return (l % 2 == 0 ? 1.0 : -1.0) * factorial_f(l) * sqrt_factorial_ratio(n, n + l);
}

}  // namespace

Tomogram::Tomogram(int dim_hint) : dim_hint_(dim_hint) {
    if (dim_hint < 1) {
        throw DomainError("Tomogram: dim_hint must be at least 1");
    }
}

void Tomogram::add(RadialProfile p) {
    p.check();
    const auto key = std::make_pair(p.s, p.l);
    profiles_[key] = std::move(p);
}

bool Tomogram::contains(int s, int l) const {
    return profiles_.count({s, l}) != 0;
}

const RadialProfile &Tomogram::at(int s, int l) const {
    auto it = profiles_.find({s, l});
    if (it == profiles_.end()) {
        throw CoverageError("tomogram has no profile " + label(s, l));
    }
    return it->second;
}

double t_limit_coeff(int l, int s, int n) {
    if (n < s - l || n > s || n < 0) {
        return 0.0;
    }
    if (l < 1 || s < l) {
        throw DomainError("t_limit_coeff: need s >= l >= 1");
    }
    const double sign = (s - n) % 2 == 0 ? 1.0 : -1.0;
    return sign * sqrt_factorial_ratio(n + l, n) / (factorial_f(s - n) * factorial_f(n + l - s));
}

OriginLimit origin_limit(const RadialProfile &p, int dim, std::optional<int> p_degree) {
    RadialFit fit = fit_radial_polynomial(p, fit_degree(dim, p.s, p.l, p_degree));
    OriginLimit out;
    out.value = fit.coefficients[0];
    out.std_error = std::sqrt(std::max(0.0, fit.covariance(0, 0)));
    out.misfit = fit.misfit;
    return out;
}

std::vector<double> diagonal_from_origin(const Tomogram &t) {
    std::vector<double> out;
    for (int s = 0; s < t.dim_hint(); ++s) {
        out.push_back(origin_limit(t.at(s, 0), t.dim_hint()).value.real());
    }
    return out;
}

std::complex<double> extract_d(const Tomogram &t, int l, int s) {
    if (l < 1 || s < l) {
        throw DomainError("extract_d: need s >= l >= 1");
    }
    return origin_limit(t.at(s, l), t.dim_hint()).value;
}

DVector extract_d_vector(const Tomogram &t, int l) {
    if (l < 1 || l >= t.dim_hint()) {
        throw DomainError("extract_d_vector: need 1 <= l < dim_hint");
    }
    DVector d;
    d.l = l;
    d.provenance = Provenance::analytic;
    for (int s = l; s < t.dim_hint(); ++s) {
        const RadialProfile &p = t.at(s, l);
        if (p.kind == ProfileKind::sampled) {
            d.provenance = Provenance::fitted;
        }
        OriginLimit o = origin_limit(p, t.dim_hint());
        d.entries.push_back(o.value);
        d.std_error.push_back(o.std_error);
    }
    return d;
}

Band reconstruct_offdiagonal(int l, const DVector &d) {
    if (l < 1 || d.l != l) {
        throw DomainError("reconstruct_offdiagonal: band index mismatch");
    }
    Band out;
    out.l = l;
    if (d.entries.empty()) {
        return out;
    }
    for (const auto &v : d.entries) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("reconstruct_offdiagonal: d entries must be finite");
        }
    }
    const int s_max = d.s_max();
    // Full sequence d_0..d_{s_max}; rows s < l only feed c_j with j < l, which are discarded.
    std::vector<std::complex<double>> full(static_cast<std::size_t>(s_max + 1));
    for (int s = l; s <= s_max; ++s) {
        full[static_cast<std::size_t>(s)] = d.entries[static_cast<std::size_t>(s - l)];
    }
    const ToeplitzBand<double> band = binomial_band(l);
    const std::vector<std::complex<double>> c =
        recover_sequence<double, std::complex<double>>(band, std::span<const std::complex<double>>(full));
    const std::vector<double> b = toeplitz_inverse_sequence(band, s_max);
    for (int n = 0; n + l <= s_max; ++n) {
        const double scale = band_scale(l, n);
        out.values.push_back(scale * c[static_cast<std::size_t>(n + l)]);
        double var = 0.0;
        if (!d.std_error.empty()) {
            for (int s = n + l; s <= s_max; ++s) {
                const double coef = scale * b[static_cast<std::size_t>(s - n - l)];
                const double e = d.std_error[static_cast<std::size_t>(s - l)];
                var += coef * coef * e * e;
            }
        }
        out.std_error.push_back(std::sqrt(var));
    }
    return out;
}

ConditionReport condition_check(std::span<const std::complex<double>> values, int l, int first_m) {
    if (l < 0 || first_m < l) {
        throw DomainError("condition_check: need l >= 0 and first_m >= l");
    }
    ConditionReport report;
    report.l = l;
    if (values.empty() || values.back() == std::complex<double>{}) {
        report.finite_support = true;
        report.passed = true;
        report.detail = "tail ends in zeros";
        return report;
    }
    const double power = 1.5 * l - 1.0;
    std::vector<double> lx;
    std::vector<double> ly;
    const std::size_t start = values.size() / 2;
    for (std::size_t i = start; i < values.size(); ++i) {
        const double m = static_cast<double>(first_m) + static_cast<double>(i);
        const double w = std::abs(values[i]);
        if (m > 0.0 && w > 0.0) {
            lx.push_back(std::log(m));
            ly.push_back(power * std::log(m) + std::log(w));
        }
    }
    if (lx.size() < 2) {
        report.passed = false;
        report.detail = "tail too short to judge decay";
        return report;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    report.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    report.passed = report.slope <= -0.05;
    report.detail = report.passed ? "weighted tail decays" : "weighted tail does not decay";
    return report;
}

ReconstructionResult assemble(int dim, const std::vector<Band> &bands, std::vector<BandDiagnostics> diagnostics) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    Eigen::MatrixXd err = Eigen::MatrixXd::Zero(dim, dim);
    for (const Band &b : bands) {
        if (b.l < 0 || b.l >= dim || static_cast<int>(b.values.size()) > dim - b.l) {
            throw DomainError("assemble: band does not fit the matrix");
        }
        for (std::size_t i = 0; i < b.values.size(); ++i) {
            const int n = static_cast<int>(i);
            const double e = i < b.std_error.size() ? b.std_error[i] : 0.0;
            if (b.l == 0) {
                m(n, n) = b.values[i].real();
                err(n, n) = e;
            } else {
                m(n + b.l, n) = b.values[i];
                m(n, n + b.l) = std::conj(b.values[i]);
                err(n + b.l, n) = e;
                err(n, n + b.l) = e;
            }
        }
    }
    ReconstructionResult out;
    out.rho = DensityMatrix(std::move(m));
    out.std_error = std::move(err);
    out.validation = validate(out.rho);
    out.bands = std::move(diagnostics);
    if (!out.validation.passed()) {
        out.warnings.push_back("reconstructed matrix is not a valid state: " + out.validation.summary());
    }
    return out;
}

ReconstructionResult reconstruct_tomogram(const Tomogram &t, std::optional<int> p_degree) {
    const int dim = t.dim_hint();
    std::vector<Band> bands;
    std::vector<BandDiagnostics> diagnostics;

    Band diag;
    diag.l = 0;
    BandDiagnostics d0;
    d0.l = 0;
    for (int s = 0; s < dim; ++s) {
        OriginLimit o = origin_limit(t.at(s, 0), dim, p_degree);
        diag.values.push_back(o.value.real());
        diag.std_error.push_back(o.std_error);
        d0.max_misfit = std::max(d0.max_misfit, o.misfit);
    }
    d0.condition = condition_check(std::span<const std::complex<double>>(), 0, 0);
    bands.push_back(diag);
    diagnostics.push_back(d0);

    for (int l = 1; l < dim; ++l) {
        BandDiagnostics diag_l;
        diag_l.l = l;
        DVector d;
        d.l = l;
        for (int s = l; s < dim; ++s) {
            const RadialProfile &p = t.at(s, l);
            if (p.kind == ProfileKind::sampled) {
                d.provenance = Provenance::fitted;
            }
            OriginLimit o = origin_limit(p, dim, p_degree);
            d.entries.push_back(o.value);
            d.std_error.push_back(o.std_error);
            diag_l.max_misfit = std::max(diag_l.max_misfit, o.misfit);
        }
        Band band = reconstruct_offdiagonal(l, d);
        std::vector<std::complex<double>> tail = band.values;
        tail.push_back({});  // rho_{dim, dim-l} = 0 beyond the assumed support
        diag_l.condition = condition_check(tail, l, l);
        bands.push_back(std::move(band));
        diagnostics.push_back(diag_l);
    }
    return assemble(dim, bands, std::move(diagnostics));
}

}  // namespace phasetomo
