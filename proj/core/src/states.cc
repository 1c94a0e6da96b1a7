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

#include "phasetomo/states.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace phasetomo {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix &m) {
    Eigen::MatrixXcd h = m;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DomainError("DensityMatrix: matrix must be square");
    }
    if (entries_.rows() < 1) {
        throw DomainError("DensityMatrix: dimension must be at least 1");
    }
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
        const auto &v = entries_.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("DensityMatrix: entries must be finite");
        }
    }
}

DensityMatrix DensityMatrix::vacuum(int dim) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(0, 0) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
    const auto n = static_cast<Eigen::Index>(populations.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = populations[static_cast<std::size_t>(i)];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const std::complex<double>> amplitudes) {
    const auto n = static_cast<Eigen::Index>(amplitudes.size());
    Eigen::VectorXcd psi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        psi(i) = amplitudes[static_cast<std::size_t>(i)];
    }
    double norm = psi.norm();
    if (norm == 0.0) {
        throw DomainError("DensityMatrix::pure: zero vector");
    }
    psi /= norm;
    ComplexMatrix m = psi * psi.adjoint();
    return DensityMatrix(std::move(m));
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    out << (passed() ? "valid" : "invalid") << " (hermiticity defect " << hermiticity_defect << ", trace defect "
        << trace_defect << ", min eigenvalue " << min_eigenvalue << ")";
    return out.str();
}

ValidationReport validate(const DensityMatrix &m) {
    ValidationReport report;
    const ComplexMatrix &e = m.entries();
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            report.hermiticity_defect = std::max(report.hermiticity_defect, std::abs(e(i, j) - std::conj(e(j, i))));
        }
    }
    report.trace_defect = std::abs(e.trace() - std::complex<double>(1.0));
    report.min_eigenvalue = hermitian_eigenvalues(e).minCoeff();
    report.hermitian = report.hermiticity_defect <= kHermiticityTolerance;
    report.unit_trace = report.trace_defect <= kTraceTolerance;
    report.positive = report.min_eigenvalue >= -kPositivityTolerance;
    return report;
}

DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) {
        throw DomainError("random_density_matrix: dim must be at least 1");
    }
    if (rank < 1 || rank > dim) {
        throw DomainError("random_density_matrix: rank must lie in [1, dim]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(dim, rank);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < rank; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = {re, im};
        }
    }
    Eigen::MatrixXcd w = g * g.adjoint();
    w /= w.trace().real();
    // Store an exactly Hermitian matrix.
    ComplexMatrix out(dim, dim);
    for (int i = 0; i < dim; ++i) {
        out(i, i) = w(i, i).real();
        for (int j = i + 1; j < dim; ++j) {
            std::complex<double> v = 0.5 * (w(i, j) + std::conj(w(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return DensityMatrix(std::move(out));
}

GeneratorOperator truncate_normalize(const GeneratorOperator &k, int n) {
    if (n < 1 || n > k.dim()) {
        throw DomainError("truncate_normalize: n must lie in [1, dim]");
    }
    ComplexMatrix block = k.entries().topLeftCorner(n, n);
    std::complex<double> tr = block.trace();
    if (std::abs(tr) <= 1e-300) {
        throw DomainError("truncate_normalize: leading block has zero trace (n below the first nonzero block)");
    }
    if (n == k.dim()) {
        return k;
    }
    block /= tr.real();
    return GeneratorOperator(std::move(block));
}

std::complex<double> characteristic_weight(const DensityMatrix &k, const PhasePoint &z) {
    std::complex<double> total = 0.0;
    for (int m = 0; m < k.dim(); ++m) {
        for (int n = 0; n < k.dim(); ++n) {
            if (k(m, n) != std::complex<double>{}) {
                total += k(m, n) * displacement_element(n, m, z);
            }
        }
    }
    return total;
}

CompletenessReport completeness_diagnostic(const GeneratorOperator &k, std::span<const PhasePoint> grid) {
    if (grid.empty()) {
        throw DomainError("completeness_diagnostic: empty grid");
    }
    CompletenessReport report;
    report.min_abs_weight = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double w = std::abs(characteristic_weight(k, grid[i]));
        report.min_abs_weight = std::min(report.min_abs_weight, w);
        if (w < report.threshold) {
            report.flagged.push_back(i);
        }
    }
    report.fraction_flagged = static_cast<double>(report.flagged.size()) / static_cast<double>(grid.size());
    return report;
}

double trace_norm_distance(const DensityMatrix &a, const DensityMatrix &b) {
    int n = std::max(a.dim(), b.dim());
    ComplexMatrix diff = ComplexMatrix::Zero(n, n);
    diff.topLeftCorner(a.dim(), a.dim()) += a.entries();
    diff.topLeftCorner(b.dim(), b.dim()) -= b.entries();
    return hermitian_eigenvalues(diff).cwiseAbs().sum();
}

double purity(const DensityMatrix &m) {
    return (m.entries() * m.entries()).trace().real();
}

double max_abs_difference(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DomainError("max_abs_difference: dimension mismatch");
    }
    return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace phasetomo
