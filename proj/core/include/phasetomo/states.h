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

#ifndef PHASETOMO_STATES_H
#define PHASETOMO_STATES_H

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phasetomo/special_fn.h"

namespace phasetomo {

using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Finite density matrix in the Fock basis. Entry (m, n) is rho_{mn} = <m|rho|n>.
///
/// Construction does not enforce the physical invariants; run `validate` for
/// that. Reconstructions are allowed to be slightly unphysical.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix entries);

    /// |0><0| in dimension `dim`.
    static DensityMatrix vacuum(int dim);
    static DensityMatrix diagonal(std::span<const double> populations);
    /// |psi><psi| for the given (not necessarily normalized) amplitudes.
    static DensityMatrix pure(std::span<const std::complex<double>> amplitudes);

    int dim() const {
        return static_cast<int>(entries_.rows());
    }
    std::complex<double> operator()(int m, int n) const {
        return entries_(m, n);
    }
    const ComplexMatrix &entries() const {
        return entries_;
    }

   private:
    ComplexMatrix entries_;
};

/// Positive unit-trace operator K generating a covariant phase-space observable.
class GeneratorOperator : public DensityMatrix {
   public:
    GeneratorOperator() = default;
    explicit GeneratorOperator(ComplexMatrix entries) : DensityMatrix(std::move(entries)) {
    }
    explicit GeneratorOperator(const DensityMatrix &m) : DensityMatrix(m) {
    }
};

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool hermitian = false;
    bool unit_trace = false;
    bool positive = false;
    bool passed() const {
        return hermitian && unit_trace && positive;
    }
    std::string summary() const;
};

constexpr double kHermiticityTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kPositivityTolerance = 1e-10;

ValidationReport validate(const DensityMatrix &m);

/// Ginibre state G G^dagger / tr(G G^dagger) with G a dim x rank matrix of
/// standard complex Gaussians drawn from a generator seeded with `seed`.
DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed);

/// P_n K P_n / tr(P_n K P_n) as an n x n operator.
GeneratorOperator truncate_normalize(const GeneratorOperator &k, int n);

/// tr[K D(z)] = sum_{m,n} K_mn <n|D(z)|m>.
std::complex<double> characteristic_weight(const DensityMatrix &k, const PhasePoint &z);

struct CompletenessReport {
    double min_abs_weight = 0.0;
    double fraction_flagged = 0.0;
    std::vector<std::size_t> flagged;  ///< grid indices with |tr[K D(z)]| < threshold
    double threshold = 1e-12;
};

CompletenessReport completeness_diagnostic(const GeneratorOperator &k, std::span<const PhasePoint> grid);

/// Trace norm of a - b, padding the smaller operator with zeros.
double trace_norm_distance(const DensityMatrix &a, const DensityMatrix &b);

/// tr(rho^2).
double purity(const DensityMatrix &m);

/// Largest elementwise |a_mn - b_mn|; dimensions must agree.
double max_abs_difference(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace phasetomo

#endif
