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

#ifndef PHASETOMO_RECON_TOMOGRAM_H
#define PHASETOMO_RECON_TOMOGRAM_H

// Reconstruction from the full tomogram {G^{|s>}_rho : s = 0, 1, ...}.
//
// The diagonal is read off the origin, rho_ss = G^{|s>}_{rho,0}(0). For l >= 1
// the small-r limits
//
//   d^l_s = lim_{r->0} e^{r^2} r^{-l} G^{|s>}_{rho,l}(r) = sum_n T^l_{sn} rho_{n+l,n}
//
// form a banded Toeplitz system in the rescaled band, which is inverted with
// the binomial pair a_u = (-1)^u C(l, u), b_u = C(u + l - 1, l - 1).

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "phasetomo/forward.h"
#include "phasetomo/states.h"

namespace phasetomo {

/// Collection of radial profiles indexed by (s, l), for an assumed matrix size dim_hint.
class Tomogram {
   public:
    Tomogram() = default;
    explicit Tomogram(int dim_hint);

    int dim_hint() const {
        return dim_hint_;
    }
    /// Inserts or replaces the profile for (p.s, p.l) after checking it.
    void add(RadialProfile p);
    bool contains(int s, int l) const;
    /// Throws CoverageError naming (s, l) if absent.
    const RadialProfile &at(int s, int l) const;
    const std::map<std::pair<int, int>, RadialProfile> &profiles() const {
        return profiles_;
    }

   private:
    int dim_hint_ = 1;
    std::map<std::pair<int, int>, RadialProfile> profiles_;
};

enum class Provenance { analytic, fitted };

/// d^l_s for s = l .. l + entries.size() - 1.
struct DVector {
    int l = 1;
    std::vector<std::complex<double>> entries;
    std::vector<double> std_error;  ///< zero for analytic input
    Provenance provenance = Provenance::analytic;

    int s_max() const {
        return l + static_cast<int>(entries.size()) - 1;
    }
};

/// Band rho_{n+l,n}, n = 0, 1, ..., with a standard error per entry.
struct Band {
    int l = 0;
    std::vector<std::complex<double>> values;
    std::vector<double> std_error;
};

/// T^l_{sn} = (-1)^{s-n} sqrt((n+l)!/n!) / ((s-n)! (n+l-s)!) for s-l <= n <= s, else 0.
/// Indices outside that range give 0 before the s >= l >= 1 precondition is checked.
double t_limit_coeff(int l, int s, int n);

/// Limit e^{x} r^{-l} G_l at x = 0 of one profile, fitted with the exact degree
/// dim - 1 - l + s unless p_degree is given (see fit_degree).
struct OriginLimit {
    std::complex<double> value;
    double std_error = 0.0;
    double misfit = 0.0;
};
OriginLimit origin_limit(const RadialProfile &p, int dim, std::optional<int> p_degree = std::nullopt);

/// rho_ss = G^{|s>}_{rho,0}(0), s = 0..dim_hint-1.
std::vector<double> diagonal_from_origin(const Tomogram &t);

/// d^l_s from the (s, l) profile.
std::complex<double> extract_d(const Tomogram &t, int l, int s);

/// d^l_s for s = l..dim_hint-1.
DVector extract_d_vector(const Tomogram &t, int l);

/// rho_{n+l,n} = (-1)^l l! sqrt(n!/(n+l)!) sum_{s >= n+l} C(s-n-1, l-1) d^l_s,
/// for n = 0..s_max-l, computed through the Toeplitz recovery.
Band reconstruct_offdiagonal(int l, const DVector &d);

struct ConditionReport {
    int l = 0;
    bool passed = false;
    bool finite_support = false;
    /// Log-log slope of m^{3l/2 - 1} |rho_{m,m-l}| over the second half of the tail.
    double slope = 0.0;
    std::string detail;
};

/// Checks whether m^{3l/2 - 1} rho_{m,m-l} -> 0 along the tail values[i] = rho_{m,m-l},
/// m = first_m + i. A tail that ends in zeros passes. Otherwise the decay is judged
/// by the slope of log w_m against log m over the last half of the tail; slopes
/// <= -0.05 pass. The condition is sufficient, not necessary, for the series to converge.
ConditionReport condition_check(std::span<const std::complex<double>> values, int l, int first_m);

struct BandDiagnostics {
    int l = 0;
    double max_misfit = 0.0;  ///< largest fit misfit among the profiles used
    ConditionReport condition;
};

struct ReconstructionResult {
    DensityMatrix rho;
    Eigen::MatrixXd std_error;  ///< propagated standard error of each entry
    ValidationReport validation;
    std::vector<BandDiagnostics> bands;
    std::vector<std::string> warnings;
};

/// Assembles rho from bands l = 0..dim-1 (band 0 real), mirroring rho_{n,n+l} = conj(rho_{n+l,n}).
ReconstructionResult assemble(int dim, const std::vector<Band> &bands, std::vector<BandDiagnostics> diagnostics);

/// Full reconstruction from a tomogram covering s = 0..N-1 (l = 0) and s = l..N-1 (l >= 1).
ReconstructionResult reconstruct_tomogram(const Tomogram &t, std::optional<int> p_degree = std::nullopt);

}  // namespace phasetomo

#endif
