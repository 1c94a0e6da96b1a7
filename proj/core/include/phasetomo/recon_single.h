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

#ifndef PHASETOMO_RECON_SINGLE_H
#define PHASETOMO_RECON_SINGLE_H

// Reconstruction of a finite density matrix from one distribution G^{|s>}_rho.
//
// With x = r^2, l = 2h + odd and the auxiliary function
//
//   P_l(x) = x^{-odd/2} e^x G^{|s>}_{rho,l}(sqrt x),
//
// the derivative moments m_p = d^{p+s+h}/dx^{p+s+h} P_l(0) satisfy
// m_p = sum_{n >= p} A^{s,l}_{pn} rho_{n+l,n} with A upper triangular, so the
// band follows from the formal inverse B = A^{-1}.
//
// A^{s,l}_{pn} = H^s_l(t, n), t = p + s + h, factors as t! sqrt(n!(n+l)!) R^s_l(t, n)
// with R rational; the inverse is computed exactly on R.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "phasetomo/forward.h"
#include "phasetomo/recon_tomogram.h"
#include "phasetomo/special_fn.h"
#include "phasetomo/triinv.h"

namespace phasetomo {

enum class Parity { even, odd };

/// (1/s!) d^s/dlambda^s [(1-lambda)^p lambda^q e^{lambda x}] at lambda = 0:
///   sum_{k=q}^{min(s, p+q)} (-1)^{k+q} / (s-k)! C(p, k-q) x^{s-k}.
template <class T>
T lemma4_derivative(int p, int q, int s, const T &x) {
    if (p < 0 || q < 0 || s < 0) {
        throw DomainError("lemma4_derivative: p, q, s must be nonnegative");
    }
    T total = ScalarTraits<T>::from_int(std::int64_t{0});
    for (int k = q; k <= std::min(s, p + q); ++k) {
        T term = ScalarTraits<T>::from_int(binomial(p, k - q)) / ScalarTraits<T>::from_int(factorial(s - k));
        for (int i = 0; i < s - k; ++i) {
            term *= x;
        }
        if ((k + q) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

/// R^s_l(t, n) = (-1)^{s+h+t+n} / (h+t+n-s+odd)!
///   * sum_{u=max(0,n-s)}^{min(n,t-h)} C(2(u+h)+odd, u) C(s-n+u, t-h-u) / ((n-u)! (u-n+s)!),
/// zero when t < h or h+t+n-s+odd < 0.
Rational h_coeff_reduced(int s, int l, std::int64_t t, std::int64_t n);

/// H^s_l(t, n) = t! sqrt(n!(n+l)!) R^s_l(t, n).
double h_coeff(int s, int l, std::int64_t t, std::int64_t n);

/// Leading size x size block of A^{s,l}.
struct CoefficientMatrix {
    int s = 0;
    int l = 0;
    int h = 0;
    Eigen::MatrixXd a;
};

/// Builds A^{s,l}_{pn} = H^s_l(p+s+h, n) for p, n < size. Throws ConsistencyError
/// if an entry below the diagonal is nonzero and SingularSystemError (row p) on a
/// zero diagonal entry.
CoefficientMatrix build_coefficient_matrix(int s, int l, int size);

/// A^{s,0} exactly (sqrt(n! n!) = n! is rational), band 2s.
TriangularOperator<Rational> exact_coefficient_operator(int s);

/// R^s_l(p+s+h, n) as an operator, band 2s. A = diag(t_p!) R diag(sqrt(n!(n+l)!)).
TriangularOperator<Rational> reduced_coefficient_operator(int s, int l);

/// Leading size x size block of B^{s,l} = (A^{s,l})^{-1}, computed exactly and
/// memoized per (s, l, size) behind a mutex.
const Eigen::MatrixXd &inverse_coefficient_matrix(int s, int l, int size);

/// Derivative moments m_p = d^{p+s+h}/dx^{p+s+h} P_l(0), p = 0..entries.size()-1.
struct MomentVector {
    int s = 0;
    int l = 0;
    std::vector<std::complex<double>> entries;
    Eigen::MatrixXd covariance;  ///< of the real parts; imaginary parts share it
    double misfit = 0.0;         ///< misfit of the underlying radial fit

    int h() const {
        return l / 2;
    }
    Parity parity() const {
        return l % 2 == 0 ? Parity::even : Parity::odd;
    }
};

/// Fits P_l as x^h Q(x) with deg Q = dim - 1 - l + s (or from p_degree, see
/// fit_degree) and returns dim - l moments.
MomentVector moments_from_profile(const RadialProfile &profile, int dim, std::optional<int> p_degree = std::nullopt);

/// rho_{n+l,n} = sum_{p=n}^{band_len-1} B^{s,l}_{np} m_p, n = 0..band_len-1.
Band reconstruct_band(int s, int l, const MomentVector &m, int band_len);

/// Reconstructs a dim x dim matrix from the profiles (s, l), l = 0..dim-1, of one s.
ReconstructionResult reconstruct_single(int s, std::span<const RadialProfile> profiles, int dim,
                                        std::optional<int> p_degree = std::nullopt);

/// Same, taking the (s, l) profiles from a tomogram of size dim_hint.
ReconstructionResult reconstruct_single(const Tomogram &t, int s, std::optional<int> p_degree = std::nullopt);

}  // namespace phasetomo

#endif
