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

#ifndef PHASETOMO_SPECIAL_FN_H
#define PHASETOMO_SPECIAL_FN_H

#include <complex>
#include <cstdint>

#include "phasetomo/errors.h"
#include "phasetomo/scalar.h"

namespace phasetomo {

/// A point z = r e^{i theta} of the phase plane, with r >= 0 and theta in [0, 2pi).
class PhasePoint {
   public:
    PhasePoint() = default;
    PhasePoint(double r, double theta);
    static PhasePoint from_complex(std::complex<double> z);

    double r() const {
        return r_;
    }
    double theta() const {
        return theta_;
    }
    std::complex<double> z() const {
        return std::polar(r_, theta_);
    }

   private:
    double r_ = 0.0;
    double theta_ = 0.0;
};

/// C(n, k). Zero when k < 0 or k > n; throws DomainError for n < 0.
BigInt binomial(std::int64_t n, std::int64_t k);

/// C(n, k) extended to negative n by C(n, k) = (-1)^k C(k - n - 1, k).
BigInt binomial_generalized(std::int64_t n, std::int64_t k);

/// n! exactly.
BigInt factorial(std::int64_t n);

/// Floating-point C(n, k) (0 outside 0 <= k <= n).
double binomial_f(std::int64_t n, std::int64_t k);

/// Floating-point n! for n <= 170.
double factorial_f(std::int64_t n);

/// Associated Laguerre polynomial L^alpha_s(x) by the three-term recurrence in s.
double laguerre(int alpha, int s, double x);
std::complex<double> laguerre(int alpha, int s, std::complex<double> x);

/// L^alpha_s(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
/// Works for double, complex and Rational scalars.
template <class V>
V laguerre_recurrence(int alpha, int s, const V &x) {
    if (alpha < 0 || s < 0) {
        throw DomainError("laguerre: alpha and s must be nonnegative");
    }
    V prev = V(1.0);
    if (s == 0) {
        return prev;
    }
    V cur = V(1.0 + alpha) - x;
    for (int k = 1; k < s; ++k) {
        V next = V(((V(2.0 * k + 1.0 + alpha) - x) * cur - V(k + alpha) * prev) / V(k + 1.0));
        prev = cur;
        cur = next;
    }
    return cur;
}

/// L^alpha_s(x) from the defining sum  sum_u (-1)^u / u! C(s + alpha, s - u) x^u.
/// Intended for exact scalars; alternating cancellation makes it a poor float evaluator.
template <class T>
T laguerre_sum(int alpha, int s, const T &x) {
    if (alpha < 0 || s < 0) {
        throw DomainError("laguerre_sum: alpha and s must be nonnegative");
    }
    T total = ScalarTraits<T>::from_int(std::int64_t{0});
    T power = ScalarTraits<T>::from_int(std::int64_t{1});
    for (int u = 0; u <= s; ++u) {
        T term = ScalarTraits<T>::from_int(binomial(s + alpha, s - u)) * power /
                 ScalarTraits<T>::from_int(factorial(u));
        if (u % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
        power *= x;
    }
    return total;
}

/// sqrt(p! / q!). Exact integer arithmetic for p, q <= 20, an exponent-tracked
/// product otherwise. Throws DomainError if the result is outside the double range.
double sqrt_factorial_ratio(std::int64_t p, std::int64_t q);

/// log sqrt(p! / q!), safe for any p, q >= 0.
double log_sqrt_factorial_ratio(std::int64_t p, std::int64_t q);

/// Number-basis matrix element <m| D(z) |n> of the displacement operator.
std::complex<double> displacement_element(int m, int n, const PhasePoint &z);

}  // namespace phasetomo

#endif
