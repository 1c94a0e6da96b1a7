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

#ifndef PHASETOMO_SCALAR_H
#define PHASETOMO_SCALAR_H

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>

namespace phasetomo {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Arithmetic shared by the exact (Rational) and floating (double) code paths.
///
/// `is_singular` is the pivot test used by the triangular solvers: exact zero
/// for rationals, magnitude at most 1e-14 for doubles.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr double singular_threshold = 1e-14;
    static double from_int(const BigInt &v) {
        return v.get_d();
    }
    static double from_int(std::int64_t v) {
        return static_cast<double>(v);
    }
    static bool is_zero(double v) {
        return v == 0.0;
    }
    static bool is_singular(double v) {
        return std::abs(v) <= singular_threshold;
    }
    static double to_double(double v) {
        return v;
    }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> from_int(const BigInt &v) {
        return {v.get_d(), 0.0};
    }
    static std::complex<double> from_int(std::int64_t v) {
        return {static_cast<double>(v), 0.0};
    }
    static bool is_zero(const std::complex<double> &v) {
        return v == std::complex<double>{};
    }
    static bool is_singular(const std::complex<double> &v) {
        return std::abs(v) <= ScalarTraits<double>::singular_threshold;
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(const BigInt &v) {
        return Rational(v);
    }
    static Rational from_int(std::int64_t v) {
        return Rational(BigInt(static_cast<long>(v)));
    }
    static bool is_zero(const Rational &v) {
        return sgn(v) == 0;
    }
    static bool is_singular(const Rational &v) {
        return sgn(v) == 0;
    }
    static double to_double(const Rational &v) {
        return v.get_d();
    }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

}  // namespace phasetomo

#endif
