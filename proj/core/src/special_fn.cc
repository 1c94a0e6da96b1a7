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

#include "phasetomo/special_fn.h"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace phasetomo {

namespace {

constexpr std::int64_t kDirectFactorialLimit = 20;

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
    std::array<std::uint64_t, 21> out{};
    out[0] = 1;
    for (std::size_t i = 1; i < out.size(); ++i) {
        out[i] = out[i - 1] * i;
    }
    return out;
}();

// The product lo * (lo+1) * ... * hi as mantissa * 2^exponent with mantissa in [0.5, 1).
struct ScaledProduct {
    double mantissa = 1.0;
    long exponent = 0;
};

ScaledProduct rising_product(std::int64_t lo, std::int64_t hi) {
    ScaledProduct out;
    int e = 0;
    out.mantissa = std::frexp(1.0, &e);
    out.exponent = e;
    for (std::int64_t i = lo; i <= hi; ++i) {
        out.mantissa *= static_cast<double>(i);
        out.mantissa = std::frexp(out.mantissa, &e);
        out.exponent += e;
    }
    return out;
}

}  // namespace

PhasePoint::PhasePoint(double r, double theta) {
    if (!std::isfinite(r) || !std::isfinite(theta)) {
        throw DomainError("PhasePoint: coordinates must be finite");
    }
    if (r < 0.0) {
        throw DomainError("PhasePoint: r must be nonnegative");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) {
        t += two_pi;
    }
    if (t >= two_pi) {
        t = 0.0;
    }
    r_ = r;
    theta_ = t;
}

PhasePoint PhasePoint::from_complex(std::complex<double> z) {
    return PhasePoint(std::abs(z), std::arg(z));
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw DomainError("binomial: negative n requires binomial_generalized");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigInt binomial_generalized(std::int64_t n, std::int64_t k) {
    if (k < 0) {
        return 0;
    }
    if (n >= 0) {
        return binomial(n, k);
    }
    BigInt v = binomial(k - n - 1, k);
    return (k % 2 == 0) ? v : BigInt(-v);
}

BigInt factorial(std::int64_t n) {
    if (n < 0) {
        throw DomainError("factorial: negative argument");
    }
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

double binomial_f(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw DomainError("binomial_f: negative n");
    }
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double out = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out < 9e15 ? std::round(out) : out;
}

double factorial_f(std::int64_t n) {
    if (n < 0 || n > 170) {
        throw DomainError("factorial_f: argument outside [0, 170]");
    }
    if (n <= kDirectFactorialLimit) {
        return static_cast<double>(kFactorials[static_cast<std::size_t>(n)]);
    }
    ScaledProduct p = rising_product(2, n);
    return std::ldexp(p.mantissa, static_cast<int>(p.exponent));
}

double laguerre(int alpha, int s, double x) {
    return laguerre_recurrence<double>(alpha, s, x);
}

std::complex<double> laguerre(int alpha, int s, std::complex<double> x) {
    return laguerre_recurrence<std::complex<double>>(alpha, s, x);
}

double log_sqrt_factorial_ratio(std::int64_t p, std::int64_t q) {
    if (p < 0 || q < 0) {
        throw DomainError("log_sqrt_factorial_ratio: negative argument");
    }
    if (p == q) {
        return 0.0;
    }
    bool inverted = p < q;
    if (inverted) {
        std::swap(p, q);
    }
    ScaledProduct prod = rising_product(q + 1, p);
    double log_ratio = std::log(prod.mantissa) + static_cast<double>(prod.exponent) * std::numbers::ln2;
    return inverted ? -0.5 * log_ratio : 0.5 * log_ratio;
}

double sqrt_factorial_ratio(std::int64_t p, std::int64_t q) {
    if (p < 0 || q < 0) {
        throw DomainError("sqrt_factorial_ratio: negative argument");
    }
    if (p == q) {
        return 1.0;
    }
    bool inverted = p < q;
    std::int64_t hi = inverted ? q : p;
    std::int64_t lo = inverted ? p : q;
    double root;
    if (hi <= kDirectFactorialLimit) {
        std::uint64_t ratio = kFactorials[static_cast<std::size_t>(hi)] / kFactorials[static_cast<std::size_t>(lo)];
        root = std::sqrt(static_cast<double>(ratio));
    } else {
        ScaledProduct prod = rising_product(lo + 1, hi);
        // sqrt(m * 2^e) with an even exponent split off exactly.
        double m = prod.mantissa;
        long e = prod.exponent;
        if (e % 2 != 0) {
            m *= 2.0;
            e -= 1;
        }
        long half = e / 2;
        if (half > std::numeric_limits<double>::max_exponent) {
            throw DomainError("sqrt_factorial_ratio: result outside double range");
        }
        root = std::ldexp(std::sqrt(m), static_cast<int>(half));
    }
    return inverted ? 1.0 / root : root;
}

std::complex<double> displacement_element(int m, int n, const PhasePoint &z) {
    if (m < 0 || n < 0) {
        throw DomainError("displacement_element: indices must be nonnegative");
    }
    const double r = z.r();
    if (r == 0.0) {
        return m == n ? 1.0 : 0.0;
    }
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    const int gap = hi - lo;
    const double x = r * r;
    double log_magnitude = log_sqrt_factorial_ratio(lo, hi) - 0.5 * x + gap * std::log(r);
    double value = std::exp(log_magnitude) * laguerre(gap, lo, x);
    if (n > m && (n - m) % 2 != 0) {
        value = -value;
    }
    if (m == n) {
        return value;
    }
    return std::polar(1.0, z.theta() * (m - n)) * value;
}

}  // namespace phasetomo
