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

#ifndef PHASETOMO_TRIINV_H
#define PHASETOMO_TRIINV_H

// Formal inverses of infinite upper-triangular matrices.
//
// An infinite upper-triangular matrix is described lazily by its element
// function. Products and inverses of such matrices only ever involve finite
// sums: (AB)_{m,n} = sum_{k=m}^{n} a_{mk} b_{kn}, and the inverse element
// b_{m,n} depends only on the window of rows and columns m..n. Everything here
// is templated on the scalar so identities can be checked exactly over
// Rational and used numerically over double.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phasetomo/errors.h"
#include "phasetomo/scalar.h"

namespace phasetomo {

/// Dense square block of an upper-triangular operator, rows/columns [0, size).
template <class T>
class Window {
   public:
    explicit Window(std::int64_t size)
        : size_(size), data_(static_cast<std::size_t>(size * size), ScalarTraits<T>::from_int(std::int64_t{0})) {
    }
    std::int64_t size() const {
        return size_;
    }
    T &operator()(std::int64_t i, std::int64_t j) {
        return data_[static_cast<std::size_t>(i * size_ + j)];
    }
    const T &operator()(std::int64_t i, std::int64_t j) const {
        return data_[static_cast<std::size_t>(i * size_ + j)];
    }
    bool is_identity() const {
        for (std::int64_t i = 0; i < size_; ++i) {
            for (std::int64_t j = 0; j < size_; ++j) {
                const T &v = (*this)(i, j);
                if (i == j ? !(v == ScalarTraits<T>::from_int(std::int64_t{1})) : !ScalarTraits<T>::is_zero(v)) {
                    return false;
                }
            }
        }
        return true;
    }

   private:
    std::int64_t size_;
    std::vector<T> data_;
};

/// Lazily evaluated infinite upper-triangular matrix.
///
/// Element (m, n) is zero for n < m and, if a band L is declared, for n > m + L;
/// the element function is only consulted inside that region. Copies share state.
template <class T>
class TriangularOperator {
   public:
    using ElementFn = std::function<T(std::int64_t, std::int64_t)>;

    explicit TriangularOperator(ElementFn element, std::optional<std::int64_t> band = std::nullopt)
        : element_(std::make_shared<ElementFn>(std::move(element))), band_(band) {
        if (band_ && *band_ < 0) {
            throw DomainError("TriangularOperator: band must be nonnegative");
        }
    }

    T operator()(std::int64_t m, std::int64_t n) const {
        if (m < 0 || n < 0) {
            throw DomainError("TriangularOperator: negative index");
        }
        if (n < m || (band_ && n > m + *band_)) {
            return ScalarTraits<T>::from_int(std::int64_t{0});
        }
        return (*element_)(m, n);
    }

    std::optional<std::int64_t> band() const {
        return band_;
    }

    /// Last column index that can be nonzero in row m, capped at `limit`.
    std::int64_t row_end(std::int64_t m, std::int64_t limit) const {
        return band_ ? std::min(limit, m + *band_) : limit;
    }

    Window<T> window(std::int64_t size) const {
        Window<T> out(size);
        for (std::int64_t i = 0; i < size; ++i) {
            for (std::int64_t j = i; j <= row_end(i, size - 1); ++j) {
                out(i, j) = (*this)(i, j);
            }
        }
        return out;
    }

   private:
    std::shared_ptr<ElementFn> element_;
    std::optional<std::int64_t> band_;
};

/// Leading size x size block of A B.
template <class T>
Window<T> multiply_window(const TriangularOperator<T> &a, const TriangularOperator<T> &b, std::int64_t size) {
    Window<T> out(size);
    Window<T> wa = a.window(size);
    Window<T> wb = b.window(size);
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = i; j < size; ++j) {
            T acc = ScalarTraits<T>::from_int(std::int64_t{0});
            for (std::int64_t k = i; k <= j; ++k) {
                acc += wa(i, k) * wb(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

namespace detail {

// Memoized column-by-column back substitution for B = A^{-1}:
//   b_{nn} = 1 / a_{nn},   b_{mn} = -(1 / a_{mm}) sum_{k=m+1}^{n} a_{mk} b_{kn}.
// Column n of B only touches rows m..n of A, so each element is a finite
// window solve. One mutex guards the whole cache.
template <class T>
class InverseCache {
   public:
    InverseCache(TriangularOperator<T> source, bool unit_diagonal)
        : source_(std::move(source)), unit_diagonal_(unit_diagonal) {
    }

    T element(std::int64_t m, std::int64_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto hit = cache_.find({m, n});
        if (hit != cache_.end()) {
            return hit->second;
        }
        for (std::int64_t row = n; row >= m; --row) {
            if (cache_.count({row, n})) {
                continue;
            }
            T pivot = diagonal(row);
            if (row == n) {
                cache_[{row, n}] = ScalarTraits<T>::from_int(std::int64_t{1}) / pivot;
                continue;
            }
            T acc = ScalarTraits<T>::from_int(std::int64_t{0});
            for (std::int64_t k = row + 1; k <= source_.row_end(row, n); ++k) {
                acc += source_(row, k) * cache_.at({k, n});
            }
            cache_[{row, n}] = -acc / pivot;
        }
        return cache_.at({m, n});
    }

   private:
    T diagonal(std::int64_t row) {
        T d = source_(row, row);
        if (unit_diagonal_) {
            bool ok;
            if constexpr (ScalarTraits<T>::exact) {
                ok = d == ScalarTraits<T>::from_int(std::int64_t{1});
            } else {
                ok = ScalarTraits<T>::is_singular(d - ScalarTraits<T>::from_int(std::int64_t{1}));
            }
            if (!ok) {
                throw DomainError("inverse_unit_diagonal: diagonal element at row " + std::to_string(row) +
                                  " is not 1");
            }
        } else if (ScalarTraits<T>::is_singular(d)) {
            throw SingularSystemError("inverse: singular diagonal element at row " + std::to_string(row), row);
        }
        return d;
    }

    TriangularOperator<T> source_;
    bool unit_diagonal_;
    std::mutex mutex_;
    std::map<std::pair<std::int64_t, std::int64_t>, T> cache_;
};

}  // namespace detail

/// Formal inverse of a unit-diagonal upper-triangular operator. The diagonal is
/// checked lazily: querying an element whose window contains a non-unit
/// diagonal entry throws DomainError.
template <class T>
TriangularOperator<T> inverse_unit_diagonal(const TriangularOperator<T> &a) {
    auto cache = std::make_shared<detail::InverseCache<T>>(a, true);
    return TriangularOperator<T>([cache](std::int64_t m, std::int64_t n) { return cache->element(m, n); });
}

/// Formal inverse of an upper-triangular operator with nonzero diagonal.
/// A zero (double: |a_mm| <= 1e-14) diagonal inside a queried window throws
/// SingularSystemError naming the row.
template <class T>
TriangularOperator<T> inverse(const TriangularOperator<T> &a) {
    auto cache = std::make_shared<detail::InverseCache<T>>(a, false);
    return TriangularOperator<T>([cache](std::int64_t m, std::int64_t n) { return cache->element(m, n); });
}

/// b_{m,n} of the inverse by the series route
///   b_{m,m+l} = (1 / a_{m+l,m+l}) sum_{k=0}^{l} [(I - U A)^k]_{m,m+l},  U = diag(1 / a_{jj}),
/// evaluated on the finite window m..n. Reduces to sum_k [(I - A)^k] when the
/// diagonal is 1. Cubic in the window; used to cross-check `inverse`.
template <class T>
T series_inverse_element(const TriangularOperator<T> &a, std::int64_t m, std::int64_t n) {
    const T zero = ScalarTraits<T>::from_int(std::int64_t{0});
    const T one = ScalarTraits<T>::from_int(std::int64_t{1});
    if (n < m) {
        return zero;
    }
    const std::int64_t w = n - m + 1;
    Window<T> c(w);  // I - U A on rows/columns m..n
    for (std::int64_t i = 0; i < w; ++i) {
        T d = a(m + i, m + i);
        if (ScalarTraits<T>::is_singular(d)) {
            throw SingularSystemError("series_inverse_element: singular diagonal at row " + std::to_string(m + i),
                                      m + i);
        }
        for (std::int64_t j = i + 1; j <= a.row_end(m + i, n) - m; ++j) {
            c(i, j) = -a(m + i, m + j) / d;
        }
    }
    // row = e_0 C^k, accumulated over k = 0..w-1.
    std::vector<T> row(static_cast<std::size_t>(w), zero);
    row[0] = one;
    T total = (w == 1) ? one : zero;
    for (std::int64_t k = 1; k < w; ++k) {
        std::vector<T> next(static_cast<std::size_t>(w), zero);
        for (std::int64_t i = 0; i < w; ++i) {
            if (ScalarTraits<T>::is_zero(row[static_cast<std::size_t>(i)])) {
                continue;
            }
            for (std::int64_t j = i + 1; j < w; ++j) {
                next[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(i)] * c(i, j);
            }
        }
        row = std::move(next);
        total += row[static_cast<std::size_t>(w - 1)];
    }
    return total / a(n, n);
}

/// Coefficients a_0..a_L (a_0 != 0, L >= 1) of a banded upper-triangular
/// Toeplitz operator, a_{s,n} = a_{n-s} for s <= n <= s + L.
template <class T>
class ToeplitzBand {
   public:
    explicit ToeplitzBand(std::vector<T> coefficients) : coefficients_(std::move(coefficients)) {
        if (coefficients_.size() < 2) {
            throw DomainError("ToeplitzBand: need at least a_0 and a_1 (L >= 1)");
        }
        if (ScalarTraits<T>::is_singular(coefficients_[0])) {
            throw SingularSystemError("ToeplitzBand: a_0 must be nonzero", 0);
        }
    }

    std::int64_t bandwidth() const {
        return static_cast<std::int64_t>(coefficients_.size()) - 1;
    }
    const T &operator[](std::int64_t u) const {
        return coefficients_[static_cast<std::size_t>(u)];
    }
    const std::vector<T> &coefficients() const {
        return coefficients_;
    }

    TriangularOperator<T> as_operator() const {
        auto coeffs = coefficients_;
        return TriangularOperator<T>(
            [coeffs](std::int64_t m, std::int64_t n) { return coeffs[static_cast<std::size_t>(n - m)]; },
            bandwidth());
    }

   private:
    std::vector<T> coefficients_;
};

/// b_0..b_count with b_0 = 1/a_0 and sum_{j=0}^{min(u,L)} a_j b_{u-j} = 0 for u >= 1,
/// i.e. the power-series reciprocal of a_0 + a_1 x + ... + a_L x^L.
template <class T>
std::vector<T> toeplitz_inverse_sequence(const ToeplitzBand<T> &band, std::int64_t count) {
    if (count < 0) {
        throw DomainError("toeplitz_inverse_sequence: count must be nonnegative");
    }
    std::vector<T> b;
    b.reserve(static_cast<std::size_t>(count + 1));
    b.push_back(ScalarTraits<T>::from_int(std::int64_t{1}) / band[0]);
    for (std::int64_t u = 1; u <= count; ++u) {
        T acc = ScalarTraits<T>::from_int(std::int64_t{0});
        for (std::int64_t j = 1; j <= std::min(u, band.bandwidth()); ++j) {
            acc += band[j] * b[static_cast<std::size_t>(u - j)];
        }
        b.push_back(-acc / band[0]);
    }
    return b;
}

/// Inverts d = A c for a finitely supported c: returns c_n = sum_{s=n}^{len-1} b_{s-n} d_s,
/// which is exact because d then has the same finite support.
template <class T, class V>
std::vector<V> recover_sequence(const ToeplitzBand<T> &band, std::span<const V> d) {
    const auto len = static_cast<std::int64_t>(d.size());
    std::vector<V> c(d.size(), V{});
    if (len == 0) {
        return c;
    }
    std::vector<T> b = toeplitz_inverse_sequence(band, len - 1);
    for (std::int64_t n = 0; n < len; ++n) {
        V acc{};
        for (std::int64_t s = n; s < len; ++s) {
            acc += b[static_cast<std::size_t>(s - n)] * d[static_cast<std::size_t>(s)];
        }
        c[static_cast<std::size_t>(n)] = acc;
    }
    return c;
}

/// Remainder R^n_k = sum_{n'=1}^{L} sum_{s=n'}^{L} b_{n'+k-s} a_s c_{n'+n+k} of the
/// truncated recovery series; the series for c_n converges iff R^n_k -> 0.
/// `c` is the sequence from index 0 and must reach index n + k + L.
template <class T, class V>
V remainder_term(const ToeplitzBand<T> &band, std::span<const V> c, std::int64_t n, std::int64_t k) {
    const std::int64_t bw = band.bandwidth();
    if (n < 0 || k < 0) {
        throw DomainError("remainder_term: n and k must be nonnegative");
    }
    if (n + k + bw >= static_cast<std::int64_t>(c.size())) {
        throw DomainError("remainder_term: tail data must reach index n + k + L");
    }
    std::vector<T> b = toeplitz_inverse_sequence(band, k + bw);
    V total{};
    for (std::int64_t np = 1; np <= bw; ++np) {
        for (std::int64_t s = np; s <= bw; ++s) {
            std::int64_t idx = np + k - s;
            if (idx < 0) {
                continue;
            }
            total += b[static_cast<std::size_t>(idx)] * band[s] * c[static_cast<std::size_t>(np + n + k)];
        }
    }
    return total;
}

}  // namespace phasetomo

#endif
