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

#include "phasetomo/recon_single.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "phasetomo/pipeline.h"

using namespace phasetomo;

namespace {

using Poly = std::vector<Rational>;

Poly laguerre_poly(int alpha, int k) {
    Poly out;
    for (int u = 0; u <= k; u++) {
        Rational c(binomial(k + alpha, k - u), factorial(u));
        c.canonicalize();
        out.push_back(u % 2 ? Rational(-c) : c);
    }
    return out;
}

Poly multiply(const Poly &a, const Poly &b) {
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = 0; j < b.size(); j++) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Reduced coefficient R^s_l(t, n) straight from the overlap product
//   e^x f^s_{n,n+l}(sqrt x) = <n|D|s><n+l|D|s> e^x,
// each factor written as sign sqrt(min!/max!) r^{|k-s|} L^{|k-s|}_{min(k,s)}(x) e^{-x/2}.
Rational reduced_oracle(int s, int l, int t, int n) {
    const int odd = l % 2;
    const int e = std::abs(n - s) + std::abs(n + l - s);
    const int shift = (e - odd) / 2;
    Poly prod = multiply(laguerre_poly(std::abs(n - s), std::min(n, s)),
                         laguerre_poly(std::abs(n + l - s), std::min(n + l, s)));
    const int idx = t - shift;
    if (idx < 0 || idx >= static_cast<int>(prod.size())) {
        return 0;
    }
    int sign_exp = std::max(0, s - n) + std::max(0, s - n - l);
    Rational scale(factorial(std::min(n, s)) * factorial(std::min(n + l, s)),
                   factorial(s) * factorial(n) * factorial(n + l));
    scale.canonicalize();
    Rational out = scale * prod[idx];
    return sign_exp % 2 ? Rational(-out) : out;
}

const double kA10[3][6] = {{1, -2, 2, 0, 0, 0}, {0, 2, -4, 3, 0, 0}, {0, 0, 3, -6, 4, 0}};

const Rational kB10[6][6] = {
    {Rational(1), Rational(1), Rational(2, 3), Rational(1, 4), Rational(-2, 15), Rational(-31, 72)},
    {Rational(0), Rational(1, 2), Rational(2, 3), Rational(5, 8), Rational(7, 15), Rational(37, 144)},
    {Rational(0), Rational(0), Rational(1, 3), Rational(1, 2), Rational(8, 15), Rational(17, 36)},
    {Rational(0), Rational(0), Rational(0), Rational(1, 4), Rational(2, 5), Rational(11, 24)},
    {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1, 5), Rational(1, 3)},
    {Rational(0), Rational(0), Rational(0), Rational(0), Rational(0), Rational(1, 6)},
};

DensityMatrix example_state() {
    std::vector<double> alpha{0.5, 0.3, 0.2};
    return DensityMatrix::diagonal(alpha);
}

std::vector<RadialProfile> profiles_for(const DensityMatrix &rho, int s) {
    std::vector<int> s_list{s};
    Tomogram t = simulate_tomogram(rho, s_list);
    std::vector<RadialProfile> out;
    for (int l = 0; l < rho.dim(); l++) {
        out.push_back(t.at(s, l));
    }
    return out;
}

}  // namespace

TEST(recon_single, lemma4_derivative) {
    for (int q = 1; q <= 4; q++) {
        for (int s = 0; s < q; s++) {
            for (Rational x : {Rational(0), Rational(3, 2), Rational(-5)}) {
                ASSERT_EQ(lemma4_derivative(3, q, s, x), 0);
            }
        }
    }
    for (double x : {0.0, 0.5, 2.0}) {
        ASSERT_NEAR(lemma4_derivative(0, 0, 2, x), x * x / 2, 1e-15);
    }
    for (int p = 0; p <= 5; p++) {
        for (int q = 0; q <= 3; q++) {
            for (int s = q; s <= p + q; s++) {
                Rational expected(binomial(p, s - q));
                if ((s + q) % 2) {
                    expected = -expected;
                }
                ASSERT_EQ(lemma4_derivative(p, q, s, Rational(0)), expected);
            }
        }
    }
    // Direct Taylor coefficient of (1-lambda)^2 lambda e^{lambda x} at lambda^3: x^2/2 - 2x + 1.
    Rational x(7, 3);
    ASSERT_EQ(lemma4_derivative(2, 1, 3, x), Rational(x * x / 2 - 2 * x + 1));
}

TEST(recon_single, h_coeff_examples) {
    for (int p = 0; p < 8; p++) {
        ASSERT_NEAR(h_coeff(1, 0, p + 1, p), p + 1, 1e-12);
        ASSERT_NEAR(h_coeff(1, 0, p + 1, p + 1), -(2 * p + 2), 1e-12);
        ASSERT_EQ(h_coeff(1, 0, p + 1, p + 3), 0.0);
    }
}

TEST(recon_single, h_coeff_matches_overlap_oracle) {
    for (int s = 0; s <= 3; s++) {
        for (int l = 0; l <= 3; l++) {
            const int h = l / 2;
            for (int t = 0; t <= 8; t++) {
                for (int n = 0; n <= 8; n++) {
                    Rational r = h_coeff_reduced(s, l, t, n);
                    ASSERT_EQ(r, reduced_oracle(s, l, t, n)) << s << " " << l << " " << t << " " << n;
                    if (t < h || t - h < n - s || n < t - h - s) {
                        ASSERT_EQ(r, 0) << s << " " << l << " " << t << " " << n;
                    }
                }
            }
        }
    }
}

TEST(recon_single, example_coefficient_matrix) {
    auto a = build_coefficient_matrix(1, 0, 6);
    ASSERT_EQ(a.h, 0);
    for (int p = 0; p < 6; p++) {
        for (int n = 0; n < 6; n++) {
            double expected = 0;
            if (n == p) {
                expected = p + 1;
            } else if (n == p + 1) {
                expected = -(2 * p + 2);
            } else if (n == p + 2) {
                expected = p + 2;
            }
            if (p < 3) {
                ASSERT_EQ(expected, kA10[p][n]);
            }
            ASSERT_NEAR(a.a(p, n), expected, 1e-12) << p << "," << n;
        }
    }

    auto exact = exact_coefficient_operator(1);
    auto b = inverse(exact);
    for (int p = 0; p < 6; p++) {
        for (int n = 0; n < 6; n++) {
            ASSERT_EQ(b(p, n), kB10[p][n]) << p << "," << n;
        }
    }
    const auto &bd = inverse_coefficient_matrix(1, 0, 6);
    for (int p = 0; p < 6; p++) {
        for (int n = 0; n < 6; n++) {
            ASSERT_NEAR(bd(p, n), kB10[p][n].get_d(), 1e-15);
        }
    }
}

TEST(recon_single, coefficient_matrix_structure) {
    for (int s = 0; s <= 4; s++) {
        for (int l = 0; l <= 4; l++) {
            auto a = build_coefficient_matrix(s, l, 10);
            for (int p = 0; p < 10; p++) {
                ASSERT_NE(a.a(p, p), 0.0);
                for (int n = 0; n < 10; n++) {
                    if (n < p || n > p + 2 * s) {
                        ASSERT_EQ(a.a(p, n), 0.0) << s << " " << l << " " << p << " " << n;
                    }
                }
            }
        }
    }
    ASSERT_THROW(build_coefficient_matrix(0, 0, 0), DomainError);
}

TEST(recon_single, inverse_identity_exact) {
    for (int s = 0; s <= 3; s++) {
        for (int l = 0; l <= 4; l++) {
            auto r = reduced_coefficient_operator(s, l);
            auto b = inverse(r);
            ASSERT_TRUE(multiply_window(b, r, 12).is_identity()) << s << " " << l;
            ASSERT_TRUE(multiply_window(r, b, 12).is_identity()) << s << " " << l;
        }
    }
    for (int s = 0; s <= 3; s++) {
        auto a = exact_coefficient_operator(s);
        ASSERT_TRUE(multiply_window(inverse(a), a, 10).is_identity());
    }
}

TEST(recon_single, inverse_matrix_is_numerical_inverse) {
    for (int s = 0; s <= 3; s++) {
        for (int l = 0; l <= 4; l++) {
            auto a = build_coefficient_matrix(s, l, 7);
            const auto &b = inverse_coefficient_matrix(s, l, 7);
            Eigen::MatrixXd prod = b * a.a;
            ASSERT_LE((prod - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(recon_single, forward_identity) {
    // Analytic moments equal A times the band, for random states.
    for (std::uint64_t seed = 0; seed < 4; seed++) {
        for (int dim = 2; dim <= 5; dim++) {
            auto rho = random_density_matrix(dim, dim, 300 + seed * 10 + dim);
            for (int s = 0; s <= 2; s++) {
                auto profiles = profiles_for(rho, s);
                for (int l = 0; l < dim; l++) {
                    auto m = moments_from_profile(profiles[l], dim);
                    const int len = dim - l;
                    ASSERT_EQ(m.entries.size(), static_cast<std::size_t>(len));
                    auto a = build_coefficient_matrix(s, l, len);
                    for (int p = 0; p < len; p++) {
                        std::complex<double> expected = 0;
                        for (int n = 0; n < len; n++) {
                            expected += a.a(p, n) * rho(n + l, n);
                        }
                        double scale = std::max(1.0, a.a.row(p).cwiseAbs().maxCoeff());
                        ASSERT_NEAR(std::abs(m.entries[p] - expected), 0.0, 1e-10 * scale)
                            << dim << " " << s << " " << l << " " << p;
                    }
                }
            }
        }
    }
}

TEST(recon_single, example_end_to_end) {
    auto profiles = profiles_for(example_state(), 1);
    auto m = moments_from_profile(profiles[0], 3);
    ASSERT_EQ(m.entries.size(), 3u);
    ASSERT_NEAR(std::abs(m.entries[0] - 0.3), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(m.entries[1] - (-0.2)), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(m.entries[2] - 0.6), 0.0, 1e-12);

    MomentVector given;
    given.s = 1;
    given.l = 0;
    given.entries = {0.3, -0.2, 0.6};
    auto band = reconstruct_band(1, 0, given, 3);
    ASSERT_NEAR(band.values[0].real(), 0.5, 1e-15);
    ASSERT_NEAR(band.values[1].real(), 0.3, 1e-15);
    ASSERT_NEAR(band.values[2].real(), 0.2, 1e-15);

    auto result = reconstruct_single(1, profiles, 3);
    ASSERT_LE(max_abs_difference(result.rho, example_state()), 1e-12);
    ASSERT_TRUE(result.validation.passed());
}

TEST(recon_single, zero_inputs) {
    RadialProfile zero;
    zero.s = 2;
    zero.l = 1;
    for (int i = 1; i <= 40; i++) {
        zero.radii.push_back(0.05 * i);
        zero.values.push_back(0.0);
    }
    auto m = moments_from_profile(zero, 3);
    for (auto v : m.entries) {
        ASSERT_EQ(v, std::complex<double>(0.0));
    }
    MomentVector z;
    z.s = 2;
    z.l = 1;
    z.entries.assign(2, 0.0);
    for (auto v : reconstruct_band(2, 1, z, 2).values) {
        ASSERT_EQ(v, std::complex<double>(0.0));
    }
    ASSERT_THROW(reconstruct_band(1, 1, z, 2), DomainError);
    ASSERT_THROW(reconstruct_band(2, 1, z, 3), DomainError);
}

TEST(recon_single, small_cases) {
    auto one = reconstruct_single(0, profiles_for(DensityMatrix::vacuum(1), 0), 1);
    ASSERT_NEAR(one.rho(0, 0).real(), 1.0, 1e-12);

    auto rho = random_density_matrix(3, 3, 8);
    auto result = reconstruct_single(0, profiles_for(rho, 0), 3);
    ASSERT_LE(max_abs_difference(result.rho, rho), 1e-9);

    auto r4 = random_density_matrix(4, 4, 9);
    auto all = reconstruct_single(2, profiles_for(r4, 2), 4);
    ASSERT_LE(max_abs_difference(all.rho, r4), 1e-9);

    auto partial = profiles_for(rho, 0);
    partial.pop_back();
    ASSERT_THROW(reconstruct_single(0, partial, 3), CoverageError);
}

TEST(recon_single, round_trip) {
    for (int s = 0; s <= 3; s++) {
        for (int dim = 2; dim <= 5; dim++) {
            for (std::uint64_t seed = 0; seed < 5; seed++) {
                auto rho = random_density_matrix(dim, 1 + seed % dim, 7000 + 100 * s + 10 * dim + seed);
                auto result = reconstruct_single(s, profiles_for(rho, s), dim);
                ASSERT_LE(max_abs_difference(result.rho, rho), 1e-9) << s << " " << dim << " " << seed;
            }
        }
    }
}

TEST(recon_single, agrees_with_tomogram_method) {
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        int dim = 2 + seed % 4;
        auto rho = random_density_matrix(dim, dim, 900 + seed);
        auto s_list = full_s_list(dim);
        Tomogram t = simulate_tomogram(rho, s_list);
        auto method1 = reconstruct_tomogram(t);
        for (int s = 0; s < dim; s++) {
            auto method2 = reconstruct_single(t, s);
            ASSERT_LE(max_abs_difference(method1.rho, method2.rho), 1e-8) << seed << " " << s;
        }
    }
}
