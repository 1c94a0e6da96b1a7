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

#include "phasetomo/forward.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace phasetomo;

namespace {

DensityMatrix example_state() {
    std::vector<double> alpha{0.5, 0.3, 0.2};
    return DensityMatrix::diagonal(alpha);
}

DensityMatrix plus_state() {
    std::vector<std::complex<double>> psi{1.0, 1.0};
    return DensityMatrix::pure(psi);
}

// D(alpha) on the first `cut` number states.
ComplexMatrix truncated_displacement(std::complex<double> alpha, int cut) {
    ComplexMatrix d(cut, cut);
    auto a = PhasePoint::from_complex(alpha);
    for (int m = 0; m < cut; m++) {
        for (int n = 0; n < cut; n++) {
            d(m, n) = displacement_element(m, n, a);
        }
    }
    return d;
}

}  // namespace

TEST(forward, f_coeff_examples) {
    for (double r : {0.0, 0.4, 1.0, 2.3}) {
        double x = r * r;
        ASSERT_NEAR(f_coeff(0, 0, 0, r), std::exp(-x), 1e-15);
        ASSERT_NEAR(f_coeff(1, 0, 1, r), -std::exp(-x) * r * (1 - x), 1e-15);
    }
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> idx(0, 12);
    std::uniform_real_distribution<double> rr(0.0, 5.0);
    for (int trial = 0; trial < 200; trial++) {
        int s = idx(rng), n = idx(rng), m = idx(rng);
        double r = rr(rng);
        ASSERT_EQ(f_coeff(s, n, m, r), f_coeff(s, m, n, r));
    }
}

TEST(forward, density_examples) {
    auto vac = DensityMatrix::vacuum(3);
    for (double r : {0.0, 0.5, 1.5}) {
        PhasePoint z(r, 0.9);
        ASSERT_NEAR(density(1, vac, z), r * r * std::exp(-r * r), 1e-15);
        ASSERT_NEAR(density(0, vac, z), std::exp(-r * r), 1e-15);
    }
    for (std::uint64_t seed = 0; seed < 5; seed++) {
        auto rho = random_density_matrix(4, 4, seed);
        for (int s = 0; s < 6; s++) {
            double expected = s < 4 ? rho(s, s).real() : 0.0;
            ASSERT_NEAR(density(s, rho, PhasePoint(0.0, 2.0)), expected, 1e-15);
        }
    }
}

TEST(forward, evaluator_matches_density) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 6; seed++) {
        auto rho = random_density_matrix(5, 3, seed);
        for (int s = 0; s < 5; s++) {
            DensityEvaluator eval(s, rho);
            for (int i = 0; i < 20; i++) {
                double r = 5 * u(rng), theta = 2 * M_PI * u(rng);
                ASSERT_NEAR(eval(r, theta), density(s, rho, PhasePoint(r, theta)), 1e-13);
            }
        }
    }
}

TEST(forward, positivity) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10000; trial++) {
        int dim = 1 + trial % 5;
        auto rho = random_density_matrix(dim, 1 + trial % dim, trial);
        int s = trial % 4;
        PhasePoint z(6 * u(rng), 2 * M_PI * u(rng));
        double g = density(s, rho, z);
        ASSERT_GE(g, -1e-10);
        ASSERT_LE(g, 1 + 1e-10);
    }
}

TEST(forward, fourier_component_examples) {
    std::vector<double> origin{0.0};
    auto p = fourier_component(1, example_state(), 0, origin);
    ASSERT_NEAR(p.values[0].real(), 0.3, 1e-15);
    ASSERT_EQ(p.kind, ProfileKind::analytic);

    std::vector<double> radii{0.0, 0.3, 0.9, 1.0, 1.8};
    auto q = fourier_component(1, plus_state(), 1, radii);
    for (std::size_t i = 0; i < radii.size(); i++) {
        double r = radii[i];
        ASSERT_NEAR(std::abs(q.values[i] - (-0.5 * std::exp(-r * r) * r * (1 - r * r))), 0.0, 1e-15);
    }

    auto rho = random_density_matrix(4, 4, 3);
    auto last = fourier_component(2, rho, 3, radii);
    for (std::size_t i = 0; i < radii.size(); i++) {
        auto expected = rho(3, 0) * f_coeff(2, 0, 3, radii[i]);
        ASSERT_NEAR(std::abs(last.values[i] - expected), 0.0, 1e-15);
    }
    ASSERT_THROW(fourier_component(0, rho, 4, radii), DomainError);
}

TEST(forward, fourier_components_resum_density) {
    auto rho = random_density_matrix(4, 3, 12);
    std::vector<double> radii{0.2, 0.7, 1.4, 2.5};
    for (int s = 0; s < 4; s++) {
        std::vector<RadialProfile> parts;
        for (int l = 0; l < 4; l++) {
            parts.push_back(fourier_component(s, rho, l, radii));
        }
        for (std::size_t i = 0; i < radii.size(); i++) {
            double theta = 0.37 + i;
            // The component for -l is the conjugate of that for l.
            std::complex<double> total = parts[0].values[i];
            for (int l = 1; l < 4; l++) {
                std::complex<double> minus_l = 0;
                for (int n = 0; n + l < 4; n++) {
                    minus_l += rho(n, n + l) * f_coeff(s, n + l, n, radii[i]);
                }
                ASSERT_NEAR(std::abs(minus_l - std::conj(parts[l].values[i])), 0.0, 1e-15);
                total += 2.0 * (parts[l].values[i] * std::polar(1.0, -l * theta)).real();
            }
            ASSERT_NEAR(total.real(), density(s, rho, PhasePoint(radii[i], theta)), 1e-14);
        }
    }
}

TEST(forward, radial_profile_check) {
    RadialProfile p;
    p.radii = {0.0, 1.0};
    p.values = {1.0};
    ASSERT_THROW(p.check(), DomainError);
    p.values = {1.0, 0.5};
    p.check();
    p.radii = {1.0, 1.0};
    ASSERT_THROW(p.check(), DomainError);
    p.radii = {0.5, 1.0};
    p.kind = ProfileKind::sampled;
    ASSERT_THROW(p.check(), DomainError);
    p.std_error = {0.1, 0.1};
    p.bin_lo = {0.25, 0.75};
    p.bin_hi = {0.75, 1.25};
    p.check();
}

TEST(forward, cahill_glauber_examples) {
    for (int n = 0; n < 5; n++) {
        for (int l = 0; l < 4; l++) {
            for (double r : {0.0, 0.5, 1.3, 2.2}) {
                ASSERT_NEAR(cahill_glauber_K(0.0, n, l, r), f_coeff(0, n, n + l, r), 1e-15);
            }
        }
    }
    for (double lambda : {0.0, 0.2, 0.7}) {
        for (double r : {0.0, 0.5, 1.9}) {
            double expected = (1 - lambda) * std::exp(-(1 - lambda) * r * r);
            ASSERT_NEAR(cahill_glauber_K(lambda, 0, 0, r), expected, 1e-15);
        }
    }
    ASSERT_NEAR(cahill_glauber_K(0.3, 2, 1, 1.7), cahill_glauber_K_series(0.3, 2, 1, 1.7), 1e-12);
}

TEST(forward, cahill_glauber_forms_agree) {
    for (int n = 0; n <= 8; n++) {
        for (int l = 0; l <= 6; l++) {
            for (double lambda : {0.05, 0.3, 0.5, 0.9}) {
                for (double r : {0.1, 0.8, 1.7, 3.0}) {
                    double a = cahill_glauber_K(lambda, n, l, r);
                    double b = cahill_glauber_K_series(lambda, n, l, r);
                    ASSERT_NEAR(a, b, 1e-12) << n << " " << l << " " << lambda << " " << r;
                    auto c = cahill_glauber_K(std::complex<double>(lambda, 0.0), n, l, r);
                    ASSERT_NEAR(std::abs(c - a), 0.0, 1e-12);
                }
            }
        }
    }
}

TEST(forward, cahill_glauber_forms_agree_exactly) {
    for (int n = 0; n <= 6; n++) {
        for (int l = 0; l <= 4; l++) {
            for (Rational lambda : {Rational(3, 10), Rational(1, 2), Rational(7, 9)}) {
                for (Rational x : {Rational(0), Rational(289, 100), Rational(5, 3)}) {
                    ASSERT_EQ(cahill_glauber_closed_part(lambda, n, l, x), cahill_glauber_series_part(lambda, n, l, x))
                        << n << " " << l << " " << lambda << " " << x;
                }
            }
        }
    }
}

TEST(forward, w_lambda) {
    auto rho = random_density_matrix(3, 3, 21);
    PhasePoint z(0.9, 1.1);
    ASSERT_NEAR(w_lambda_density(0.0, rho, z), density(0, rho, z), 1e-15);
    for (double lambda : {0.1, 0.4, 0.8}) {
        ASSERT_NEAR(w_lambda_density(lambda, DensityMatrix::vacuum(2), PhasePoint(0.0, 0.0)), 1 - lambda, 1e-15);
    }
}

TEST(forward, w_lambda_consistency) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; trial++) {
        auto rho = random_density_matrix(1 + trial % 4, 1, trial);
        PhasePoint z(3 * u(rng), 2 * M_PI * u(rng));
        double eta = 0.3 + 0.7 * u(rng);
        double lambda = efficiency_to_lambda(eta);
        double direct = 0;
        double weight = 1 - lambda;
        for (int k = 0; k < 400; k++) {
            direct += weight * density(k, rho, z);
            weight *= lambda;
        }
        ASSERT_NEAR(w_lambda_density(lambda, rho, z), direct, 1e-10);
        if (lambda > 0) {
            ASSERT_NEAR(w_lambda_density_closed(lambda, rho, z).real(), direct, 1e-10);
        }
    }
}

TEST(forward, lambda_series_coefficient) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; trial++) {
        auto rho = random_density_matrix(1 + trial % 5, 1 + trial % 2 * (trial % 5), trial);
        PhasePoint z(3 * u(rng), 2 * M_PI * u(rng));
        for (int s = 0; s <= 3; s++) {
            ASSERT_NEAR(lambda_series_coefficient(s, rho, z), density(s, rho, z), 1e-8);
        }
    }
}

TEST(forward, efficiency_to_lambda) {
    ASSERT_EQ(efficiency_to_lambda(1.0), 0.0);
    ASSERT_NEAR(efficiency_to_lambda(0.9), 0.1, 1e-15);
    ASSERT_EQ(efficiency_to_lambda(0.75), 0.25);
    ASSERT_THROW(efficiency_to_lambda(0.0), DomainError);
    ASSERT_THROW(efficiency_to_lambda(1.5), DomainError);
}

TEST(forward, normalization) {
    for (int dim = 1; dim <= 4; dim++) {
        for (int s = 0; s <= 3; s++) {
            auto rho = random_density_matrix(dim, dim, 100 + dim);
            ASSERT_NEAR(disk_mass(s, rho, 8.0), 1.0, 1e-6) << dim << " " << s;
        }
    }
    // Vacuum at s = 0 has mass 1 - e^{-R^2} inside radius R.
    ASSERT_NEAR(disk_mass(0, DensityMatrix::vacuum(1), 1.5), 1 - std::exp(-2.25), 1e-12);
}

TEST(forward, covariance) {
    const int cut = 40;
    auto rho = random_density_matrix(3, 3, 77);
    std::complex<double> alpha = std::polar(0.3, 0.5);
    ComplexMatrix big = ComplexMatrix::Zero(cut, cut);
    big.topLeftCorner(3, 3) = rho.entries();
    ComplexMatrix d = truncated_displacement(alpha, cut);
    DensityMatrix shifted(ComplexMatrix(d * big * d.adjoint()));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; trial++) {
        PhasePoint z(2.5 * u(rng), 2 * M_PI * u(rng));
        PhasePoint back = PhasePoint::from_complex(z.z() - alpha);
        for (int s = 0; s <= 2; s++) {
            ASSERT_NEAR(density(s, shifted, z), density(s, rho, back), 1e-8);
        }
    }
}

TEST(forward, sample_basics) {
    auto empty = sample(0, DensityMatrix::vacuum(1), 0, 1, 5.0);
    ASSERT_EQ(empty.count, 0);
    ASSERT_TRUE(empty.points.empty());

    auto a = sample(1, example_state(), 2000, 9, 5.0);
    auto b = sample(1, example_state(), 2000, 9, 5.0);
    ASSERT_EQ(a.points.size(), 2000u);
    for (std::size_t i = 0; i < a.points.size(); i++) {
        ASSERT_EQ(a.points[i].r(), b.points[i].r());
        ASSERT_EQ(a.points[i].theta(), b.points[i].theta());
        ASSERT_LE(a.points[i].r(), 5.0);
    }
    auto c = sample(1, example_state(), 2000, 10, 5.0);
    ASSERT_NE(a.points[0].r(), c.points[0].r());

    auto truncated = sample(0, DensityMatrix::vacuum(1), 10, 1, 0.5);
    ASSERT_TRUE(truncated.truncation_warning);
    ASSERT_NEAR(truncated.truncated_mass, std::exp(-0.25), 1e-10);
    ASSERT_THROW(sample(0, DensityMatrix::vacuum(1), 10, 1, -1.0), DomainError);
}

TEST(forward, sample_number_state_moments) {
    const std::int64_t count = 40000;
    for (int n = 0; n <= 2; n++) {
        ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
        m(n, n) = 1;
        DensityMatrix rho(m);
        auto set = sample(0, rho, count, 1234 + n, default_r_max(n + 1, 0));
        ASSERT_FALSE(set.truncation_warning);
        double mean = 0;
        for (const auto &p : set.points) {
            mean += p.r() * p.r();
        }
        mean /= count;
        ASSERT_NEAR(mean, n + 1.0, 3 * std::sqrt(n + 1.0) / std::sqrt(double(count)));
    }
}
