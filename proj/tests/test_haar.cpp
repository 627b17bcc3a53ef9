// Copyright 2026 The cfsupp Authors
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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cfs/codes.hpp"
#include "cfs/haar.hpp"
#include "cfs/quadrature.hpp"
#include "test_util.hpp"

namespace cfs {
namespace {

Matrix2 random_matrix2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix2 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

Complex expectation(const QubitState &s, const Matrix2 &m) {
    Eigen::Vector2cd psi(s.c0, s.c1);
    return psi.dot(m * psi);
}

TEST(HaarAverage, Identity) {
    Matrix2 id = Matrix2::Identity();
    std::array<Matrix2, 1> ms{id};
    EXPECT_NEAR(std::abs(haar_average(ms) - 1.0), 0.0, 1e-15);
}

TEST(HaarAverage, PauliZSecondMoment) {
    Matrix2 z;
    z << 1, 0, 0, -1;
    std::array<Matrix2, 2> ms{z, z};
    EXPECT_NEAR(std::abs(haar_average(ms) - 1.0 / 3.0), 0.0, 1e-15);
}

TEST(HaarAverage, UnsupportedOrder) {
    std::array<Matrix2, 4> ms{Matrix2::Identity(), Matrix2::Identity(), Matrix2::Identity(), Matrix2::Identity()};
    EXPECT_THROW(haar_average(ms), UnsupportedMomentOrder);
    EXPECT_THROW(haar_average(std::span<const Matrix2>{}), UnsupportedMomentOrder);
}

TEST(HaarAverage, SecondMomentEqualsSixStateDesign) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix2 m1 = random_matrix2(2 * seed), m2 = random_matrix2(2 * seed + 1);
        Complex design = 0.0;
        for (const QubitState &s : pauli_eigenstates()) {
            design += expectation(s, m1) * expectation(s, m2) / 6.0;
        }
        std::array<Matrix2, 2> ms{m1, m2};
        EXPECT_LT(std::abs(haar_average(ms) - design), 1e-12);
    }
}

TEST(HaarAverage, AgreesWithGeneralPermutationFormula) {
    for (int t = 1; t <= 3; ++t) {
        std::vector<Matrix2> small;
        std::vector<Eigen::MatrixXcd> general;
        for (int i = 0; i < t; ++i) {
            small.push_back(random_matrix2(40 + i));
            general.push_back(small.back());
        }
        EXPECT_LT(std::abs(haar_average(small) - haar_moment(general)), 1e-12) << t;
    }
}

// The general formula in dimension 3 against direct sampling of Gaussian vectors.
TEST(HaarMoment, QutritSecondMomentMonteCarlo) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Random(3, 3), m2 = Eigen::MatrixXcd::Random(3, 3);
    const int samples = 200000;
    std::vector<Complex> values(samples);
    for (int i = 0; i < samples; ++i) {
        Eigen::Vector3cd v;
        for (int k = 0; k < 3; ++k) {
            v(k) = Complex(g(rng), g(rng));
        }
        v.normalize();
        values[i] = v.dot(m1 * v) * v.dot(m2 * v);
    }
    Complex mean = 0.0;
    for (Complex v : values) {
        mean += v / double(samples);
    }
    double var_re = 0.0, var_im = 0.0;
    for (Complex v : values) {
        var_re += std::pow(v.real() - mean.real(), 2) / samples;
        var_im += std::pow(v.imag() - mean.imag(), 2) / samples;
    }
    std::array<Eigen::MatrixXcd, 2> ms{m1, m2};
    Complex exact = haar_moment(ms);
    EXPECT_LT(std::abs(exact.real() - mean.real()), 3.0 * std::sqrt(var_re / samples) + 1e-12);
    EXPECT_LT(std::abs(exact.imag() - mean.imag()), 3.0 * std::sqrt(var_im / samples) + 1e-12);
}

TEST(HaarAverage, BinomialCodeObservablesMonteCarlo) {
    FockSpace space(60);
    BosonicCode code = binomial_code(2, 4, space);
    FockOperator a = annihilation(space);
    Matrix2 m1 = compress(code, number_operator(space));
    Matrix2 m2 = compress(code, a * a);
    Matrix2 m3 = compress(code, creation(space) * creation(space));
    std::vector<std::vector<Matrix2>> cases{{m1, m2}, {m2, m3}, {m2, m1, m3}, {m3, m3 + m1, m2}};

    const std::size_t samples = 1000000;
    std::vector<QubitState> states = haar_sample(2024, samples);
    double n = static_cast<double>(samples);
    for (const std::vector<Matrix2> &ms : cases) {
        Complex sum = 0.0;
        double sq = 0.0;
        for (const QubitState &s : states) {
            Complex v = 1.0;
            for (const Matrix2 &m : ms) {
                v *= expectation(s, m);
            }
            sum += v;
            sq += std::norm(v);
        }
        Complex mean = sum / n;
        double se = std::sqrt((sq / n - std::norm(mean)) / n);
        EXPECT_GT(se, 0.0);
        EXPECT_LT(std::abs(haar_average(ms) - mean), 3.0 * se) << ms.size();
    }
}

TEST(Compress, TraceIsTwiceCodespaceTrace) {
    FockSpace space(60);
    BosonicCode code = cat_code(6, 1.916, space);
    FockOperator x = number_operator(space) * number_operator(space);
    EXPECT_NEAR(std::abs(compress(code, x).trace() - 2.0 * (x * code.codespace_identity()).trace()), 0.0, 1e-12);
}

TEST(HaarSample, Reproducible) {
    std::vector<QubitState> a = haar_sample(9, 50), b = haar_sample(9, 50), c = haar_sample(10, 50);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].c0, b[i].c0);
        EXPECT_EQ(a[i].c1, b[i].c1);
        EXPECT_GE(a[i].c0, 0.0);
        EXPECT_NEAR(a[i].c0 * a[i].c0 + std::norm(a[i].c1), 1.0, 1e-14);
        differs = differs || a[i].c0 != c[i].c0;
    }
    EXPECT_TRUE(differs);
}

// |c0|^2 is uniform on [0, 1]: mean 1/2 (variance 1/12) and E|c0|^4 = 1/3 (variance 4/45).
TEST(HaarSample, PopulationMoments) {
    const std::size_t n = 200000;
    std::vector<QubitState> states = haar_sample(5, n);
    double m1 = 0.0, m2 = 0.0;
    for (const QubitState &s : states) {
        double u = s.c0 * s.c0;
        m1 += u / n;
        m2 += u * u / n;
    }
    EXPECT_LT(std::abs(m1 - 0.5), 3.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_LT(std::abs(m2 - 1.0 / 3.0), 3.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST(GaussLegendre, PolynomialExactness) {
    for (int order : {4, 8, 16}) {
        GaussLegendreRule rule = gauss_legendre(order);
        ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
        for (int degree = 0; degree < 2 * order; ++degree) {
            double sum = 0.0;
            for (int i = 0; i < order; ++i) {
                sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
            }
            double exact = degree % 2 == 0 ? 2.0 / (degree + 1) : 0.0;
            EXPECT_NEAR(sum, exact, 1e-13) << order << " " << degree;
        }
    }
}

TEST(SphereAverage, PolynomialMoments) {
    SphereAverage one = sphere_average([](double, Complex) { return 1.0; });
    EXPECT_NEAR(one.value, 1.0, 1e-14);
    SphereAverage pop = sphere_average([](double c0, Complex) { return c0 * c0; });
    EXPECT_NEAR(pop.value, 0.5, 1e-14);
    SphereAverage sq = sphere_average([](double c0, Complex) { return std::pow(c0, 4); });
    EXPECT_NEAR(sq.value, 1.0 / 3.0, 1e-14);
    // Re(c1)^2 depends on phi: averages to 1/4 over the sphere.
    SphereAverage re = sphere_average([](double, Complex c1) { return c1.real() * c1.real(); });
    EXPECT_NEAR(re.value, 0.25, 1e-14);
}

TEST(SphereAverage, SmoothNonPolynomial) {
    // E[1/(1 + u/2)] for u = |c0|^2 uniform: 2 ln(3/2).
    SphereAverage avg = sphere_average([](double c0, Complex) { return 1.0 / (1.0 + 0.5 * c0 * c0); });
    EXPECT_NEAR(avg.value, 2.0 * std::log(1.5), 1e-10);
    EXPECT_LT(avg.error, 1e-8);
    EXPECT_GE(avg.order, 4);
}

TEST(SphereAverage, NotConverged) {
    auto step = [](double c0, Complex) { return c0 > 0.8 ? 1.0 : 0.0; };
    EXPECT_THROW(sphere_average(step, 1e-12, 4, 16), QuadratureNotConverged);
}

}  // namespace
}  // namespace cfs
