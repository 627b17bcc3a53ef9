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
#include <numbers>

#include <gtest/gtest.h>

#include "cfs/codes.hpp"
#include "test_util.hpp"

namespace cfs {
namespace {

// Coherent amplitudes e^{-|a|^2/2} a^m / sqrt(m!) in log space, independent of the library.
Vector coherent_oracle(int levels, Complex alpha) {
    Vector v(levels);
    for (int m = 0; m < levels; ++m) {
        double logmag = -0.5 * std::norm(alpha) + m * std::log(std::abs(alpha)) - 0.5 * std::lgamma(m + 1.0);
        v(m) = std::polar(std::exp(logmag), m * std::arg(alpha));
    }
    return v;
}

Vector ring_oracle(int n, Complex alpha, int levels, bool twisted) {
    Vector sum = Vector::Zero(levels);
    for (int k = 0; k < n; ++k) {
        Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
        sum += (twisted && k % 2 == 1 ? -1.0 : 1.0) * coherent_oracle(levels, alpha * phase);
    }
    return sum.normalized();
}

double phase_free_distance(const Vector &a, const Vector &b) {
    return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b))));
}

double sector_weight(const FockKet &k, int modulus, int residue) {
    double w = 0.0;
    for (int m = 0; m < k.space().cutoff(); ++m) {
        if (m % modulus == residue) {
            w += std::norm(k[m]);
        }
    }
    return w;
}

void expect_valid(const BosonicCode &code) {
    EXPECT_NEAR(code.ket0().norm(), 1.0, 1e-12) << code.label();
    EXPECT_NEAR(code.ket1().norm(), 1.0, 1e-12) << code.label();
    EXPECT_LT(std::abs(code.ket0().inner(code.ket1())), 1e-10) << code.label();
    EXPECT_NEAR(code.codespace_identity().trace().real(), 1.0, 1e-12) << code.label();
    EXPECT_TRUE(code.codespace_identity().is_hermitian());
    // Parity flag against the measured sector weights.
    double odd0 = sector_weight(code.ket0(), 2, 1), odd1 = sector_weight(code.ket1(), 2, 1);
    switch (code.parity()) {
    case ParityClass::LikeEven:
        EXPECT_LT(odd0 + odd1, 1e-10) << code.label();
        break;
    case ParityClass::LikeOdd:
        EXPECT_LT(2.0 - odd0 - odd1, 1e-10) << code.label();
        break;
    case ParityClass::Opposite:
        EXPECT_LT(std::min(odd0 + (1.0 - odd1), (1.0 - odd0) + odd1), 1e-10) << code.label();
        break;
    case ParityClass::Mixed:
        ADD_FAILURE() << code.label() << " built-in codes always have a definite parity";
    }
}

TEST(CatCode, TwoComponentMatchesRing) {
    FockSpace space(40);
    BosonicCode code = cat_code(2, 2.0, space);
    EXPECT_LT(phase_free_distance(code.ket0().amplitudes(), ring_oracle(2, 2.0, 40, false)), 1e-7);
    EXPECT_LT(phase_free_distance(code.ket1().amplitudes(), ring_oracle(2, 2.0, 40, true)), 1e-7);
    EXPECT_EQ(code.parity(), ParityClass::Opposite);
    EXPECT_EQ(ket_parity(code.ket0()), 1);
    EXPECT_EQ(ket_parity(code.ket1()), -1);
    expect_valid(code);
}

TEST(CatCode, FourComponentSupports) {
    FockSpace space(60);
    BosonicCode code = cat_code(4, Complex(1.5, 0.4), space);
    EXPECT_NEAR(sector_weight(code.ket0(), 4, 0), 1.0, 1e-14);
    EXPECT_NEAR(sector_weight(code.ket1(), 4, 2), 1.0, 1e-14);
    EXPECT_EQ(code.parity(), ParityClass::LikeEven);
    EXPECT_LT(phase_free_distance(code.ket1().amplitudes(), ring_oracle(4, Complex(1.5, 0.4), 60, true)), 1e-7);
    expect_valid(code);
}

TEST(CatCode, SixComponentMoments) {
    BosonicCode code = cat_code(6, 1.916, FockSpace(60));
    EXPECT_EQ(code.parity(), ParityClass::Opposite);
    EXPECT_NEAR(sector_weight(code.ket0(), 6, 0), 1.0, 1e-14);
    EXPECT_NEAR(sector_weight(code.ket1(), 6, 3), 1.0, 1e-14);
    CodeMoments m = code_moments(code);
    EXPECT_NEAR(m.n, 4.0, 0.08);
    EXPECT_NEAR(m.n2, 20.0, 0.4);
    EXPECT_LT(std::abs(m.a2), 1e-8);
    expect_valid(code);
}

TEST(CatCode, Errors) {
    EXPECT_THROW(cat_code(2, 6.0, FockSpace(30)), TailTooLarge);
    EXPECT_THROW(cat_code(3, 1.0, FockSpace(30)), std::invalid_argument);
}

TEST(BinomialCode, GapTwoOrderFour) {
    BosonicCode code = binomial_code(2, 4, FockSpace(60));
    EXPECT_EQ(code.parity(), ParityClass::LikeEven);
    CodeMoments m = code_moments(code);
    // j ~ Binomial(4, 1/2) under C_L, n = 2j: <n> = 4, <n^2> = 4 E[j^2] = 20.
    EXPECT_NEAR(m.n, 4.0, 1e-12);
    EXPECT_NEAR(m.n2, 20.0, 1e-12);
    EXPECT_EQ(std::abs(m.a2), 0.0);
    EXPECT_NEAR(std::abs(code.ket0()[0]), std::sqrt(1.0 / 8.0), 1e-15);
    EXPECT_NEAR(std::abs(code.ket0()[4]), std::sqrt(6.0 / 8.0), 1e-15);
    EXPECT_NEAR(std::abs(code.ket1()[2]), std::sqrt(4.0 / 8.0), 1e-15);
    EXPECT_EQ(code.label(), "bin(kappa=4,n=2)");
    expect_valid(code);
}

TEST(BinomialCode, TrivialFockQubit) {
    BosonicCode code = binomial_code(1, 1, FockSpace(4));
    EXPECT_NEAR(std::abs(code.ket0()[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(code.ket1()[1]), 1.0, 1e-15);
    EXPECT_EQ(code.parity(), ParityClass::Opposite);
    CodeMoments m = code_moments(code);
    EXPECT_NEAR(m.n, 0.5, 1e-15);
    EXPECT_NEAR(m.n2, 0.5, 1e-15);
    EXPECT_EQ(std::abs(m.a2), 0.0);
}

TEST(BinomialCode, GapTwoOrderTwo) {
    BosonicCode code = binomial_code(2, 2, FockSpace(10));
    Vector k0 = Vector::Zero(10);
    k0(0) = k0(4) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((code.ket0().amplitudes() - k0).norm(), 1e-15);
    EXPECT_NEAR(std::abs(code.ket1()[2]), 1.0, 1e-15);
    EXPECT_EQ(code.parity(), ParityClass::LikeEven);
    expect_valid(code);
}

TEST(BinomialCode, CutoffExceeded) {
    EXPECT_THROW(binomial_code(2, 4, FockSpace(8)), CutoffExceeded);
}

TEST(GkpCode, NearIdealOrthogonality) {
    BosonicCode code = gkp_code(0.2, FockSpace(260));
    EXPECT_LT(std::abs(code.ket0().inner(code.ket1())), 1e-6);
    expect_valid(code);
}

TEST(GkpCode, SquareLatticeIsLikeEven) {
    BosonicCode code = gkp_code(0.3, FockSpace(140));
    EXPECT_EQ(code.parity(), ParityClass::LikeEven);
    expect_valid(code);
}

// Position density of |0_L> sits near even multiples of sqrt(pi), |1_L> near odd ones.
TEST(GkpCode, PositionPeaks) {
    const int n_cut = 140;
    BosonicCode code = gkp_code(0.3, FockSpace(n_cut));
    const double spacing = std::sqrt(std::numbers::pi);
    for (int mu = 0; mu < 2; ++mu) {
        double on_lattice = 0.0, total = 0.0;
        const double dx = 0.005;
        for (double x = -16.0; x <= 16.0; x += dx) {
            // Hermite functions by the stable three-term recurrence.
            double psi_prev = 0.0;
            double psi = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
            Complex amp = code.ket(mu)[0] * psi;
            for (int n = 1; n < n_cut; ++n) {
                double next = std::sqrt(2.0 / n) * x * psi - std::sqrt((n - 1.0) / n) * psi_prev;
                psi_prev = psi;
                psi = next;
                amp += code.ket(mu)[n] * psi;
            }
            double density = std::norm(amp) * dx;
            total += density;
            double offset = std::remainder(x / spacing - mu, 2.0);
            if (std::abs(offset) < 0.5) {
                on_lattice += density;
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-6);
        EXPECT_GT(on_lattice / total, 0.95) << mu;
    }
}

TEST(GkpCode, CutoffExceeded) {
    EXPECT_THROW(gkp_code(0.3, FockSpace(60)), CutoffExceeded);
}

TEST(GkpCode, DampingComposes) {
    FockSpace space(30);
    const double d1 = 0.3, d2 = 0.4;
    auto damp = [&](double d) { return number_power_diag(space, [d](int n) { return Complex(std::exp(-d * d * n)); }); };
    FockOperator twice = damp(d1) * damp(d2);
    FockOperator once = damp(std::sqrt(d1 * d1 + d2 * d2));
    EXPECT_LT(testing::max_abs(twice.matrix() - once.matrix()), 1e-15);
}

TEST(BosonicCode, RejectsNonOrthogonalKets) {
    FockSpace space(4);
    Vector a = Vector::Zero(4), b = Vector::Zero(4);
    a(0) = 1.0;
    b(0) = b(1) = 1.0 / std::sqrt(2.0);
    EXPECT_THROW(BosonicCode("user", {}, FockKet(space, a), FockKet(space, b)), NonOrthogonal);
}

TEST(BosonicCode, MixedParityForUserKets) {
    FockSpace space(4);
    Vector a = Vector::Zero(4), b = Vector::Zero(4);
    a(0) = a(1) = 1.0 / std::sqrt(2.0);
    b(0) = 1.0 / std::sqrt(2.0);
    b(1) = -1.0 / std::sqrt(2.0);
    BosonicCode code("user", {}, FockKet(space, a), FockKet(space, b));
    EXPECT_EQ(code.parity(), ParityClass::Mixed);
}

TEST(BosonicCode, Encode) {
    BosonicCode code = binomial_code(2, 2, FockSpace(10));
    FockKet plus = code.encode(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    EXPECT_NEAR(plus.norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(plus[2]), 1.0 / std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace cfs
