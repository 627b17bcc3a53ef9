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

#include <gtest/gtest.h>

#include "cfs/channels.hpp"
#include "cfs/codes.hpp"
#include "test_util.hpp"

namespace cfs {
namespace {

using testing::max_abs;
using testing::random_density;

Matrix dense_kraus_sum(const std::vector<Matrix> &terms, const Matrix &rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix &k : terms) {
        out += k * rho * k.adjoint();
    }
    return out;
}

Matrix random_qubit_state(std::uint64_t seed) {
    return random_density(2, seed);
}

TEST(BandOperator, ConjugationMatchesDense) {
    FockSpace space(12);
    BandOperator k{-2, Vector::Random(12)};
    Matrix x = Matrix::Random(12, 12);
    Matrix out = Matrix::Zero(12, 12);
    k.conjugate_into(x, out);
    Matrix d = k.dense();
    EXPECT_LT(max_abs(out - d * x * d.adjoint()), 1e-14);
    Vector v = Vector::Random(12);
    EXPECT_LT((k.apply(v) - d * v).norm(), 1e-14);
}

TEST(LossChannel, ZeroRateIsIdentity) {
    KrausChannel ch = loss_channel(0.0, FockSpace(10));
    ASSERT_EQ(ch.size(), 1u);
    EXPECT_EQ(ch.dense_terms()[0], Matrix::Identity(10, 10));
}

TEST(LossChannel, SinglePhoton) {
    FockSpace space(6);
    Matrix one = Matrix::Zero(6, 6);
    one(1, 1) = 1.0;
    Matrix out = loss_channel(0.05, space).apply(one);
    EXPECT_NEAR(out(0, 0).real(), 0.05, 1e-15);
    EXPECT_NEAR(out(1, 1).real(), 0.95, 1e-15);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-15);
}

TEST(LossChannel, CoherentStaysCoherent) {
    const int n = 40;
    FockSpace space(n);
    auto oracle = [n](double alpha) {
        Vector v(n);
        for (int m = 0; m < n; ++m) {
            v(m) = std::exp(-0.5 * alpha * alpha + m * std::log(alpha) - 0.5 * std::lgamma(m + 1.0));
        }
        return v;
    };
    for (double mu : {0.1, 0.3}) {
        Vector in = oracle(1.0);
        Matrix out = loss_channel(mu, space).apply(in * in.adjoint());
        Vector image = oracle(std::sqrt(1.0 - mu));
        double fidelity = (image.adjoint() * out * image)(0, 0).real();
        EXPECT_NEAR(fidelity, 1.0, 1e-10) << mu;
    }
}

TEST(AmpChannel, UnitGainIsIdentity) {
    KrausChannel ch = amp_channel(1.0, FockSpace(10));
    Matrix rho = random_density(10, 1);
    EXPECT_LT(max_abs(ch.apply(rho) - rho), 1e-15);
}

TEST(AmpChannel, VacuumGainsGMinusOne) {
    FockSpace space(40);
    Matrix vac = Matrix::Zero(40, 40);
    vac(0, 0) = 1.0;
    KrausChannel ch = amp_channel(1.025, space);
    Matrix out = ch.apply(vac);
    double mean = 0.0;
    for (int m = 0; m < 40; ++m) {
        mean += m * out(m, m).real();
    }
    EXPECT_NEAR(mean, 0.025, 1e-9);
}

TEST(ThermalChannel, ParameterMap) {
    ThermalParams t{0.05, 0.5};
    EXPECT_NEAR(t.gain(), 1.025, 1e-15);
    EXPECT_NEAR(t.loss_rate(), 0.0731707, 1e-7);
    EXPECT_NEAR(t.loss_rate(), 1.0 - 0.95 / 1.025, 1e-15);
    ThermalParams zero{0.0, 3.0};
    EXPECT_EQ(zero.gain(), 1.0);
    EXPECT_EQ(zero.loss_rate(), 0.0);
}

TEST(ThermalChannel, ZeroTemperatureIsLoss) {
    FockSpace space(60);
    Matrix rho = random_density(60, 7, 20);
    for (double eta : {0.02, 0.1}) {
        Matrix thermal = thermal_channel(eta, 0.0, space).apply(rho);
        Matrix loss = loss_channel(eta, space).apply(rho);
        EXPECT_LT(max_abs(thermal - loss), 1e-10);
    }
}

TEST(ThermalChannel, VacuumMeanPhotonNumber) {
    FockSpace space(60);
    Matrix vac = Matrix::Zero(60, 60);
    vac(0, 0) = 1.0;
    for (auto [eta, nbar] : {std::pair{0.05, 0.5}, std::pair{0.1, 1.0}}) {
        Matrix out = thermal_channel(eta, nbar, space).apply(vac);
        double mean = 0.0;
        for (int m = 0; m < 60; ++m) {
            mean += m * out(m, m).real();
        }
        EXPECT_NEAR(mean, eta * nbar, 1e-8);
    }
}

TEST(ThermalChannel, ComposesAmplifierAfterLoss) {
    FockSpace space(60);
    HybridState rho = tensor_state(FockOperator(space, random_density(60, 3, 20)), random_qubit_state(4));
    ThermalParams t{0.05, 0.5};
    HybridState once = apply(thermal_channel(t.eta, t.nbar, space), rho, Factor::Cv);
    HybridState twice = apply(amp_channel(t.gain(), space), apply(loss_channel(t.loss_rate(), space), rho, Factor::Cv),
                              Factor::Cv);
    EXPECT_LT(max_abs(once.matrix() - twice.matrix()), 1e-12);
}

TEST(ThermalChannel, DefaultTruncationIsTracePreserving) {
    FockSpace space(60);
    for (auto [eta, nbar] : {std::pair{0.01, 0.0}, std::pair{0.05, 0.5}, std::pair{0.1, 1.0}}) {
        KrausChannel ch = thermal_channel(eta, nbar, space);
        EXPECT_LT(ch.cptp_defect(), 1e-8);
        EXPECT_GE(ch.l_max(), 12);
        EXPECT_GE(ch.k_max(), nbar > 0.0 ? 12 : 0);
        // Independent check from the dense Kraus list.
        Matrix sum = Matrix::Zero(60, 60);
        for (const Matrix &k : ch.dense_terms()) {
            sum += k.adjoint() * k;
        }
        double worst = 0.0;
        for (int n = 0; n <= ch.check_level(); ++n) {
            worst = std::max(worst, std::abs(sum(n, n) - 1.0));
        }
        EXPECT_NEAR(worst, ch.cptp_defect(), 1e-14);
    }
}

TEST(ThermalChannel, TruncationGrowsForStrongNoise) {
    KrausChannel ch = thermal_channel(0.3, 1.0, FockSpace(60));
    EXPECT_GT(ch.l_max() + ch.k_max(), 24);
}

TEST(GdnChannel, ParameterMap) {
    // G = 1/eta and mu = eta with a Kraus list on a cutoff that can hold the large gain.
    FockSpace space(8);
    TruncationPolicy small{2, 2, 1, 3, 0, 1.0};
    KrausChannel gdn = gdn_channel(0.05, space, small);
    KrausChannel reference = amp_after_loss_channel(20.0, 0.05, space, small);
    Matrix rho = random_density(8, 5, 3);
    EXPECT_LT(max_abs(gdn.apply(rho) - reference.apply(rho)), 1e-15);
}

TEST(QubitDamping, ZeroStrengthIsIdentity) {
    Matrix rho = random_qubit_state(2);
    for (DampingKind kind : {DampingKind::Amplitude, DampingKind::Phase, DampingKind::Composite}) {
        EXPECT_LT(max_abs(qubit_damping(0.0, kind).apply(rho) - rho), 1e-15);
    }
}

TEST(QubitDamping, CompositeIsPhaseAfterAmplitude) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Matrix rho = random_qubit_state(100 + seed);
        double p = 0.05 * (seed + 1) / 1.05;
        double sp = std::sqrt(p), s1 = std::sqrt(1.0 - p);
        Matrix k0(2, 2), amp1(2, 2), ph1(2, 2);
        k0 << 1, 0, 0, s1;
        amp1 << 0, sp, 0, 0;
        ph1 << 0, 0, 0, sp;
        Matrix brute = dense_kraus_sum({k0, ph1}, dense_kraus_sum({k0, amp1}, rho));
        Matrix reversed = dense_kraus_sum({k0, amp1}, dense_kraus_sum({k0, ph1}, rho));
        Matrix composite = qubit_damping(p, DampingKind::Composite).apply(rho);
        EXPECT_LT(max_abs(composite - brute), 1e-12);
        EXPECT_LT(max_abs(reversed - brute), 1e-12);
        EXPECT_LT(max_abs(composite_damping_pauli_form(p, rho) - brute), 1e-12);
    }
}

TEST(Depolarizing, Limits) {
    Matrix rho = random_qubit_state(8);
    EXPECT_LT(max_abs(depolarizing(0.0).apply(rho) - rho), 1e-15);
    Vector psi = qubit::ket0();
    Matrix mixed = depolarizing(0.75).apply(psi * psi.adjoint());
    EXPECT_LT(max_abs(mixed - Matrix::Identity(2, 2) / 2.0), 1e-15);
    Matrix sum = Matrix::Zero(2, 2);
    KrausChannel depol = depolarizing(0.3);
    for (const Matrix &k : depol.qubit_terms()) {
        sum += k.adjoint() * k;
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(2, 2)), 1e-15);
}

TEST(NoisyBell, NoiselessIsPhiPlus) {
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    EXPECT_LT(max_abs(noisy_bell(0.0) - phi * phi.adjoint()), 1e-15);
}

TEST(NoisyBell, MatchesIndependentDamping) {
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    for (double p : {0.0, 0.1, 0.35, 0.8, 1.0}) {
        Matrix bell = noisy_bell(p);
        EXPECT_NEAR(bell.trace().real(), 1.0, 1e-14);
        Eigen::SelfAdjointEigenSolver<Matrix> es(bell);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-14);
        std::vector<Matrix> both;
        KrausChannel damp = qubit_damping(p, DampingKind::Composite);
        for (const Matrix &a : damp.qubit_terms()) {
            for (const Matrix &b : damp.qubit_terms()) {
                both.push_back(qubit::kron(a, b));
            }
        }
        EXPECT_LT(max_abs(bell - dense_kraus_sum(both, phi * phi.adjoint())), 1e-12) << p;
    }
}

TEST(ApplyChannel, IdentityLeavesStateAlone) {
    FockSpace space(10);
    HybridState rho = tensor_state(FockOperator(space, random_density(10, 1)), random_qubit_state(2));
    EXPECT_LT(max_abs(apply(identity_channel(space), rho, Factor::Cv).matrix() - rho.matrix()), 1e-15);
    EXPECT_LT(max_abs(apply(identity_qubit_channel(), rho, Factor::Qubit0).matrix() - rho.matrix()), 1e-15);
}

TEST(ApplyChannel, LossKeepsQubitMarginal) {
    FockSpace space(30);
    Matrix sigma = random_qubit_state(3);
    HybridState rho = tensor_state(FockOperator(space, random_density(30, 9, 10)), sigma);
    HybridState out = apply(loss_channel(0.2, space), rho, Factor::Cv);
    Matrix marginal(2, 2);
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            marginal(s, t) = out.block(s, t).trace();
        }
    }
    EXPECT_LT(max_abs(marginal - sigma), 1e-12);
    EXPECT_GT(out.accumulated_defect(), 0.0);
    EXPECT_TRUE(out.is_positive());
}

TEST(ApplyChannel, QubitChannelOnSecondQubit) {
    FockSpace space(4);
    Matrix sigma = qubit::kron(random_qubit_state(5), random_qubit_state(6));
    HybridState rho = tensor_state(FockOperator(space, random_density(4, 7)), sigma);
    KrausChannel damp = qubit_damping(0.3, DampingKind::Composite);
    HybridState out = apply(damp, rho, Factor::Qubit1);
    std::vector<Matrix> lifted;
    for (const Matrix &k : damp.qubit_terms()) {
        lifted.push_back(qubit::kron(qubit::identity(1), k));
    }
    HybridState expected = tensor_state(FockOperator(space, random_density(4, 7)), dense_kraus_sum(lifted, sigma));
    EXPECT_LT(max_abs(out.matrix() - expected.matrix()), 1e-14);
}

TEST(ApplyChannel, DimensionMismatch) {
    FockSpace space(4);
    HybridState rho = tensor_state(FockOperator::identity(space) * Complex(0.25), qubit::identity(1) / 2.0);
    EXPECT_THROW(apply(loss_channel(0.1, FockSpace(5)), rho, Factor::Cv), DimensionMismatch);
    EXPECT_THROW(apply(qubit_damping(0.1, DampingKind::Amplitude), rho, Factor::Qubit1), DimensionMismatch);
    EXPECT_THROW(apply(loss_channel(0.1, space), rho, Factor::Qubit0), DimensionMismatch);
}

}  // namespace
}  // namespace cfs
