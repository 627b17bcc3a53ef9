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

#include "cfs/communication.hpp"
#include "test_util.hpp"

namespace cfs {
namespace {

using testing::max_abs;

double comm_fidelity(const BosonicCode &code, const KrausChannel &noise, double p, Herald herald) {
    return average_fidelity(LogicalResponse::from_map(code, communication_map(noise, {p, herald}))).value;
}

TEST(Communication, NoiselessLink) {
    FockSpace space(40);
    BosonicCode code = binomial_code(2, 4, space);
    FockKet psi = code.encode(0.6, Complex(0.0, 0.8));
    CommResult r = run_communication(FockOperator::dyad(psi, psi), identity_channel(space), {0.0, Herald::Both00And11});
    EXPECT_LT(max_abs(r.rho_out.matrix() - FockOperator::dyad(psi, psi).matrix()), 1e-14);
    // A Phi+ pair yields 00 and 11 with equal weight; each branch alone returns the input.
    EXPECT_NEAR(r.p00, 0.5, 1e-14);
    EXPECT_NEAR(r.p11, 0.5, 1e-14);
    EXPECT_NEAR(r.p_succ, 1.0, 1e-14);
}

TEST(Communication, PerfectPairEqualsSingleParty) {
    FockSpace space(60);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    for (const BosonicCode &code : {binomial_code(2, 4, space), cat_code(6, 1.916, space)}) {
        FockKet psi = code.encode(0.8, Complex(0.36, 0.48));
        FockOperator rho = FockOperator::dyad(psi, psi);
        CommResult two = run_communication(rho, noise, {0.0, Herald::Both00And11});
        SuppressionResult one = run_suppression(rho, noise, SuppressionConfig{});
        EXPECT_LT(max_abs(two.rho_out.matrix() - one.rho_out.matrix()), 1e-10) << code.label();
        EXPECT_NEAR(two.p_succ, one.p_succ, 1e-10) << code.label();
        // The whole heralded channel, dyad by dyad.
        HeraldedMap a = communication_map(noise, {0.0, Herald::Both00And11});
        HeraldedMap b = suppression_map(noise, SuppressionConfig{});
        for (int mu = 0; mu < 2; ++mu) {
            for (int nu = 0; nu < 2; ++nu) {
                Matrix x = code.ket(mu).amplitudes() * code.ket(nu).amplitudes().adjoint();
                EXPECT_LT(max_abs(a(x) - b(x)), 1e-10);
            }
        }
    }
}

TEST(Communication, HeraldingOnlyZeroZeroHelps) {
    FockSpace space(60);
    BosonicCode code = binomial_code(2, 4, space);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    EXPECT_GE(comm_fidelity(code, noise, 0.1, Herald::Only00), comm_fidelity(code, noise, 0.1, Herald::Both00And11));
}

TEST(CommunicationClosedForm, PerfectPairReducesToSingleParty) {
    FockSpace space(60);
    BosonicCode code = cat_code(6, 1.916, space);
    for (double eta : {0.02, 0.1}) {
        EXPECT_NEAR(closed_form_success_comm(code, eta, 0.5, 0.0, Herald::Both00And11),
                    closed_form_success(code, eta, 0.5), 1e-15);
    }
}

TEST(CommunicationClosedForm, OutcomesSumToBoth) {
    FockSpace space(60);
    for (const BosonicCode &code : {binomial_code(2, 4, space), cat_code(6, 1.916, space), cat_code(2, 2.0, space)}) {
        for (double eta : {0.02, 0.05, 0.1}) {
            for (double nbar : {0.0, 0.5, 1.0}) {
                for (double p : {0.0, 0.2, 0.5}) {
                    ThermalParams t{eta, nbar};
                    double sum = closed_form_success_comm_00(code, t.gain(), t.loss_rate(), p) +
                                 closed_form_success_comm_11(code, t.gain(), t.loss_rate(), p);
                    EXPECT_NEAR(sum, closed_form_success_comm(code, eta, nbar, p, Herald::Both00And11), 1e-12);
                }
            }
        }
    }
}

TEST(CommunicationClosedForm, MatchesSimulation) {
    FockSpace space(60);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    for (const BosonicCode &code : {binomial_code(2, 4, space), cat_code(6, 1.916, space)}) {
        for (double p : {0.2, 0.45}) {
            LogicalResponse both = LogicalResponse::from_map(code, communication_map(noise, {p, Herald::Both00And11}));
            LogicalResponse only = LogicalResponse::from_map(code, communication_map(noise, {p, Herald::Only00}));
            EXPECT_NEAR(average_success(both), closed_form_success_comm(code, 0.05, 0.5, p, Herald::Both00And11), 1e-8);
            EXPECT_NEAR(average_success(only), closed_form_success_comm(code, 0.05, 0.5, p, Herald::Only00), 1e-8);
        }
    }
}

TEST(Teleportation, Baseline) {
    EXPECT_EQ(teleportation_baseline(0.0), 1.0);
    EXPECT_NEAR(teleportation_baseline(0.3), 0.76, 1e-15);
}

TEST(Teleportation, SimulationMatchesFormula) {
    for (double p : {0.0, 0.1, 0.5, 0.9}) {
        EXPECT_NEAR(teleportation_average_simulated(p), 1.0 - p + 2.0 * p * p / 3.0, 1e-12) << p;
    }
}

// Per-state fidelity 1 - p + p^2 - 2 p^2 rho00 (1 - rho00).
TEST(Teleportation, PerStateFidelity) {
    for (const QubitState &s : haar_sample(12, 20)) {
        Vector psi(2);
        psi << s.c0, s.c1;
        double p = 0.37;
        double rho00 = s.c0 * s.c0;
        Matrix out = teleportation_simulate(psi * psi.adjoint(), p);
        EXPECT_NEAR(out.trace().real(), 1.0, 1e-14);
        EXPECT_NEAR(psi.dot(out * psi).real(), 1.0 - p + p * p - 2.0 * p * p * rho00 * (1.0 - rho00), 1e-12);
    }
}

TEST(Communication, LikeParityDegradesLeast) {
    FockSpace space(60);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    BosonicCode bin = binomial_code(2, 4, space);
    BosonicCode cat = cat_code(6, 1.916, space);
    double bin_drop = comm_fidelity(bin, noise, 0.0, Herald::Both00And11) - comm_fidelity(bin, noise, 0.3, Herald::Both00And11);
    double cat_drop = comm_fidelity(cat, noise, 0.0, Herald::Both00And11) - comm_fidelity(cat, noise, 0.3, Herald::Both00And11);
    EXPECT_LT(bin_drop, cat_drop);
    EXPECT_LT(bin_drop, 1.0 - teleportation_baseline(0.3));
}

double comm_crossover(const BosonicCode &code, const KrausChannel &noise) {
    for (int i = 1; i < 50; ++i) {
        double p = 0.01 * i;
        if (comm_fidelity(code, noise, p, Herald::Both00And11) > teleportation_baseline(p)) {
            return p;
        }
    }
    return -1.0;
}

TEST(Communication, LikeParityCrossoverBelowHalf) {
    FockSpace space(60);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    for (const BosonicCode &code : {binomial_code(2, 4, space), cat_code(4, 2.0, space), cat_code(2, 2.0, space)}) {
        double crossover = comm_crossover(code, noise);
        EXPECT_GT(crossover, 0.0) << code.label();
        RecordProperty(code.label(), std::to_string(crossover));
    }
}

TEST(Communication, MixedParityCatStaysBelowTeleportation) {
    FockSpace space(60);
    KrausChannel noise = thermal_channel(0.05, 0.5, space);
    BosonicCode code = cat_code(6, 1.916, space);
    for (double p : {0.05, 0.2, 0.5}) {
        EXPECT_LT(comm_fidelity(code, noise, p, Herald::Both00And11), teleportation_baseline(p)) << p;
    }
}

}  // namespace
}  // namespace cfs
