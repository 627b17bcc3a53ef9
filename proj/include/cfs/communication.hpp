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

#pragma once

#include "cfs/suppression.hpp"

namespace cfs {

enum class Herald { Only00, Both00And11 };

/// Sender couples the mode to their half of a shared Bell pair with exp(i pi/2 a^dag a X1),
/// the mode crosses the noisy link, and the receiver applies exp(-i pi/2 a^dag a X2) before
/// both qubits are measured.
struct CommConfig {
    double bell_noise = 0.0;  // composite damping strength on each half of the pair
    Herald herald = Herald::Both00And11;
};

struct CommResult {
    FockOperator rho_out;  // normalized mixture over the accepted outcomes
    double p00;
    double p11;
    double p_succ;  // p00 (+ p11 when both outcomes are accepted)
    double defect;
};

CommResult run_communication(const FockOperator &rho_in, const KrausChannel &cv_noise, const CommConfig &config);

/// Heralded map of the two-party protocol; for Both the accepted branches are summed without correction.
HeraldedMap communication_map(const KrausChannel &cv_noise, const CommConfig &config);

/// Average herald probabilities under the amplifier-after-loss channel (G, mu) and bell noise p.
double closed_form_success_comm_00(const BosonicCode &code, double gain, double mu, double p);
double closed_form_success_comm_11(const BosonicCode &code, double gain, double mu, double p);
/// 1/2 + (1 - 2p(1-p)) tr{C x^{a^dag a}} / (2(2G - 1)).
double closed_form_success_comm_both(const BosonicCode &code, double gain, double mu, double p);
/// Thermal parametrization with the herald choice.
double closed_form_success_comm(const BosonicCode &code, double eta, double nbar, double p, Herald herald);

/// Standard teleportation of a qubit through noisy_bell(p) with an ideal Bell measurement and
/// Pauli corrections; returns the output density matrix.
Matrix teleportation_simulate(const Matrix &rho_in, double p);
/// Average teleportation fidelity 1 - p + 2p^2/3.
double teleportation_baseline(double p);
/// Average over the six Pauli eigenstates of the simulated fidelity (exact for this quadratic functional).
double teleportation_average_simulated(double p);

}  // namespace cfs
