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

#include "cfs/communication.hpp"

#include <cmath>
#include <numbers>

namespace cfs {

namespace {

struct CommBranches {
    Matrix out00;
    Matrix out11;
    double defect;
};

CommBranches run_branches(const Matrix &x, const KrausChannel &cv_noise, double bell_noise,
                          const HybridOperator &u1, const HybridOperator &u2) {
    FockSpace space = cv_noise.space();
    HybridState state = tensor_state(FockOperator(space, x), noisy_bell(bell_noise));
    state = conjugate(u1, state);
    state = apply(cv_noise, state, Factor::Cv);
    state = conjugate(u2, state);
    Vector k00 = qubit::kron(qubit::ket0(), qubit::ket0());
    Vector k11 = qubit::kron(qubit::ket1(), qubit::ket1());
    return {project_all_qubits(state, k00).matrix(), project_all_qubits(state, k11).matrix(),
            state.accumulated_defect()};
}

std::pair<HybridOperator, HybridOperator> link_unitaries(FockSpace space) {
    const double half_pi = 0.5 * std::numbers::pi;
    const std::array<double, 3> x{1.0, 0.0, 0.0};
    return {suppression_unitary(half_pi, x, space, 2, 0), suppression_unitary(-half_pi, x, space, 2, 1)};
}

double trace_with(const BosonicCode &code, const std::function<double(int)> &f) {
    const Matrix &c = code.codespace_identity().matrix();
    double total = 0.0;
    for (int n = 0; n < code.space().cutoff(); ++n) {
        total += c(n, n).real() * f(n);
    }
    return total;
}

// 1/4 [1 + p + (1 - p + 2p^2)/(2G-1) tr{C x^n} - 2p (tr{C w} + tr{C w x^n}/(2G-1))],
// w = sin^2(pi n / 2) for outcome 00 and cos^2(pi n / 2) for outcome 11.
double comm_outcome(const BosonicCode &code, double gain, double mu, double p, bool odd_weight) {
    double denom = 2.0 * gain - 1.0;
    double x = (1.0 - 2.0 * mu * gain) / denom;
    auto w = [odd_weight](int n) { return (n % 2 == 1) == odd_weight ? 1.0 : 0.0; };
    double tr_x = trace_with(code, [x](int n) { return std::pow(x, n); });
    double tr_w = trace_with(code, w);
    double tr_wx = trace_with(code, [&](int n) { return w(n) * std::pow(x, n); });
    return 0.25 * (1.0 + p + (1.0 - p + 2.0 * p * p) / denom * tr_x - 2.0 * p * (tr_w + tr_wx / denom));
}

}  // namespace

CommResult run_communication(const FockOperator &rho_in, const KrausChannel &cv_noise, const CommConfig &config) {
    auto [u1, u2] = link_unitaries(cv_noise.space());
    CommBranches b = run_branches(rho_in.matrix(), cv_noise, config.bell_noise, u1, u2);
    double p00 = b.out00.trace().real();
    double p11 = b.out11.trace().real();
    Matrix accepted = b.out00;
    double p = p00;
    if (config.herald == Herald::Both00And11) {
        accepted += b.out11;
        p += p11;
    }
    if (!(p > 0.0)) {
        throw std::domain_error("run_communication: the herald never fires");
    }
    return {FockOperator(cv_noise.space(), accepted / p), p00, p11, p, b.defect};
}

HeraldedMap communication_map(const KrausChannel &cv_noise, const CommConfig &config) {
    auto [u1, u2] = link_unitaries(cv_noise.space());
    return [cv_noise, config, u1, u2](const Matrix &x) {
        CommBranches b = run_branches(x, cv_noise, config.bell_noise, u1, u2);
        return config.herald == Herald::Both00And11 ? Matrix(b.out00 + b.out11) : b.out00;
    };
}

double closed_form_success_comm_00(const BosonicCode &code, double gain, double mu, double p) {
    return comm_outcome(code, gain, mu, p, true);
}

double closed_form_success_comm_11(const BosonicCode &code, double gain, double mu, double p) {
    return comm_outcome(code, gain, mu, p, false);
}

double closed_form_success_comm_both(const BosonicCode &code, double gain, double mu, double p) {
    double denom = 2.0 * gain - 1.0;
    double x = (1.0 - 2.0 * mu * gain) / denom;
    double tr_x = trace_with(code, [x](int n) { return std::pow(x, n); });
    return 0.5 + (1.0 - 2.0 * p * (1.0 - p)) / (2.0 * denom) * tr_x;
}

double closed_form_success_comm(const BosonicCode &code, double eta, double nbar, double p, Herald herald) {
    ThermalParams params{eta, nbar};
    if (herald == Herald::Only00) {
        return closed_form_success_comm_00(code, params.gain(), params.loss_rate(), p);
    }
    return closed_form_success_comm_both(code, params.gain(), params.loss_rate(), p);
}

// ---------------------------------------------------------------------------------------------

Matrix teleportation_simulate(const Matrix &rho_in, double p) {
    if (rho_in.rows() != 2 || rho_in.cols() != 2) {
        throw DimensionMismatch("teleportation_simulate: input must be a qubit");
    }
    // Qubits: input, sender's half, receiver's half.
    Matrix joint = qubit::kron(rho_in, noisy_bell(p));
    const double h = std::sqrt(0.5);
    Vector phi_plus(4), phi_minus(4), psi_plus(4), psi_minus(4);
    phi_plus << h, 0, 0, h;
    phi_minus << h, 0, 0, -h;
    psi_plus << 0, h, h, 0;
    psi_minus << 0, h, -h, 0;
    const Matrix x = qubit::pauli_x();
    const Matrix z = qubit::pauli_z();
    const std::array<std::pair<Vector, Matrix>, 4> outcomes{
        {{phi_plus, qubit::identity()}, {phi_minus, z}, {psi_plus, x}, {psi_minus, z * x}}};
    Matrix out = Matrix::Zero(2, 2);
    for (const auto &[bell, correction] : outcomes) {
        // <bell| (x) 1 on the first two qubits.
        Matrix bra = qubit::kron(bell.adjoint(), qubit::identity());
        Matrix branch = bra * joint * bra.adjoint();
        out += correction * branch * correction.adjoint();
    }
    return out;
}

double teleportation_baseline(double p) {
    return 1.0 - p + 2.0 * p * p / 3.0;
}

double teleportation_average_simulated(double p) {
    double total = 0.0;
    for (const QubitState &s : pauli_eigenstates()) {
        Vector psi(2);
        psi << s.c0, s.c1;
        Matrix out = teleportation_simulate(psi * psi.adjoint(), p);
        total += psi.dot(out * psi).real();
    }
    return total / 6.0;
}

}  // namespace cfs
