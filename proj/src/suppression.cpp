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

#include "cfs/suppression.hpp"

#include <cmath>
#include <numbers>

namespace cfs {

namespace {

bool same_ray(const Vector &a, const Vector &b) {
    return std::abs(std::abs(a.dot(b)) - 1.0) < 1e-12;
}

// +1 / -1 if every nonzero entry of x sits in the even-even / odd-odd block, 0 otherwise.
// A zero operator reports +1.
int operator_parity(const Matrix &x) {
    double even = 0.0;
    double odd = 0.0;
    double cross = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double w = std::norm(x(i, j));
            if (i % 2 != j % 2) {
                cross += w;
            } else if (i % 2 == 0) {
                even += w;
            } else {
                odd += w;
            }
        }
    }
    double total = even + odd + cross;
    if (total == 0.0) {
        return 1;
    }
    double tol = 1e-20 * total;
    if (cross <= tol && odd <= tol) {
        return 1;
    }
    if (cross <= tol && even <= tol) {
        return -1;
    }
    return 0;
}

Vector required_ancilla(int parity, const std::array<double, 3> &axis) {
    return parity > 0 ? qubit::ket0() : Vector(qubit::axis_operator(axis) * qubit::ket0());
}

HybridState apply_gate_noise(const HybridState &state, const GateNoise &noise, int ancilla) {
    Factor anc = static_cast<Factor>(static_cast<int>(Factor::Qubit0) + ancilla);
    HybridState out = apply(loss_channel(noise.cv_loss, state.cv_space()), state, Factor::Cv);
    return apply(qubit_damping(noise.dv_damp, DampingKind::Composite), out, anc);
}

// Everything between state preparation and the herald, on a one-ancilla register.
HybridState run_interferometer(const Matrix &x, const KrausChannel &cv_noise, const SuppressionConfig &config,
                               const HybridOperator &u) {
    FockSpace space = cv_noise.space();
    if (x.rows() != space.dim() || x.cols() != space.dim()) {
        throw DimensionMismatch("suppression: input does not match the channel cutoff");
    }
    HybridState state(space, 1, Matrix::Zero(2 * space.dim(), 2 * space.dim()));
    if (config.variant == Variant::LocalRotationPlusOneCF) {
        int parity = operator_parity(x);
        if (parity == 0) {
            throw VariantParityMismatch("local-rotation variant needs an input of definite photon-number parity");
        }
        if (!same_ray(config.ancilla_init, required_ancilla(parity, config.axis))) {
            throw VariantParityMismatch("local-rotation variant: ancilla preparation does not match the input parity");
        }
        Matrix r = rotation(space, 0.5 * std::numbers::pi).matrix();
        state = tensor_state(FockOperator(space, r * x * r.adjoint()), qubit::ket0() * qubit::ket0().adjoint());
    } else {
        const Vector &a = config.ancilla_init;
        state = conjugate(u, tensor_state(FockOperator(space, x), a * a.adjoint()));
        if (config.gate_noise) {
            state = apply_gate_noise(state, *config.gate_noise, 0);
        }
    }
    state = apply(cv_noise, state, Factor::Cv);
    if (config.dv_noise) {
        state = apply(*config.dv_noise, state, Factor::Qubit0);
    }
    state = conjugate(u.adjoint(), state);
    if (config.gate_noise) {
        state = apply_gate_noise(state, *config.gate_noise, 0);
    }
    return state;
}

}  // namespace

SuppressionConfig SuppressionConfig::for_code(const BosonicCode &code, Variant variant) {
    SuppressionConfig config;
    config.variant = variant;
    if (code.parity() == ParityClass::LikeOdd) {
        config.ancilla_init = qubit::axis_operator(config.axis) * qubit::ket0();
    }
    if (variant == Variant::LocalRotationPlusOneCF && code.parity() != ParityClass::LikeEven &&
        code.parity() != ParityClass::LikeOdd) {
        throw VariantParityMismatch("local-rotation variant requires a like-parity code, got " + code.label() +
                                    " (" + to_string(code.parity()) + ")");
    }
    return config;
}

void SuppressionConfig::validate() const {
    double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("SuppressionConfig: axis must be a unit vector");
    }
    if (std::abs(theta - 0.5 * std::numbers::pi) < 1e-15 && std::abs(axis[2]) > 1e-12) {
        throw std::invalid_argument("SuppressionConfig: the CF setting needs an axis orthogonal to z");
    }
    if (ancilla_init.size() != 2 || std::abs(ancilla_init.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("SuppressionConfig: ancilla preparation must be a normalized qubit ket");
    }
    if (dv_noise && dv_noise->is_bosonic()) {
        throw std::invalid_argument("SuppressionConfig: ancilla noise must be a qubit channel");
    }
}

HybridOperator suppression_unitary(double theta, const std::array<double, 3> &axis, FockSpace space, int qubits,
                                   int ancilla) {
    FockOperator c = number_power_diag(space, [theta](int n) { return Complex(std::cos(theta * n), 0.0); });
    FockOperator s = number_power_diag(space, [theta](int n) { return Complex(0.0, std::sin(theta * n)); });
    Matrix n_sigma = embed_qubit_operator(qubit::axis_operator(axis), ancilla, qubits);
    return {space, qubits, qubit::kron(qubit::identity(qubits), c.matrix()) + qubit::kron(n_sigma, s.matrix())};
}

HeraldedMap suppression_map(const KrausChannel &cv_noise, const SuppressionConfig &config) {
    config.validate();
    HybridOperator u = suppression_unitary(config.theta, config.axis, cv_noise.space());
    return [cv_noise, config, u](const Matrix &x) {
        return project_all_qubits(run_interferometer(x, cv_noise, config, u), config.ancilla_init).matrix();
    };
}

HeraldedMap unsuppressed_map(const KrausChannel &cv_noise) {
    return [cv_noise](const Matrix &x) { return cv_noise.apply(x); };
}

SuppressionResult run_suppression(const FockOperator &rho_in, const KrausChannel &cv_noise,
                                  const SuppressionConfig &config) {
    config.validate();
    HybridOperator u = suppression_unitary(config.theta, config.axis, cv_noise.space());
    HybridState state = run_interferometer(rho_in.matrix(), cv_noise, config, u);
    FockOperator out = project_all_qubits(state, config.ancilla_init);
    double p = out.trace().real();
    if (!(p > 0.0)) {
        throw std::domain_error("run_suppression: the herald never fires");
    }
    return {out * Complex(1.0 / p), p, state.accumulated_defect()};
}

// ---------------------------------------------------------------------------------------------

LogicalResponse LogicalResponse::from_outputs(const BosonicCode &code, const std::array<std::array<Matrix, 2>, 2> &out,
                                              double defect) {
    LogicalResponse r;
    r.defect = defect;
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            const Matrix &o = out[mu][nu];
            r.trace[mu][nu] = o.trace();
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    r.overlap[a][b][mu][nu] = code.ket(a).amplitudes().dot(o * code.ket(b).amplitudes());
                }
            }
        }
    }
    return r;
}

LogicalResponse LogicalResponse::from_map(const BosonicCode &code, const HeraldedMap &map, double defect) {
    std::array<std::array<Matrix, 2>, 2> out;
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            out[mu][nu] = map(code.ket(mu).amplitudes() * code.ket(nu).amplitudes().adjoint());
        }
    }
    return from_outputs(code, out, defect);
}

double LogicalResponse::success(const QubitState &s) const {
    const std::array<Complex, 2> c{Complex(s.c0), s.c1};
    Complex p = 0.0;
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            p += c[mu] * std::conj(c[nu]) * trace[mu][nu];
        }
    }
    return p.real();
}

double LogicalResponse::fidelity(const QubitState &s) const {
    const std::array<Complex, 2> c{Complex(s.c0), s.c1};
    Complex num = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int mu = 0; mu < 2; ++mu) {
                for (int nu = 0; nu < 2; ++nu) {
                    num += std::conj(c[a]) * c[b] * c[mu] * std::conj(c[nu]) * overlap[a][b][mu][nu];
                }
            }
        }
    }
    return num.real() / success(s);
}

SphereAverage average_fidelity(const LogicalResponse &response, double tol) {
    return sphere_average([&response](double c0, Complex c1) { return response.fidelity({c0, c1}); }, tol);
}

MonteCarloAverage average_fidelity_monte_carlo(const LogicalResponse &response, std::uint64_t seed,
                                               std::size_t count) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const QubitState &s : haar_sample(seed, count)) {
        double f = response.fidelity(s);
        sum += f;
        sum_sq += f * f;
    }
    double n = static_cast<double>(count);
    double mean = sum / n;
    double var = count > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
    return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

double average_success(const LogicalResponse &response) {
    double total = 0.0;
    for (const QubitState &s : pauli_eigenstates()) {
        total += response.success(s);
    }
    return total / 6.0;
}

// ---------------------------------------------------------------------------------------------

double codespace_g(const BosonicCode &code, const FockOperator &y) {
    const FockOperator &c = code.codespace_identity();
    Complex first = (c * y * c * y.adjoint()).trace();
    return first.real() + std::norm((c * y).trace());
}

double closed_form_fidelity_suppressed(const BosonicCode &code, double eta, double nbar) {
    FockSpace space = code.space();
    const FockOperator &c = code.codespace_identity();
    FockOperator n = number_operator(space);
    FockOperator a = annihilation(space);
    double tr_n = (c * n).trace().real();
    double tr_n2 = (c * n * n).trace().real();
    double g_n = codespace_g(code, n);
    double g_a2 = codespace_g(code, a * a);
    double nn = nbar * nbar + nbar;
    double bracket = nbar * nbar + 3.0 * (nbar + 0.5) * (nbar + 0.5) * tr_n2 + (nbar * nbar - nbar - 0.5) * tr_n -
                     (1.0 / 6.0 + 4.0 / 3.0 * nn) * g_n - (1.0 / 3.0 + 2.0 / 3.0 * nn) * g_a2;
    return 1.0 - eta * eta * bracket;
}

double closed_form_fidelity_unsuppressed(const BosonicCode &code, double eta, double nbar) {
    FockSpace space = code.space();
    const FockOperator &c = code.codespace_identity();
    FockOperator a = annihilation(space);
    FockOperator ad = a.adjoint();
    double tr_n = (c * ad * a).trace().real();
    double tr_a_sq = std::norm((c * a).trace());
    double gain_term = (c * ad * c * a).trace().real() + tr_a_sq;
    double loss_term = (c * a * c * ad).trace().real() + tr_a_sq;
    double bracket = nbar + (1.0 + 2.0 * nbar) * tr_n - 2.0 * nbar / 3.0 * gain_term - 2.0 * (1.0 + nbar) / 3.0 * loss_term;
    return 1.0 - eta * bracket;
}

double closed_form_success_amp_loss(const BosonicCode &code, double gain, double mu) {
    double denom = 2.0 * gain - 1.0;
    double x = (1.0 - 2.0 * mu * gain) / denom;
    const Matrix &c = code.codespace_identity().matrix();
    double tr = 0.0;
    double power = 1.0;
    for (int n = 0; n < code.space().cutoff(); ++n) {
        tr += c(n, n).real() * power;
        power *= x;
    }
    return 0.5 + tr / (2.0 * denom);
}

double closed_form_success(const BosonicCode &code, double eta, double nbar) {
    ThermalParams params{eta, nbar};
    return closed_form_success_amp_loss(code, params.gain(), params.loss_rate());
}

// ---------------------------------------------------------------------------------------------

HybridSuppressionResult hybrid_entangled_suppression(Complex alpha, Complex beta, int sign,
                                                     const KrausChannel &cv_noise, const SuppressionConfig &config) {
    config.validate();
    if (config.variant != Variant::TwoCF) {
        throw VariantParityMismatch("hybrid states have no definite photon-number parity");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("hybrid_entangled_suppression: sign must be +1 or -1");
    }
    FockSpace space = cv_noise.space();
    Eigen::Index n = space.dim();
    FockKet ka = coherent_ket(space, alpha);
    FockKet kb = coherent_ket(space, beta);
    // Register: data qubit 0, ancilla qubit 1.
    Vector psi(2 * n);
    psi << ka.amplitudes(), static_cast<double>(sign) * kb.amplitudes();
    psi /= std::sqrt(2.0);
    const Vector &anc = config.ancilla_init;
    Vector full = Vector::Zero(4 * n);
    for (int d = 0; d < 2; ++d) {
        for (int a = 0; a < 2; ++a) {
            full.segment((2 * d + a) * n, n) = anc(a) * psi.segment(d * n, n);
        }
    }
    HybridOperator u = suppression_unitary(config.theta, config.axis, space, 2, 1);
    HybridState state = conjugate(u, HybridState(space, 2, full * full.adjoint()));
    if (config.gate_noise) {
        state = apply_gate_noise(state, *config.gate_noise, 1);
    }
    state = apply(cv_noise, state, Factor::Cv);
    if (config.dv_noise) {
        state = apply(*config.dv_noise, state, Factor::Qubit1);
    }
    state = conjugate(u.adjoint(), state);
    if (config.gate_noise) {
        state = apply_gate_noise(state, *config.gate_noise, 1);
    }
    const int ancilla_index[] = {1};
    HybridState out = project_qubits(state, ancilla_index, anc);
    double p = out.trace();
    if (!(p > 0.0)) {
        throw std::domain_error("hybrid_entangled_suppression: the herald never fires");
    }
    out = out.normalized();
    double fidelity = psi.dot(out.matrix() * psi).real();
    return {out, p, fidelity};
}

}  // namespace cfs
