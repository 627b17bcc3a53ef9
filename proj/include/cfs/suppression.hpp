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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "cfs/channels.hpp"
#include "cfs/codes.hpp"
#include "cfs/haar.hpp"
#include "cfs/quadrature.hpp"

namespace cfs {

class VariantParityMismatch : public std::invalid_argument {
  public:
    explicit VariantParityMismatch(const std::string &what) : std::invalid_argument(what) {
    }
};

enum class Variant {
    TwoCF,                   // U_s, noise, U_s^dag
    LocalRotationPlusOneCF,  // e^{i pi a^dag a / 2} on the mode, noise, U_s^dag
};

/// Extra noise after every conditional gate: loss on the mode and composite damping on the ancilla.
struct GateNoise {
    double cv_loss = 0.01;
    double dv_damp = 0.01;
};

struct SuppressionConfig {
    double theta = 1.5707963267948966;
    std::array<double, 3> axis{1.0, 0.0, 0.0};
    /// Ancilla preparation, also the heralded outcome.
    Vector ancilla_init = qubit::ket0();
    Variant variant = Variant::TwoCF;
    std::optional<KrausChannel> dv_noise;
    std::optional<GateNoise> gate_noise;

    /// Default configuration for a code: ancilla in n.sigma|0> for like-odd codes, |0> otherwise.
    static SuppressionConfig for_code(const BosonicCode &code, Variant variant = Variant::TwoCF);

    /// Checks |n| = 1 and, in the CF setting theta = pi/2, that n is orthogonal to z.
    void validate() const;
};

/// U_s = exp(i theta a^dag a n.sigma) = cos(theta a^dag a) (x) 1 + i sin(theta a^dag a) (x) n.sigma,
/// with the qubit at position `ancilla` of a `qubits`-qubit register.
HybridOperator suppression_unitary(double theta, const std::array<double, 3> &axis, FockSpace space,
                                   int qubits = 1, int ancilla = 0);

/// Linear heralded map X -> unnormalized output. Trace of the output is the herald probability.
using HeraldedMap = std::function<Matrix(const Matrix &)>;

/// The suppression interferometer as a heralded map on CV operators.
HeraldedMap suppression_map(const KrausChannel &cv_noise, const SuppressionConfig &config);

/// Bare channel, no interferometer.
HeraldedMap unsuppressed_map(const KrausChannel &cv_noise);

struct SuppressionResult {
    FockOperator rho_out;  // normalized
    double p_succ;
    double defect;  // accumulated CPTP defect of the applied channels
};

SuppressionResult run_suppression(const FockOperator &rho_in, const KrausChannel &cv_noise,
                                  const SuppressionConfig &config);

/// Response of a heralded map on the logical dyads. For the input c0|0_L> + c1|1_L>, the
/// unnormalized output is sum c_mu c_nu^* Out[mu][nu]; this keeps only
///   overlap[a][b][mu][nu] = <a_L| Out[mu][nu] |b_L>   and   trace[mu][nu] = tr Out[mu][nu].
struct LogicalResponse {
    std::array<std::array<std::array<std::array<Complex, 2>, 2>, 2>, 2> overlap{};
    std::array<std::array<Complex, 2>, 2> trace{};
    double defect = 0.0;

    static LogicalResponse from_map(const BosonicCode &code, const HeraldedMap &map, double defect = 0.0);
    /// From precomputed outputs Out[mu][nu].
    static LogicalResponse from_outputs(const BosonicCode &code, const std::array<std::array<Matrix, 2>, 2> &out,
                                        double defect = 0.0);

    double success(const QubitState &s) const;
    /// <psi|out|psi> / p_succ.
    double fidelity(const QubitState &s) const;
};

SphereAverage average_fidelity(const LogicalResponse &response, double tol = 1e-8);

struct MonteCarloAverage {
    double mean;
    double std_error;
};

MonteCarloAverage average_fidelity_monte_carlo(const LogicalResponse &response, std::uint64_t seed,
                                               std::size_t count);

/// Exact: the success probability is quadratic in the input, so the Pauli-eigenstate average is exact.
double average_success(const LogicalResponse &response);

/// g(Y) = tr{C Y C Y^dag} + |tr{C Y}|^2.
double codespace_g(const BosonicCode &code, const FockOperator &y);

/// Suppressed average fidelity under thermal noise to second order in eta.
double closed_form_fidelity_suppressed(const BosonicCode &code, double eta, double nbar);
/// Unsuppressed average fidelity under thermal noise to first order in eta.
double closed_form_fidelity_unsuppressed(const BosonicCode &code, double eta, double nbar);
/// Average herald probability for the amplifier-after-loss channel (G, mu); exact.
double closed_form_success_amp_loss(const BosonicCode &code, double gain, double mu);
/// The same with (G, mu) from thermal (eta, nbar).
double closed_form_success(const BosonicCode &code, double eta, double nbar);

struct HybridSuppressionResult {
    HybridState rho_out;  // mode (x) data qubit, normalized
    double p_succ;
    double fidelity;  // against the input hybrid ket
};

/// Protects the mode of (|alpha>|0> + sign |beta>|1>)/sqrt2 with one extra ancilla qubit.
HybridSuppressionResult hybrid_entangled_suppression(Complex alpha, Complex beta, int sign,
                                                     const KrausChannel &cv_noise, const SuppressionConfig &config);

}  // namespace cfs
