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

#include <optional>
#include <vector>

#include "cfs/fock.hpp"

namespace cfs {

/// An operator that moves every Fock level by the same amount: K|n> = coeff(n) |n + shift>.
/// Products of ladder operators with functions of a^dag a all have this form, and applying
/// one to a density matrix costs O(N^2) instead of O(N^3).
struct BandOperator {
    int shift = 0;
    Vector coeff;  // coeff(n) for n in [0, N); entries whose image leaves the space are ignored

    Matrix dense() const;
    /// K X K^dag for a square N x N block X.
    void conjugate_into(const Matrix &x, Matrix &out) const;
    /// K v.
    Vector apply(const Vector &v) const;
};

/// Kraus truncation orders. The sums over photon-loss events l and gain events k are cut at
/// l_max and k_max, then grown by `step` until the CPTP defect drops below `tol` or the
/// orders reach `max_order`. The defect is measured on Fock levels 0..check_level; a negative
/// check_level means N - 1 - l_max - k_max.
struct TruncationPolicy {
    int l_max = 12;
    int k_max = 12;
    int step = 4;
    int max_order = 48;
    int check_level = -1;
    double tol = 1e-8;
};

/// Thermal noise parameters and the amplifier-after-loss decomposition they induce.
struct ThermalParams {
    double eta = 0.0;
    double nbar = 0.0;

    double gain() const {
        return 1.0 + eta * nbar;
    }
    double loss_rate() const {
        return 1.0 - (1.0 - eta) / gain();
    }
};

enum class ChannelKind { Bosonic, Qubit };

/// A list of Kraus operators acting on one mode or one qubit.
class KrausChannel {
  public:
    static KrausChannel bosonic(FockSpace space, std::vector<BandOperator> terms, int l_max, int k_max,
                                int check_level);
    static KrausChannel qubit(std::vector<Matrix> terms);

    ChannelKind kind() const noexcept {
        return kind_;
    }
    bool is_bosonic() const noexcept {
        return kind_ == ChannelKind::Bosonic;
    }
    const FockSpace &space() const;
    const std::vector<BandOperator> &bosonic_terms() const noexcept {
        return band_;
    }
    const std::vector<Matrix> &qubit_terms() const noexcept {
        return qubit_;
    }
    std::vector<Matrix> dense_terms() const;
    std::size_t size() const noexcept {
        return is_bosonic() ? band_.size() : qubit_.size();
    }

    int l_max() const noexcept {
        return l_max_;
    }
    int k_max() const noexcept {
        return k_max_;
    }
    int check_level() const noexcept {
        return check_level_;
    }
    /// max over checked levels of |1 - <n| sum K^dag K |n>|; exact zero for qubit channels up to rounding.
    double cptp_defect() const noexcept {
        return defect_;
    }
    /// The same defect measured on levels 0..level.
    double cptp_defect_up_to(int level) const;

    /// K rho K^dag summed over terms, for an N x N (bosonic) or 2 x 2 (qubit) operator.
    Matrix apply(const Matrix &rho) const;

  private:
    KrausChannel() = default;

    ChannelKind kind_ = ChannelKind::Qubit;
    std::optional<FockSpace> space_;
    std::vector<BandOperator> band_;
    std::vector<Matrix> qubit_;
    int l_max_ = 0;
    int k_max_ = 0;
    int check_level_ = 0;
    double defect_ = 0.0;
};

KrausChannel identity_channel(FockSpace space);
/// Pure loss: A_l = sqrt(mu^l / l!) (1-mu)^{a^dag a / 2} a^l.
KrausChannel loss_channel(double mu, FockSpace space, const TruncationPolicy &policy = {});
/// Quantum-limited amplifier: B_k = sqrt((1 - 1/G)^k / (k! G)) a^dag^k G^{-a^dag a / 2}.
KrausChannel amp_channel(double gain, FockSpace space, const TruncationPolicy &policy = {});
/// Amplifier after loss, flattened into the products B_k A_l.
KrausChannel amp_after_loss_channel(double gain, double mu, FockSpace space, const TruncationPolicy &policy = {});
/// G = 1 + eta nbar, mu = 1 - (1 - eta)/G.
KrausChannel thermal_channel(double eta, double nbar, FockSpace space, const TruncationPolicy &policy = {});
/// G = 1/eta, mu = eta.
KrausChannel gdn_channel(double eta, FockSpace space, const TruncationPolicy &policy = {});

enum class DampingKind { Amplitude, Phase, Composite };

/// Amplitude damping {K0, sqrt(p)|0><1|}, phase damping {K0, sqrt(p)|1><1|} with
/// K0 = |0><0| + sqrt(1-p)|1><1|; composite is phase after amplitude.
KrausChannel qubit_damping(double p, DampingKind kind);
/// (1 - eta') rho + (eta'/3) sum_j sigma_j rho sigma_j.
KrausChannel depolarizing(double eta_prime);
KrausChannel identity_qubit_channel();

/// Composite damping written directly in the Pauli basis:
/// (1/4){c+ rho + c- Z rho Z + p [X rho X + Y rho Y + {rho, Z} + i(Y rho X - X rho Y)]}
/// with c+ = 4 - 3p, c- = p.
Matrix composite_damping_pauli_form(double p, const Matrix &rho);

/// Phi+ after independent composite damping of strength p on both qubits (4 x 4, basis |00>,|01>,|10>,|11>).
Matrix noisy_bell(double p);

/// Which tensor factor of a hybrid register a channel acts on.
enum class Factor { Cv, Qubit0, Qubit1, Qubit2 };

/// Applies the channel on one factor (identity elsewhere). Bosonic channels add their CPTP
/// defect to the state's running total.
HybridState apply(const KrausChannel &channel, const HybridState &state, Factor factor);

}  // namespace cfs
