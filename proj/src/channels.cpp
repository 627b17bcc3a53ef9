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

#include "cfs/channels.hpp"

#include <algorithm>
#include <cmath>

namespace cfs {

Matrix BandOperator::dense() const {
    Eigen::Index n = coeff.size();
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index j = i + shift;
        if (j >= 0 && j < n) {
            m(j, i) = coeff(i);
        }
    }
    return m;
}

void BandOperator::conjugate_into(const Matrix &x, Matrix &out) const {
    Eigen::Index n = coeff.size();
    Eigen::Index len = n - std::abs(shift);
    if (len <= 0) {
        return;
    }
    Eigen::Index src = std::max<Eigen::Index>(0, -shift);
    Eigen::Index dst = src + shift;
    auto c = coeff.segment(src, len);
    out.block(dst, dst, len, len) += (c * c.adjoint()).cwiseProduct(x.block(src, src, len, len));
}

Vector BandOperator::apply(const Vector &v) const {
    Eigen::Index n = coeff.size();
    Vector out = Vector::Zero(n);
    Eigen::Index len = n - std::abs(shift);
    if (len > 0) {
        Eigen::Index src = std::max<Eigen::Index>(0, -shift);
        out.segment(src + shift, len) = coeff.segment(src, len).cwiseProduct(v.segment(src, len));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

// |A_l|n>|: binomial amplitude sqrt(C(n,l) mu^l (1-mu)^{n-l}).
double loss_amplitude(int n, int l, double mu) {
    if (l > n) {
        return 0.0;
    }
    if (l == 0) {
        return std::pow(1.0 - mu, 0.5 * n);
    }
    double log_c = std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0);
    return std::exp(0.5 * (log_c + l * std::log(mu) + (n - l) * std::log1p(-mu)));
}

// |B_k|m>|: sqrt(C(m+k,k) (1 - 1/G)^k G^{-m-1}).
double amp_amplitude(int m, int k, double gain) {
    double log_c = std::lgamma(m + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m + 1.0);
    double log_w = -(m + 1.0) * std::log(gain);
    if (k > 0) {
        log_w += k * std::log1p(-1.0 / gain);
    }
    return std::exp(0.5 * (log_c + log_w));
}

double completeness_defect(const std::vector<BandOperator> &terms, int n_levels, int check_level) {
    double worst = 0.0;
    for (int n = 0; n <= std::min(check_level, n_levels - 1); ++n) {
        double total = 0.0;
        for (const BandOperator &t : terms) {
            int image = n + t.shift;
            if (image >= 0 && image < n_levels) {
                total += std::norm(t.coeff(n));
            }
        }
        worst = std::max(worst, std::abs(1.0 - total));
    }
    return worst;
}

std::vector<BandOperator> build_terms(double gain, double mu, int l_max, int k_max, int n_levels) {
    std::vector<BandOperator> terms;
    for (int k = 0; k <= k_max; ++k) {
        for (int l = 0; l <= l_max; ++l) {
            BandOperator t{k - l, Vector::Zero(n_levels)};
            for (int n = l; n < n_levels; ++n) {
                if (n - l + k >= n_levels) {
                    break;
                }
                t.coeff(n) = loss_amplitude(n, l, mu) * amp_amplitude(n - l, k, gain);
            }
            terms.push_back(std::move(t));
        }
    }
    return terms;
}

int default_check_level(FockSpace space, int l_max, int k_max, const TruncationPolicy &policy) {
    if (policy.check_level >= 0) {
        return std::min(policy.check_level, space.cutoff() - 1);
    }
    return std::max(0, space.cutoff() - 1 - l_max - k_max);
}

}  // namespace

KrausChannel amp_after_loss_channel(double gain, double mu, FockSpace space, const TruncationPolicy &policy) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("loss rate must lie in [0, 1)");
    }
    if (!(gain >= 1.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("amplifier gain must be >= 1");
    }
    int n_levels = space.cutoff();
    bool lossy = mu > 0.0;
    bool amplifying = gain > 1.0;
    int l_max = lossy ? policy.l_max : 0;
    int k_max = amplifying ? policy.k_max : 0;
    while (true) {
        int check = default_check_level(space, l_max, k_max, policy);
        std::vector<BandOperator> terms = build_terms(gain, mu, l_max, k_max, n_levels);
        double defect = completeness_defect(terms, n_levels, check);
        bool can_grow_l = lossy && l_max < policy.max_order;
        bool can_grow_k = amplifying && k_max < policy.max_order;
        if (defect <= policy.tol || (!can_grow_l && !can_grow_k)) {
            return KrausChannel::bosonic(space, std::move(terms), l_max, k_max, check);
        }
        // Grow whichever sum is further from complete on the checked levels.
        double loss_defect = completeness_defect(build_terms(1.0, mu, l_max, 0, n_levels), n_levels, check);
        double amp_defect = completeness_defect(build_terms(gain, 0.0, 0, k_max, n_levels), n_levels, check);
        if (can_grow_l && (loss_defect >= amp_defect || !can_grow_k)) {
            l_max = std::min(policy.max_order, l_max + policy.step);
        } else {
            k_max = std::min(policy.max_order, k_max + policy.step);
        }
    }
}

KrausChannel identity_channel(FockSpace space) {
    return amp_after_loss_channel(1.0, 0.0, space);
}

KrausChannel loss_channel(double mu, FockSpace space, const TruncationPolicy &policy) {
    return amp_after_loss_channel(1.0, mu, space, policy);
}

KrausChannel amp_channel(double gain, FockSpace space, const TruncationPolicy &policy) {
    return amp_after_loss_channel(gain, 0.0, space, policy);
}

KrausChannel thermal_channel(double eta, double nbar, FockSpace space, const TruncationPolicy &policy) {
    if (!(eta >= 0.0 && eta < 1.0) || !(nbar >= 0.0)) {
        throw std::invalid_argument("thermal_channel: need eta in [0, 1) and nbar >= 0");
    }
    ThermalParams params{eta, nbar};
    return amp_after_loss_channel(params.gain(), params.loss_rate(), space, policy);
}

KrausChannel gdn_channel(double eta, FockSpace space, const TruncationPolicy &policy) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("gdn_channel: eta must lie in (0, 1)");
    }
    return amp_after_loss_channel(1.0 / eta, eta, space, policy);
}

// ---------------------------------------------------------------------------------------------

KrausChannel KrausChannel::bosonic(FockSpace space, std::vector<BandOperator> terms, int l_max, int k_max,
                                   int check_level) {
    for (const BandOperator &t : terms) {
        if (t.coeff.size() != space.dim()) {
            throw DimensionMismatch("KrausChannel: term does not match the cutoff");
        }
    }
    KrausChannel ch;
    ch.kind_ = ChannelKind::Bosonic;
    ch.space_ = space;
    ch.band_ = std::move(terms);
    ch.l_max_ = l_max;
    ch.k_max_ = k_max;
    ch.check_level_ = check_level;
    ch.defect_ = completeness_defect(ch.band_, space.cutoff(), check_level);
    return ch;
}

KrausChannel KrausChannel::qubit(std::vector<Matrix> terms) {
    Matrix completeness = Matrix::Zero(2, 2);
    for (const Matrix &t : terms) {
        if (t.rows() != 2 || t.cols() != 2) {
            throw DimensionMismatch("KrausChannel: qubit term must be 2 x 2");
        }
        completeness += t.adjoint() * t;
    }
    KrausChannel ch;
    ch.kind_ = ChannelKind::Qubit;
    ch.qubit_ = std::move(terms);
    ch.defect_ = (completeness - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    return ch;
}

const FockSpace &KrausChannel::space() const {
    if (!space_) {
        throw std::logic_error("KrausChannel::space: qubit channels have no Fock space");
    }
    return *space_;
}

std::vector<Matrix> KrausChannel::dense_terms() const {
    if (!is_bosonic()) {
        return qubit_;
    }
    std::vector<Matrix> out;
    out.reserve(band_.size());
    for (const BandOperator &t : band_) {
        out.push_back(t.dense());
    }
    return out;
}

double KrausChannel::cptp_defect_up_to(int level) const {
    if (!is_bosonic()) {
        return defect_;
    }
    return completeness_defect(band_, space_->cutoff(), level);
}

Matrix KrausChannel::apply(const Matrix &rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    if (is_bosonic()) {
        if (rho.rows() != space_->dim() || rho.cols() != space_->dim()) {
            throw DimensionMismatch("KrausChannel::apply: operator does not match the cutoff");
        }
        for (const BandOperator &t : band_) {
            t.conjugate_into(rho, out);
        }
    } else {
        if (rho.rows() != 2 || rho.cols() != 2) {
            throw DimensionMismatch("KrausChannel::apply: qubit channel needs a 2 x 2 operator");
        }
        for (const Matrix &t : qubit_) {
            out += t * rho * t.adjoint();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

Matrix damping_k0(double p) {
    Matrix k = Matrix::Zero(2, 2);
    k(0, 0) = 1.0;
    k(1, 1) = std::sqrt(1.0 - p);
    return k;
}

Matrix amplitude_jump(double p) {
    Matrix k = Matrix::Zero(2, 2);
    k(0, 1) = std::sqrt(p);
    return k;
}

Matrix phase_jump(double p) {
    Matrix k = Matrix::Zero(2, 2);
    k(1, 1) = std::sqrt(p);
    return k;
}

}  // namespace

KrausChannel qubit_damping(double p, DampingKind kind) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("qubit_damping: p must lie in [0, 1]");
    }
    switch (kind) {
    case DampingKind::Amplitude:
        return KrausChannel::qubit({damping_k0(p), amplitude_jump(p)});
    case DampingKind::Phase:
        return KrausChannel::qubit({damping_k0(p), phase_jump(p)});
    case DampingKind::Composite: {
        // Phase after amplitude; the product of the two jumps vanishes.
        std::vector<Matrix> terms;
        for (const Matrix &ph : {damping_k0(p), phase_jump(p)}) {
            for (const Matrix &am : {damping_k0(p), amplitude_jump(p)}) {
                Matrix t = ph * am;
                if (t.cwiseAbs().maxCoeff() > 0.0) {
                    terms.push_back(t);
                }
            }
        }
        return KrausChannel::qubit(std::move(terms));
    }
    }
    throw std::invalid_argument("qubit_damping: unknown kind");
}

KrausChannel depolarizing(double eta_prime) {
    if (!(eta_prime >= 0.0 && eta_prime <= 1.0)) {
        throw std::invalid_argument("depolarizing: strength must lie in [0, 1]");
    }
    double w = std::sqrt(eta_prime / 3.0);
    return KrausChannel::qubit({std::sqrt(1.0 - eta_prime) * qubit::identity(), w * qubit::pauli_x(),
                                w * qubit::pauli_y(), w * qubit::pauli_z()});
}

KrausChannel identity_qubit_channel() {
    return KrausChannel::qubit({qubit::identity()});
}

Matrix composite_damping_pauli_form(double p, const Matrix &rho) {
    const Matrix x = qubit::pauli_x();
    const Matrix y = qubit::pauli_y();
    const Matrix z = qubit::pauli_z();
    const Complex i(0.0, 1.0);
    double c_plus = 4.0 - 3.0 * p;
    double c_minus = p;
    Matrix bracket = x * rho * x + y * rho * y + rho * z + z * rho + i * (y * rho * x - x * rho * y);
    return 0.25 * (c_plus * rho + c_minus * z * rho * z + p * bracket);
}

Matrix noisy_bell(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("noisy_bell: p must lie in [0, 1]");
    }
    double q = 1.0 - p;
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0 + p * p;
    m(1, 1) = p * q;
    m(2, 2) = p * q;
    m(3, 3) = q * q;
    m(0, 3) = q * q;
    m(3, 0) = q * q;
    return 0.5 * m;
}

HybridState apply(const KrausChannel &channel, const HybridState &state, Factor factor) {
    if (factor == Factor::Cv) {
        if (!channel.is_bosonic()) {
            throw DimensionMismatch("apply: qubit channel on the bosonic factor");
        }
        if (channel.space() != state.cv_space()) {
            throw DimensionMismatch("apply: channel and state have different cutoffs");
        }
        Eigen::Index n = state.cv_space().dim();
        int qd = state.qubit_dim();
        Matrix out = Matrix::Zero(state.matrix().rows(), state.matrix().cols());
        for (int s = 0; s < qd; ++s) {
            for (int t = 0; t < qd; ++t) {
                Matrix block = Matrix::Zero(n, n);
                Matrix in = state.matrix().block(s * n, t * n, n, n);
                for (const BandOperator &term : channel.bosonic_terms()) {
                    term.conjugate_into(in, block);
                }
                out.block(s * n, t * n, n, n) = block;
            }
        }
        return {state.cv_space(), state.qubit_count(), std::move(out),
                state.accumulated_defect() + channel.cptp_defect()};
    }
    if (channel.is_bosonic()) {
        throw DimensionMismatch("apply: bosonic channel on a qubit factor");
    }
    int index = static_cast<int>(factor) - static_cast<int>(Factor::Qubit0);
    if (index >= state.qubit_count()) {
        throw DimensionMismatch("apply: the register has no such qubit");
    }
    Matrix out = Matrix::Zero(state.matrix().rows(), state.matrix().cols());
    for (const Matrix &term : channel.qubit_terms()) {
        out += conjugate_qubits(embed_qubit_operator(term, index, state.qubit_count()), state).matrix();
    }
    return {state.cv_space(), state.qubit_count(), std::move(out), state.accumulated_defect()};
}

}  // namespace cfs
