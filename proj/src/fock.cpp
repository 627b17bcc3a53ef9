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

#include "cfs/fock.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cfs {

namespace {

void require_same_space(const FockSpace &a, const FockSpace &b, const char *where) {
    if (a != b) {
        std::ostringstream msg;
        msg << where << ": cutoff " << a.cutoff() << " vs " << b.cutoff();
        throw DimensionMismatch(msg.str());
    }
}

void require_same_register(const HybridState &s, const HybridOperator &u, const char *where) {
    if (s.cv_space() != u.cv_space() || s.qubit_count() != u.qubit_count()) {
        throw DimensionMismatch(std::string(where) + ": operator and state live on different spaces");
    }
}

}  // namespace

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 2) {
        throw std::invalid_argument("FockSpace: cutoff must be at least 2");
    }
}

// ---------------------------------------------------------------------------------------------
// FockKet

FockKet::FockKet(FockSpace space, Vector amplitudes) : space_(space), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_.dim()) {
        throw DimensionMismatch("FockKet: amplitude vector does not match the cutoff");
    }
}

FockKet FockKet::basis(FockSpace space, int level) {
    if (level < 0 || level >= space.cutoff()) {
        throw std::out_of_range("FockKet::basis: level outside the truncated space");
    }
    Vector v = Vector::Zero(space.dim());
    v(level) = 1.0;
    return {space, std::move(v)};
}

FockKet FockKet::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw std::domain_error("FockKet::normalized: zero vector");
    }
    return {space_, amps_ / n};
}

Complex FockKet::inner(const FockKet &other) const {
    require_same_space(space_, other.space_, "FockKet::inner");
    return amps_.dot(other.amps_);
}

// ---------------------------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(FockSpace space, Matrix entries) : space_(space), m_(std::move(entries)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
        throw DimensionMismatch("FockOperator: matrix is not N x N");
    }
}

FockOperator FockOperator::identity(FockSpace space) {
    return {space, Matrix::Identity(space.dim(), space.dim())};
}

FockOperator FockOperator::zero(FockSpace space) {
    return {space, Matrix::Zero(space.dim(), space.dim())};
}

FockOperator FockOperator::dyad(const FockKet &ket, const FockKet &bra) {
    require_same_space(ket.space(), bra.space(), "FockOperator::dyad");
    return {ket.space(), ket.amplitudes() * bra.amplitudes().adjoint()};
}

FockOperator FockOperator::adjoint() const {
    return {space_, m_.adjoint()};
}

Complex FockOperator::expectation(const FockKet &ket) const {
    require_same_space(space_, ket.space(), "FockOperator::expectation");
    return ket.amplitudes().dot(m_ * ket.amplitudes());
}

bool FockOperator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).norm() < tol;
}

bool FockOperator::is_unitary(int levels, double tol) const {
    if (levels <= 0 || levels > space_.cutoff()) {
        levels = space_.cutoff();
    }
    Matrix product = (m_.adjoint() * m_).topLeftCorner(levels, levels);
    return (product - Matrix::Identity(levels, levels)).norm() < tol;
}

FockOperator &FockOperator::operator+=(const FockOperator &rhs) {
    require_same_space(space_, rhs.space_, "FockOperator::operator+");
    m_ += rhs.m_;
    return *this;
}

FockOperator &FockOperator::operator-=(const FockOperator &rhs) {
    require_same_space(space_, rhs.space_, "FockOperator::operator-");
    m_ -= rhs.m_;
    return *this;
}

FockOperator &FockOperator::operator*=(Complex s) {
    m_ *= s;
    return *this;
}

FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs) {
    require_same_space(lhs.space_, rhs.space_, "FockOperator::operator*");
    return {lhs.space_, lhs.m_ * rhs.m_};
}

FockKet operator*(const FockOperator &op, const FockKet &ket) {
    require_same_space(op.space_, ket.space(), "FockOperator * FockKet");
    return {ket.space(), op.m_ * ket.amplitudes()};
}

// ---------------------------------------------------------------------------------------------
// Named operators

FockOperator annihilation(FockSpace space) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int n = 1; n < space.cutoff(); ++n) {
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return {space, std::move(m)};
}

FockOperator creation(FockSpace space) {
    return annihilation(space).adjoint();
}

FockOperator number_operator(FockSpace space) {
    return number_power_diag(space, [](int n) { return Complex(n, 0.0); });
}

FockOperator number_power_diag(FockSpace space, const std::function<Complex(int)> &f) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.cutoff(); ++n) {
        m(n, n) = f(n);
    }
    return {space, std::move(m)};
}

FockOperator rotation(FockSpace space, double theta) {
    return number_power_diag(space, [theta](int n) { return std::polar(1.0, theta * n); });
}

FockOperator parity_operator(FockSpace space) {
    return number_power_diag(space, [](int n) { return Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0); });
}

FockOperator position_quadrature(FockSpace space) {
    Matrix a = annihilation(space).matrix();
    return {space, (a + a.adjoint()) / std::sqrt(2.0)};
}

FockOperator momentum_quadrature(FockSpace space) {
    Matrix a = annihilation(space).matrix();
    return {space, (a - a.adjoint()) / Complex(0.0, std::sqrt(2.0))};
}

double coherent_tail_weight(FockSpace space, Complex alpha) {
    // Poisson(|alpha|^2) mass above N-1, summed in log space.
    double mean = std::norm(alpha);
    if (mean == 0.0) {
        return 0.0;
    }
    double log_term = -mean + space.cutoff() * std::log(mean) - std::lgamma(space.cutoff() + 1.0);
    double tail = 0.0;
    for (int n = space.cutoff(); n < space.cutoff() + 100000; ++n) {
        double term = std::exp(log_term);
        tail += term;
        if (n > mean && term < 1e-18 * tail) {
            break;
        }
        log_term += std::log(mean) - std::log(n + 1.0);
    }
    return tail;
}

FockKet coherent_ket(FockSpace space, Complex alpha) {
    double tail = coherent_tail_weight(space, alpha);
    if (tail > 1e-6) {
        std::ostringstream msg;
        msg << "coherent_ket: |alpha|^2 = " << std::norm(alpha) << " leaves weight " << tail
            << " beyond cutoff " << space.cutoff();
        throw TailTooLarge(msg.str());
    }
    Vector v(space.dim());
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < space.cutoff(); ++n) {
        v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return FockKet(space, std::move(v)).normalized();
}

// ---------------------------------------------------------------------------------------------
// Hybrid register

HybridOperator::HybridOperator(FockSpace cv, int qubits, Matrix entries)
    : cv_(cv), qubits_(qubits), m_(std::move(entries)) {
    if (qubits < 0 || qubits > 4) {
        throw std::invalid_argument("HybridOperator: unsupported qubit count");
    }
    Eigen::Index d = cv_.dim() << qubits_;
    if (m_.rows() != d || m_.cols() != d) {
        throw DimensionMismatch("HybridOperator: matrix does not match register dimension");
    }
}

HybridOperator HybridOperator::identity(FockSpace cv, int qubits) {
    Eigen::Index d = cv.dim() << qubits;
    return {cv, qubits, Matrix::Identity(d, d)};
}

HybridOperator HybridOperator::adjoint() const {
    return {cv_, qubits_, m_.adjoint()};
}

bool HybridOperator::is_unitary(double tol) const {
    return (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).norm() < tol;
}

HybridOperator operator*(const HybridOperator &lhs, const HybridOperator &rhs) {
    if (lhs.cv_ != rhs.cv_ || lhs.qubits_ != rhs.qubits_) {
        throw DimensionMismatch("HybridOperator::operator*: register mismatch");
    }
    return {lhs.cv_, lhs.qubits_, lhs.m_ * rhs.m_};
}

HybridState::HybridState(FockSpace cv, int qubits, Matrix entries, double defect)
    : cv_(cv), qubits_(qubits), m_(std::move(entries)), defect_(defect) {
    if (qubits < 0 || qubits > 4) {
        throw std::invalid_argument("HybridState: unsupported qubit count");
    }
    Eigen::Index d = cv_.dim() << qubits_;
    if (m_.rows() != d || m_.cols() != d) {
        throw DimensionMismatch("HybridState: matrix does not match register dimension");
    }
}

HybridState::HybridState(const FockOperator &rho) : HybridState(rho.space(), 0, rho.matrix()) {
}

Matrix HybridState::block(int s, int t) const {
    Eigen::Index n = cv_.dim();
    return m_.block(s * n, t * n, n, n);
}

bool HybridState::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).norm() < tol;
}

double HybridState::min_eigenvalue() const {
    Matrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

FockOperator HybridState::cv_operator() const {
    if (qubits_ != 0) {
        throw DimensionMismatch("HybridState::cv_operator: qubits are still attached");
    }
    return {cv_, m_};
}

HybridState HybridState::normalized() const {
    double t = trace();
    if (!(t > 0.0)) {
        throw std::domain_error("HybridState::normalized: non-positive trace");
    }
    return {cv_, qubits_, m_ / t, defect_};
}

HybridOperator tensor(const FockOperator &cv_op, const Matrix &qubit_op) {
    int q = 0;
    while ((Eigen::Index{1} << q) < qubit_op.rows()) {
        ++q;
    }
    if (qubit_op.rows() != qubit_op.cols() || (Eigen::Index{1} << q) != qubit_op.rows()) {
        throw DimensionMismatch("tensor: qubit operator is not 2^q x 2^q");
    }
    return {cv_op.space(), q, qubit::kron(qubit_op, cv_op.matrix())};
}

HybridState tensor_state(const FockOperator &rho, const Matrix &sigma) {
    HybridOperator op = tensor(rho, sigma);
    return {op.cv_space(), op.qubit_count(), op.matrix()};
}

HybridState conjugate(const HybridOperator &u, const HybridState &state) {
    require_same_register(state, u, "conjugate");
    return {state.cv_space(), state.qubit_count(), u.matrix() * state.matrix() * u.matrix().adjoint(),
            state.accumulated_defect()};
}

HybridState conjugate_cv(const Matrix &k, const HybridState &state) {
    Eigen::Index n = state.cv_space().dim();
    if (k.rows() != n || k.cols() != n) {
        throw DimensionMismatch("conjugate_cv: operator does not match the Fock cutoff");
    }
    int qd = state.qubit_dim();
    Matrix out(state.matrix().rows(), state.matrix().cols());
    for (int s = 0; s < qd; ++s) {
        for (int t = 0; t < qd; ++t) {
            out.block(s * n, t * n, n, n).noalias() = k * state.matrix().block(s * n, t * n, n, n) * k.adjoint();
        }
    }
    return {state.cv_space(), state.qubit_count(), std::move(out), state.accumulated_defect()};
}

HybridState conjugate_qubits(const Matrix &j, const HybridState &state) {
    int qd = state.qubit_dim();
    if (j.rows() != qd || j.cols() != qd) {
        throw DimensionMismatch("conjugate_qubits: operator does not match the register");
    }
    Eigen::Index n = state.cv_space().dim();
    const Matrix &m = state.matrix();
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (int s = 0; s < qd; ++s) {
        for (int t = 0; t < qd; ++t) {
            auto dst = out.block(s * n, t * n, n, n);
            for (int u = 0; u < qd; ++u) {
                if (j(s, u) == 0.0) {
                    continue;
                }
                for (int v = 0; v < qd; ++v) {
                    Complex c = j(s, u) * std::conj(j(t, v));
                    if (c != 0.0) {
                        dst += c * m.block(u * n, v * n, n, n);
                    }
                }
            }
        }
    }
    return {state.cv_space(), state.qubit_count(), std::move(out), state.accumulated_defect()};
}

Matrix embed_qubit_operator(const Matrix &op, int index, int qubits) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw DimensionMismatch("embed_qubit_operator: expected a single-qubit operator");
    }
    if (index < 0 || index >= qubits) {
        throw std::out_of_range("embed_qubit_operator: qubit index out of range");
    }
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < qubits; ++i) {
        out = qubit::kron(out, i == index ? op : qubit::identity());
    }
    return out;
}

namespace {

// Splits the register into the listed qubits (in the given order) and the rest (in register order).
struct RegisterSplit {
    std::vector<int> kept;
    int qubits;
    std::vector<int> which;

    int compose(int kept_index, int which_index) const {
        int s = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            int b = (kept_index >> (kept.size() - 1 - i)) & 1;
            s |= b << (qubits - 1 - kept[i]);
        }
        for (std::size_t i = 0; i < which.size(); ++i) {
            int b = (which_index >> (which.size() - 1 - i)) & 1;
            s |= b << (qubits - 1 - which[i]);
        }
        return s;
    }
};

RegisterSplit split_register(int qubits, std::span<const int> which) {
    RegisterSplit r{{}, qubits, {which.begin(), which.end()}};
    for (int q = 0; q < qubits; ++q) {
        bool listed = false;
        for (int w : which) {
            if (w < 0 || w >= qubits) {
                throw std::out_of_range("qubit index out of range");
            }
            listed = listed || w == q;
        }
        if (!listed) {
            r.kept.push_back(q);
        }
    }
    if (r.kept.size() + which.size() != static_cast<std::size_t>(qubits)) {
        throw std::invalid_argument("qubit indices must be distinct");
    }
    return r;
}

}  // namespace

HybridState partial_trace_qubits(const HybridState &state, std::span<const int> which) {
    RegisterSplit split = split_register(state.qubit_count(), which);
    int kept_q = static_cast<int>(split.kept.size());
    Eigen::Index n = state.cv_space().dim();
    int kd = 1 << kept_q;
    int wd = 1 << which.size();
    Matrix out = Matrix::Zero(n * kd, n * kd);
    for (int s = 0; s < kd; ++s) {
        for (int t = 0; t < kd; ++t) {
            for (int w = 0; w < wd; ++w) {
                out.block(s * n, t * n, n, n) += state.matrix().block(split.compose(s, w) * n, split.compose(t, w) * n, n, n);
            }
        }
    }
    return {state.cv_space(), kept_q, std::move(out), state.accumulated_defect()};
}

HybridState project_qubits(const HybridState &state, std::span<const int> which, const Vector &ket) {
    RegisterSplit split = split_register(state.qubit_count(), which);
    int wd = 1 << which.size();
    if (ket.size() != wd) {
        throw DimensionMismatch("project_qubits: ket dimension does not match the projected qubits");
    }
    int kept_q = static_cast<int>(split.kept.size());
    Eigen::Index n = state.cv_space().dim();
    int kd = 1 << kept_q;
    Matrix out = Matrix::Zero(n * kd, n * kd);
    for (int s = 0; s < kd; ++s) {
        for (int t = 0; t < kd; ++t) {
            auto dst = out.block(s * n, t * n, n, n);
            for (int a = 0; a < wd; ++a) {
                for (int b = 0; b < wd; ++b) {
                    Complex c = std::conj(ket(a)) * ket(b);
                    if (c != 0.0) {
                        dst += c * state.matrix().block(split.compose(s, a) * n, split.compose(t, b) * n, n, n);
                    }
                }
            }
        }
    }
    return {state.cv_space(), kept_q, std::move(out), state.accumulated_defect()};
}

FockOperator project_all_qubits(const HybridState &state, const Vector &ket) {
    std::vector<int> all(state.qubit_count());
    for (int i = 0; i < state.qubit_count(); ++i) {
        all[i] = i;
    }
    return project_qubits(state, all, ket).cv_operator();
}

namespace qubit {

Matrix identity(int qubits) {
    return Matrix::Identity(1 << qubits, 1 << qubits);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix axis_operator(const std::array<double, 3> &axis) {
    double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("axis_operator: axis must be a unit vector");
    }
    return axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z();
}

Vector ket0() {
    Vector v(2);
    v << 1.0, 0.0;
    return v;
}

Vector ket1() {
    Vector v(2);
    v << 0.0, 1.0;
    return v;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qubit

}  // namespace cfs
