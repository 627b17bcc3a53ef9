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
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cfs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
  public:
    explicit DimensionMismatch(const std::string &what) : std::invalid_argument(what) {
    }
};

class TailTooLarge : public std::runtime_error {
  public:
    explicit TailTooLarge(const std::string &what) : std::runtime_error(what) {
    }
};

/// Truncated Fock space spanned by |0>, ..., |N-1>.
class FockSpace {
  public:
    explicit FockSpace(int cutoff);

    int cutoff() const noexcept {
        return cutoff_;
    }
    Eigen::Index dim() const noexcept {
        return cutoff_;
    }

    friend bool operator==(const FockSpace &, const FockSpace &) = default;

  private:
    int cutoff_;
};

class FockKet {
  public:
    FockKet(FockSpace space, Vector amplitudes);

    static FockKet basis(FockSpace space, int level);

    const FockSpace &space() const noexcept {
        return space_;
    }
    const Vector &amplitudes() const noexcept {
        return amps_;
    }
    Complex operator[](int level) const {
        return amps_(level);
    }

    double norm() const {
        return amps_.norm();
    }
    FockKet normalized() const;
    Complex inner(const FockKet &other) const;  // <this|other>

  private:
    FockSpace space_;
    Vector amps_;
};

/// Dense N x N operator on a truncated Fock space.
class FockOperator {
  public:
    FockOperator(FockSpace space, Matrix entries);

    static FockOperator identity(FockSpace space);
    static FockOperator zero(FockSpace space);
    /// |ket><bra|
    static FockOperator dyad(const FockKet &ket, const FockKet &bra);

    const FockSpace &space() const noexcept {
        return space_;
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    Complex operator()(int row, int col) const {
        return m_(row, col);
    }

    FockOperator adjoint() const;
    Complex trace() const {
        return m_.trace();
    }
    Complex expectation(const FockKet &ket) const;

    bool is_hermitian(double tol = kHermitianTol) const;
    /// Unitarity of the leading `levels` x `levels` block, the part untouched by truncation.
    bool is_unitary(int levels, double tol = kHermitianTol) const;

    FockOperator &operator+=(const FockOperator &rhs);
    FockOperator &operator-=(const FockOperator &rhs);
    FockOperator &operator*=(Complex s);

    friend FockOperator operator+(FockOperator lhs, const FockOperator &rhs) {
        return lhs += rhs;
    }
    friend FockOperator operator-(FockOperator lhs, const FockOperator &rhs) {
        return lhs -= rhs;
    }
    friend FockOperator operator*(FockOperator lhs, Complex s) {
        return lhs *= s;
    }
    friend FockOperator operator*(Complex s, FockOperator rhs) {
        return rhs *= s;
    }
    friend FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs);
    friend FockKet operator*(const FockOperator &op, const FockKet &ket);

  private:
    FockSpace space_;
    Matrix m_;
};

FockOperator annihilation(FockSpace space);
FockOperator creation(FockSpace space);
FockOperator number_operator(FockSpace space);
/// diag(f(0), ..., f(N-1)).
FockOperator number_power_diag(FockSpace space, const std::function<Complex(int)> &f);
/// exp(i theta a^dag a).
FockOperator rotation(FockSpace space, double theta);
/// (-1)^{a^dag a}.
FockOperator parity_operator(FockSpace space);
/// q = (a + a^dag)/sqrt2 and p = (a - a^dag)/(i sqrt2).
FockOperator position_quadrature(FockSpace space);
FockOperator momentum_quadrature(FockSpace space);

/// Weight of |alpha> on Fock levels >= N, i.e. 1 - exp(-|alpha|^2) sum_{n<N} |alpha|^{2n}/n!.
double coherent_tail_weight(FockSpace space, Complex alpha);

/// Coherent state renormalized after truncation.
/// Throws TailTooLarge when the discarded weight exceeds 1e-6.
FockKet coherent_ket(FockSpace space, Complex alpha);

/// Operator on (qubit register) (x) (Fock space), stored qubit-major: row index = s * N + n,
/// where s enumerates the qubit basis with qubit 0 as the most significant bit.
class HybridOperator {
  public:
    HybridOperator(FockSpace cv, int qubits, Matrix entries);

    static HybridOperator identity(FockSpace cv, int qubits);

    const FockSpace &cv_space() const noexcept {
        return cv_;
    }
    int qubit_count() const noexcept {
        return qubits_;
    }
    int qubit_dim() const noexcept {
        return 1 << qubits_;
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }

    HybridOperator adjoint() const;
    bool is_unitary(double tol = kHermitianTol) const;

    friend HybridOperator operator*(const HybridOperator &lhs, const HybridOperator &rhs);

  private:
    FockSpace cv_;
    int qubits_;
    Matrix m_;
};

/// Operator on (qubit register) (x) (Fock space) in the same layout as HybridOperator.
/// Holds density operators as well as the unnormalized or off-diagonal operators that
/// flow through heralded maps; positivity is queried, not enforced.
class HybridState {
  public:
    HybridState(FockSpace cv, int qubits, Matrix entries, double defect = 0.0);

    /// A CV-only state.
    explicit HybridState(const FockOperator &rho);

    const FockSpace &cv_space() const noexcept {
        return cv_;
    }
    int qubit_count() const noexcept {
        return qubits_;
    }
    int qubit_dim() const noexcept {
        return 1 << qubits_;
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    Matrix &matrix() noexcept {
        return m_;
    }
    /// N x N block <s| rho |t> for qubit basis indices s, t.
    Matrix block(int s, int t) const;

    double trace() const {
        return m_.trace().real();
    }
    bool is_hermitian(double tol = kHermitianTol) const;
    double min_eigenvalue() const;
    bool is_positive(double tol = kPositivityTol) const {
        return min_eigenvalue() >= -tol;
    }

    /// Sum of the truncation defects of every channel applied so far.
    double accumulated_defect() const noexcept {
        return defect_;
    }
    void add_defect(double d) noexcept {
        defect_ += d;
    }

    /// Requires qubit_count() == 0.
    FockOperator cv_operator() const;

    HybridState normalized() const;

  private:
    FockSpace cv_;
    int qubits_;
    Matrix m_;
    double defect_;
};

/// Kronecker composition qubitOp (x) cvOp in the qubit-major layout. `qubit_op` must be 2^q x 2^q.
HybridOperator tensor(const FockOperator &cv_op, const Matrix &qubit_op);
/// rho (x) sigma as a hybrid state.
HybridState tensor_state(const FockOperator &rho, const Matrix &sigma);

/// Conjugation U rho U^dag.
HybridState conjugate(const HybridOperator &u, const HybridState &state);
/// (K (x) 1) rho (K (x) 1)^dag for a CV operator K acting blockwise.
HybridState conjugate_cv(const Matrix &k, const HybridState &state);
/// Full-register conjugation by a 2^q x 2^q qubit operator.
HybridState conjugate_qubits(const Matrix &j, const HybridState &state);

/// Embed a single-qubit operator on qubit `index` of a `qubits`-qubit register.
Matrix embed_qubit_operator(const Matrix &op, int index, int qubits);

/// Trace out the listed qubits.
HybridState partial_trace_qubits(const HybridState &state, std::span<const int> which);
/// <ket| rho |ket> on the listed qubits; `ket` has dimension 2^which.size(). Unnormalized:
/// the trace of the result is the herald probability.
HybridState project_qubits(const HybridState &state, std::span<const int> which, const Vector &ket);
/// Project every qubit, returning the CV operator.
FockOperator project_all_qubits(const HybridState &state, const Vector &ket);

namespace qubit {

Matrix identity(int qubits = 1);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
/// n.sigma for a unit 3-vector.
Matrix axis_operator(const std::array<double, 3> &axis);
Vector ket0();
Vector ket1();
Matrix kron(const Matrix &a, const Matrix &b);

}  // namespace qubit

}  // namespace cfs
