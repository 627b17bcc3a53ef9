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

#include "cfs/codes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cfs {

namespace {

constexpr double kOrthogonalityTol = 1e-8;

std::string format_param(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

void require_orthogonal(const FockKet &k0, const FockKet &k1, const std::string &what) {
    double overlap = std::abs(k0.inner(k1));
    if (overlap > kOrthogonalityTol) {
        std::ostringstream msg;
        msg << what << ": codeword overlap " << overlap << " after truncation";
        throw NonOrthogonal(msg.str());
    }
}

// Symmetric (Loewdin) orthonormalization of a nearly orthogonal pair.
std::pair<FockKet, FockKet> symmetric_orthonormalize(const FockKet &k0, const FockKet &k1) {
    Eigen::Matrix2cd gram;
    gram << k0.inner(k0), k0.inner(k1), k1.inner(k0), k1.inner(k1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(gram);
    Eigen::Matrix2cd inv_sqrt = solver.eigenvectors() *
                                solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                solver.eigenvectors().adjoint();
    Vector v0 = inv_sqrt(0, 0) * k0.amplitudes() + inv_sqrt(1, 0) * k1.amplitudes();
    Vector v1 = inv_sqrt(0, 1) * k0.amplitudes() + inv_sqrt(1, 1) * k1.amplitudes();
    return {FockKet(k0.space(), v0), FockKet(k0.space(), v1)};
}

// Normalized Hermite functions psi_0(q) .. psi_{count-1}(q). The three-term recurrence runs on a
// rescaled mantissa so that far-out peaks (where e^{-q^2/2} underflows) still come out right.
std::vector<double> hermite_functions(int count, double q) {
    std::vector<double> out(count, 0.0);
    double log_scale = -0.5 * q * q - 0.25 * std::log(std::numbers::pi);
    double prev = 0.0;
    double cur = 1.0;
    for (int n = 0; n < count; ++n) {
        if (n > 0) {
            double next = std::sqrt(2.0 / n) * q * cur - std::sqrt((n - 1.0) / n) * prev;
            prev = cur;
            cur = next;
        }
        if (std::abs(cur) > 1e150) {
            cur *= 1e-150;
            prev *= 1e-150;
            log_scale += 150.0 * std::log(10.0);
        }
        out[n] = cur == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(cur)) + log_scale), cur);
    }
    return out;
}

// e^{-delta^2 n} sum_s psi_n((2s + mu) sqrt(pi)) on `levels` Fock levels, unnormalized.
Eigen::VectorXd damped_peak_sum(int mu, double delta, int levels) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(levels);
    double spacing = std::sqrt(std::numbers::pi);
    for (int s = 0;; ++s) {
        double contribution = 0.0;
        for (int sign : {1, -1}) {
            // mu = 0 pairs 2s with -2s; mu = 1 pairs 2s+1 with -(2s+1).
            int index = sign > 0 ? s : -s - mu;
            if (mu == 0 && s == 0 && sign < 0) {
                continue;
            }
            std::vector<double> psi = hermite_functions(levels, (2 * index + mu) * spacing);
            Eigen::Map<Eigen::VectorXd> peak(psi.data(), levels);
            total += peak;
            contribution = std::max(contribution, peak.norm());
        }
        // Peaks beyond the classical turning point of the top level only get smaller.
        double q = (2.0 * s + mu) * spacing;
        if (q * q > 2.0 * levels + 1.0 && contribution < 1e-12 * std::max(total.norm(), 1e-300)) {
            break;
        }
    }
    for (int n = 0; n < levels; ++n) {
        total(n) *= std::exp(-delta * delta * n);
    }
    return total;
}

int occupied_level_of(const FockKet &a, const FockKet &b) {
    int level = 0;
    for (int n = 0; n < a.space().cutoff(); ++n) {
        if (std::norm(a[n]) > 1e-14 || std::norm(b[n]) > 1e-14) {
            level = n;
        }
    }
    return level;
}

}  // namespace

const char *to_string(ParityClass parity) {
    switch (parity) {
    case ParityClass::LikeEven:
        return "like-even";
    case ParityClass::LikeOdd:
        return "like-odd";
    case ParityClass::Opposite:
        return "opposite";
    case ParityClass::Mixed:
        return "mixed";
    }
    return "?";
}

int ket_parity(const FockKet &ket, double tol) {
    double even = 0.0;
    double odd = 0.0;
    for (int n = 0; n < ket.space().cutoff(); ++n) {
        (n % 2 == 0 ? even : odd) += std::norm(ket[n]);
    }
    double total = even + odd;
    if (odd <= tol * total) {
        return 1;
    }
    if (even <= tol * total) {
        return -1;
    }
    return 0;
}

BosonicCode::BosonicCode(std::string family, std::map<std::string, double> params, FockKet ket0, FockKet ket1)
    : family_(std::move(family)),
      params_(std::move(params)),
      ket0_(std::move(ket0)),
      ket1_(std::move(ket1)),
      c_((FockOperator::dyad(ket0_, ket0_) + FockOperator::dyad(ket1_, ket1_)) * Complex(0.5)),
      parity_(ParityClass::Mixed),
      occupied_(occupied_level_of(ket0_, ket1_)) {
    if (ket0_.space() != ket1_.space()) {
        throw DimensionMismatch("BosonicCode: codewords live on different cutoffs");
    }
    if (std::abs(ket0_.norm() - 1.0) > 1e-10 || std::abs(ket1_.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("BosonicCode: codewords must be normalized");
    }
    if (std::abs(ket0_.inner(ket1_)) > 1e-10) {
        throw NonOrthogonal("BosonicCode: codewords are not orthogonal");
    }
    int p0 = ket_parity(ket0_);
    int p1 = ket_parity(ket1_);
    if (p0 != 0 && p1 != 0) {
        parity_ = p0 != p1 ? ParityClass::Opposite : (p0 > 0 ? ParityClass::LikeEven : ParityClass::LikeOdd);
    }
}

std::string BosonicCode::params_label() const {
    std::string out;
    for (const auto &[key, value] : params_) {
        if (!out.empty()) {
            out += ';';
        }
        out += key + '=' + format_param(value);
    }
    return out;
}

std::string BosonicCode::label() const {
    std::string inner = params_label();
    for (char &c : inner) {
        if (c == ';') {
            c = ',';
        }
    }
    return family_ + '(' + inner + ')';
}

FockKet BosonicCode::encode(Complex c0, Complex c1) const {
    return {space(), c0 * ket0_.amplitudes() + c1 * ket1_.amplitudes()};
}

BosonicCode cat_code(int n, Complex alpha, FockSpace space) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("cat_code: the number of ring components must be even and >= 2");
    }
    if (alpha == 0.0) {
        throw std::invalid_argument("cat_code: alpha must be nonzero");
    }
    double tail = coherent_tail_weight(space, alpha);
    if (tail > 1e-6) {
        std::ostringstream msg;
        msg << "cat_code: coherent amplitude " << std::abs(alpha) << " leaves weight " << tail << " beyond cutoff "
            << space.cutoff();
        throw TailTooLarge(msg.str());
    }
    // sum_k omega^{k m} vanishes unless m = 0 mod n; the (-1)^k twist moves the surviving sector to n/2.
    Vector coherent(space.dim());
    coherent(0) = std::exp(-0.5 * std::norm(alpha));
    for (int m = 1; m < space.cutoff(); ++m) {
        coherent(m) = coherent(m - 1) * alpha / std::sqrt(static_cast<double>(m));
    }
    Vector v0 = Vector::Zero(space.dim());
    Vector v1 = Vector::Zero(space.dim());
    for (int m = 0; m < space.cutoff(); ++m) {
        if (m % n == 0) {
            v0(m) = coherent(m);
        } else if (m % n == n / 2) {
            v1(m) = coherent(m);
        }
    }
    FockKet k0 = FockKet(space, v0).normalized();
    FockKet k1 = FockKet(space, v1).normalized();
    require_orthogonal(k0, k1, "cat_code");
    std::map<std::string, double> params{{"n", n}, {"alpha", std::abs(alpha)}};
    if (alpha.imag() != 0.0) {
        params["alpha_phase"] = std::arg(alpha);
    }
    return {"cat", std::move(params), k0, k1};
}

BosonicCode binomial_code(int n, int kappa, FockSpace space) {
    if (n < 1 || kappa < 1) {
        throw std::invalid_argument("binomial_code: gap and order must be positive");
    }
    if (n * kappa >= space.cutoff()) {
        std::ostringstream msg;
        msg << "binomial_code: top level " << n * kappa << " does not fit below cutoff " << space.cutoff();
        throw CutoffExceeded(msg.str());
    }
    Vector v0 = Vector::Zero(space.dim());
    Vector v1 = Vector::Zero(space.dim());
    for (int j = 0; j <= kappa; ++j) {
        double weight = std::exp(0.5 * (std::lgamma(kappa + 1.0) - std::lgamma(j + 1.0) - std::lgamma(kappa - j + 1.0)));
        (j % 2 == 0 ? v0 : v1)(j * n) = weight;
    }
    FockKet k0 = FockKet(space, v0).normalized();
    FockKet k1 = FockKet(space, v1).normalized();
    require_orthogonal(k0, k1, "binomial_code");
    return {"bin", {{"n", n}, {"kappa", kappa}}, k0, k1};
}

BosonicCode gkp_code(double delta, FockSpace space) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("gkp_code: delta must lie in (0, 1)");
    }
    // Evaluate on a longer ladder first to measure how much of each codeword the cutoff discards.
    int levels = std::max(space.cutoff() + 20, static_cast<int>(std::ceil(14.0 / (delta * delta))));
    std::vector<Vector> kets;
    for (int mu = 0; mu < 2; ++mu) {
        Eigen::VectorXd full = damped_peak_sum(mu, delta, levels);
        double total = full.squaredNorm();
        double kept = full.head(space.cutoff()).squaredNorm();
        double tail = (total - kept) / total;
        if (tail > 1e-8) {
            std::ostringstream msg;
            msg << "gkp_code: delta " << delta << " leaves weight " << tail << " beyond cutoff " << space.cutoff();
            throw CutoffExceeded(msg.str());
        }
        kets.push_back(full.head(space.cutoff()).cast<Complex>());
    }
    FockKet k0 = FockKet(space, kets[0]).normalized();
    FockKet k1 = FockKet(space, kets[1]).normalized();
    if (std::abs(k0.inner(k1)) > 1e-10) {
        std::tie(k0, k1) = symmetric_orthonormalize(k0, k1);
    }
    return {"gkp", {{"delta", delta}}, k0, k1};
}

CodeMoments code_moments(const BosonicCode &code) {
    const Matrix &c = code.codespace_identity().matrix();
    CodeMoments m{0.0, 0.0, 0.0};
    for (int n = 0; n < code.space().cutoff(); ++n) {
        double w = c(n, n).real();
        m.n += w * n;
        m.n2 += w * n * n;
    }
    // tr{C a^2} = sum_n <n|a^2|n+2> C_{n+2,n}.
    for (int n = 0; n + 2 < code.space().cutoff(); ++n) {
        m.a2 += std::sqrt((n + 1.0) * (n + 2.0)) * c(n + 2, n);
    }
    return m;
}

}  // namespace cfs
