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

#include <map>
#include <string>

#include "cfs/fock.hpp"

namespace cfs {

class NonOrthogonal : public std::runtime_error {
  public:
    explicit NonOrthogonal(const std::string &what) : std::runtime_error(what) {
    }
};

class CutoffExceeded : public std::runtime_error {
  public:
    explicit CutoffExceeded(const std::string &what) : std::runtime_error(what) {
    }
};

/// Photon-number parity of the two codewords. Mixed only arises for user-supplied kets.
enum class ParityClass { LikeEven, LikeOdd, Opposite, Mixed };

const char *to_string(ParityClass parity);

/// A qubit encoded in a single bosonic mode.
class BosonicCode {
  public:
    /// Takes ownership of two kets that must already be orthonormal.
    BosonicCode(std::string family, std::map<std::string, double> params, FockKet ket0, FockKet ket1);

    const std::string &family() const noexcept {
        return family_;
    }
    const std::map<std::string, double> &params() const noexcept {
        return params_;
    }
    /// e.g. "n=2;kappa=4", keys in sorted order.
    std::string params_label() const;
    /// e.g. "bin(n=2,kappa=4)".
    std::string label() const;

    const FockSpace &space() const noexcept {
        return ket0_.space();
    }
    const FockKet &ket(int mu) const {
        return mu == 0 ? ket0_ : ket1_;
    }
    const FockKet &ket0() const noexcept {
        return ket0_;
    }
    const FockKet &ket1() const noexcept {
        return ket1_;
    }
    /// (|0_L><0_L| + |1_L><1_L|) / 2.
    const FockOperator &codespace_identity() const noexcept {
        return c_;
    }
    ParityClass parity() const noexcept {
        return parity_;
    }
    /// Largest Fock level on which either codeword has weight above 1e-14.
    int occupied_level() const noexcept {
        return occupied_;
    }

    /// c0 |0_L> + c1 |1_L>.
    FockKet encode(Complex c0, Complex c1) const;

  private:
    std::string family_;
    std::map<std::string, double> params_;
    FockKet ket0_;
    FockKet ket1_;
    FockOperator c_;
    ParityClass parity_;
    int occupied_;
};

/// Ring superpositions of n coherent states alpha e^{2 pi i k / n}; n must be even.
BosonicCode cat_code(int n, Complex alpha, FockSpace space);

/// Fock gap n, binomial order kappa.
BosonicCode binomial_code(int n, int kappa, FockSpace space);

/// Finite-energy square-lattice GKP code with damping e^{-delta^2 a^dag a}.
BosonicCode gkp_code(double delta, FockSpace space);

/// Photon-number parity of a ket: +1 or -1 when the wrong-parity weight is below `tol`, else 0.
int ket_parity(const FockKet &ket, double tol = 1e-10);

struct CodeMoments {
    double n;         // tr{C_L a^dag a}
    double n2;        // tr{C_L (a^dag a)^2}
    Complex a2;       // tr{C_L a^2}
};

CodeMoments code_moments(const BosonicCode &code);

}  // namespace cfs
