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
#include <span>
#include <vector>

#include "cfs/codes.hpp"

namespace cfs {

class UnsupportedMomentOrder : public std::invalid_argument {
  public:
    explicit UnsupportedMomentOrder(const std::string &what) : std::invalid_argument(what) {
    }
};

using Matrix2 = Eigen::Matrix2cd;

/// Codespace matrix elements <mu_L| X |nu_L>.
Matrix2 compress(const BosonicCode &code, const FockOperator &x);

/// E over Haar-random pure |psi> in dimension d of prod_i <psi|M_i|psi>, via the sum over
/// permutations of the product of cycle traces divided by d (d+1) ... (d+t-1).
Complex haar_moment(std::span<const Eigen::MatrixXcd> observables);

/// The same for a qubit codespace, restricted to t = 1, 2, 3:
///   t=1: tr M1 / 2
///   t=2: (tr M1 M2 + tr M1 tr M2) / 6
///   t=3: six-term sum / 24
Complex haar_average(std::span<const Matrix2> observables);

/// c0 |0> + c1 |1> with the global phase fixed so that c0 is real and non-negative.
struct QubitState {
    double c0;
    Complex c1;
};

/// Uniformly distributed pure qubit states from normalized complex Gaussian pairs.
std::vector<QubitState> haar_sample(std::uint64_t seed, std::size_t count);

/// The six Pauli eigenstates, a qubit 2-design.
std::array<QubitState, 6> pauli_eigenstates();

}  // namespace cfs
