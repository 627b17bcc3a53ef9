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

#include <random>

#include "cfs/fock.hpp"

namespace cfs::testing {

/// Random density matrix of the given dimension, supported on the first `rank_levels` levels.
inline Matrix random_density(Eigen::Index dim, std::uint64_t seed, Eigen::Index support = -1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    if (support < 0) {
        support = dim;
    }
    Matrix a = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < support; ++i) {
        for (Eigen::Index j = 0; j < support; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline double max_abs(const Matrix &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace cfs::testing
