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

#include "cfs/haar.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cfs {

Matrix2 compress(const BosonicCode &code, const FockOperator &x) {
    if (x.space() != code.space()) {
        throw DimensionMismatch("compress: operator and code have different cutoffs");
    }
    Matrix2 m;
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            m(mu, nu) = code.ket(mu).amplitudes().dot(x.matrix() * code.ket(nu).amplitudes());
        }
    }
    return m;
}

Complex haar_moment(std::span<const Eigen::MatrixXcd> observables) {
    int t = static_cast<int>(observables.size());
    if (t == 0) {
        return 1.0;
    }
    Eigen::Index d = observables[0].rows();
    for (const auto &m : observables) {
        if (m.rows() != d || m.cols() != d) {
            throw DimensionMismatch("haar_moment: observables must share one square dimension");
        }
    }
    std::vector<int> perm(t);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        std::vector<bool> seen(t, false);
        for (int start = 0; start < t; ++start) {
            if (seen[start]) {
                continue;
            }
            Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(d, d);
            for (int i = start; !seen[i]; i = perm[i]) {
                seen[i] = true;
                product = product * observables[i];
            }
            term *= product.trace();
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double rising = 1.0;
    for (int i = 0; i < t; ++i) {
        rising *= static_cast<double>(d + i);
    }
    return total / rising;
}

Complex haar_average(std::span<const Matrix2> observables) {
    std::size_t t = observables.size();
    if (t < 1 || t > 3) {
        throw UnsupportedMomentOrder("haar_average: only moments of order 1, 2 and 3 are provided");
    }
    const Matrix2 &m1 = observables[0];
    if (t == 1) {
        return 0.5 * m1.trace();
    }
    const Matrix2 &m2 = observables[1];
    if (t == 2) {
        return ((m1 * m2).trace() + m1.trace() * m2.trace()) / 6.0;
    }
    const Matrix2 &m3 = observables[2];
    Complex sum = m1.trace() * m2.trace() * m3.trace() + (m1 * m2).trace() * m3.trace() +
                  (m1 * m3).trace() * m2.trace() + (m2 * m3).trace() * m1.trace() + (m1 * m2 * m3).trace() +
                  (m1 * m3 * m2).trace();
    return sum / 24.0;
}

std::vector<QubitState> haar_sample(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<QubitState> out;
    out.reserve(count);
    while (out.size() < count) {
        Complex z0(gauss(rng), gauss(rng));
        Complex z1(gauss(rng), gauss(rng));
        double norm = std::sqrt(std::norm(z0) + std::norm(z1));
        if (norm == 0.0) {
            continue;
        }
        double r0 = std::abs(z0);
        Complex phase = r0 > 0.0 ? std::conj(z0) / r0 : Complex(1.0);
        out.push_back({r0 / norm, z1 * phase / norm});
    }
    return out;
}

std::array<QubitState, 6> pauli_eigenstates() {
    const double h = std::sqrt(0.5);
    const Complex i(0.0, 1.0);
    return {{{1.0, 0.0}, {0.0, 1.0}, {h, h}, {h, -h}, {h, h * i}, {h, -h * i}}};
}

}  // namespace cfs
