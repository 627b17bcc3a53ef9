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

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfs/fock.hpp"

namespace cfs {

class QuadratureNotConverged : public std::runtime_error {
  public:
    explicit QuadratureNotConverged(const std::string &what) : std::runtime_error(what) {
    }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

struct SphereAverage {
    double value = 0.0;
    double error = 0.0;  // change between the last two orders
    int order = 0;       // nodes per axis at convergence
};

/// Average of f(c0, c1) over the Bloch sphere, with c0 = cos(theta/2) real and
/// c1 = e^{i phi} sin(theta/2): Gauss-Legendre in cos(theta) times the trapezoid rule in phi,
/// both with `order` nodes, doubling from `start_order` until successive values agree within `tol`.
SphereAverage sphere_average(const std::function<double(double, Complex)> &f, double tol = 1e-8,
                             int start_order = 4, int max_order = 512);

}  // namespace cfs
