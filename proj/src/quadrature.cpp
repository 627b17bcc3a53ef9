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

#include "cfs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gsl/gsl_integration.h>

namespace cfs {

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) {
        throw std::invalid_argument("gauss_legendre: order must be positive");
    }
    gsl_integration_glfixed_table *table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(order));
    if (table == nullptr) {
        throw std::runtime_error("gauss_legendre: could not build the rule");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &rule.nodes[i], &rule.weights[i], table);
    }
    gsl_integration_glfixed_table_free(table);
    return rule;
}

namespace {

double product_rule(const std::function<double(double, Complex)> &f, int order) {
    GaussLegendreRule rule = gauss_legendre(order);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        double x = rule.nodes[i];
        double c0 = std::sqrt(0.5 * (1.0 + x));
        double s = std::sqrt(0.5 * (1.0 - x));
        double ring = 0.0;
        for (int j = 0; j < order; ++j) {
            double phi = 2.0 * std::numbers::pi * j / order;
            ring += f(c0, std::polar(s, phi));
        }
        total += rule.weights[i] * ring / order;
    }
    return 0.5 * total;
}

}  // namespace

SphereAverage sphere_average(const std::function<double(double, Complex)> &f, double tol, int start_order,
                             int max_order) {
    int order = std::max(1, start_order);
    double previous = product_rule(f, order);
    while (order * 2 <= max_order) {
        order *= 2;
        double current = product_rule(f, order);
        double change = std::abs(current - previous);
        if (change < tol) {
            return {current, change, order};
        }
        previous = current;
    }
    std::ostringstream msg;
    msg << "sphere_average: no agreement within " << tol << " up to " << max_order << " nodes per axis";
    throw QuadratureNotConverged(msg.str());
}

}  // namespace cfs
