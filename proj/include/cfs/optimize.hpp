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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfs/suppression.hpp"

namespace cfs {

/// One layer CD_q(beta_q) CD_p(beta_p) CR(theta), with CD_x(beta) = exp(i beta x (x) Z) and
/// CR(theta) = exp(i theta a^dag a (x) X); the rotation acts first.
struct Layer {
    double beta_q = 0.0;
    double beta_p = 0.0;
    double theta = 0.0;
};

/// Encoding unitary U_pre = V(pre_L) ... V(pre_1) and decoding unitary
/// U_post = [V(post_L) ... V(post_1)]^dag, with independent parameters for the two halves.
struct GateSequence {
    std::vector<Layer> pre;
    std::vector<Layer> post;

    int layers() const {
        return static_cast<int>(pre.size());
    }

    static GateSequence zero(int layers);
    /// theta = pi/2 in the first layer of each half, everything else zero: the CF interferometer.
    static GateSequence cf_point(int layers);

    /// pre parameters first, then post, each layer as (beta_q, beta_p, theta).
    std::vector<double> flatten() const;
    static GateSequence unflatten(int layers, std::span<const double> values);

    std::string to_json() const;
    static GateSequence from_json(const std::string &text);
};

struct SequenceUnitaries {
    HybridOperator pre;
    HybridOperator post;
};

/// Dense unitaries on mode (x) one ancilla.
SequenceUnitaries build_sequence(const GateSequence &seq, FockSpace space);

/// Fast evaluator: propagates the two encoded kets through U_pre, expands every Kraus
/// pairing as a pure trajectory, and contracts with the heralded rows of U_post.
class SequenceEvaluator {
  public:
    SequenceEvaluator(const BosonicCode &code, const KrausChannel &cv_noise, std::optional<KrausChannel> dv_noise,
                      Vector ancilla_init = qubit::ket0());

    LogicalResponse response(const GateSequence &seq) const;
    double average_fidelity(const GateSequence &seq) const;

  private:
    const BosonicCode *code_;
    KrausChannel cv_noise_;
    std::optional<KrausChannel> dv_noise_;
    Vector ancilla_;
    Eigen::MatrixXd q_vectors_;  // eigenvectors of the truncated position quadrature
    Eigen::VectorXd q_values_;
};

/// Reference evaluator on full density matrices, used to check SequenceEvaluator.
LogicalResponse sequence_response_density(const BosonicCode &code, const GateSequence &seq,
                                          const KrausChannel &cv_noise, const std::optional<KrausChannel> &dv_noise,
                                          const Vector &ancilla_init = qubit::ket0());

struct OptimizeOptions {
    int layers = 1;
    int starts = 8;
    int budget = 2000;  // objective evaluations per start
    std::uint64_t seed = 1;
    double initial_step = 0.25;
    double start_spread = 0.5;  // standard deviation of the random offsets from the CF point
    double size_tol = 1e-7;
};

struct OptimizeResult {
    GateSequence best;
    double fidelity = 0.0;
    double cf_fidelity = 0.0;
    int evaluations = 0;
    /// Some start ran out of evaluations before the simplex converged; `best` is still the best point seen.
    bool budget_exhausted = false;
};

/// Deterministic multi-start Nelder-Mead over the sequence parameters. Start 0 is the CF point
/// and the result never falls below it.
OptimizeResult optimize_sequence(const BosonicCode &code, const KrausChannel &cv_noise,
                                 const std::optional<KrausChannel> &dv_noise, const OptimizeOptions &options);

}  // namespace cfs
