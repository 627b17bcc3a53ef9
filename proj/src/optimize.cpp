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

#include "cfs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>
#include <gsl/gsl_multimin.h>
#include <json.hpp>

namespace cfs {

GateSequence GateSequence::zero(int layers) {
    if (layers < 1) {
        throw std::invalid_argument("GateSequence: need at least one layer");
    }
    return {std::vector<Layer>(layers), std::vector<Layer>(layers)};
}

GateSequence GateSequence::cf_point(int layers) {
    GateSequence seq = zero(layers);
    seq.pre[0].theta = 0.5 * std::numbers::pi;
    seq.post[0].theta = 0.5 * std::numbers::pi;
    return seq;
}

std::vector<double> GateSequence::flatten() const {
    std::vector<double> out;
    for (const auto *half : {&pre, &post}) {
        for (const Layer &l : *half) {
            out.insert(out.end(), {l.beta_q, l.beta_p, l.theta});
        }
    }
    return out;
}

GateSequence GateSequence::unflatten(int layers, std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(6 * layers)) {
        throw std::invalid_argument("GateSequence::unflatten: expected 6 parameters per layer");
    }
    GateSequence seq = zero(layers);
    std::size_t i = 0;
    for (auto *half : {&seq.pre, &seq.post}) {
        for (Layer &l : *half) {
            l = {values[i], values[i + 1], values[i + 2]};
            i += 3;
        }
    }
    return seq;
}

std::string GateSequence::to_json() const {
    nlohmann::ordered_json doc;
    doc["layers"] = layers();
    doc["conditional_displacement_axis"] = "z";
    doc["conditional_rotation_axis"] = "x";
    for (const auto &[name, half] : {std::pair{"pre", &pre}, std::pair{"post", &post}}) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const Layer &l : *half) {
            list.push_back({{"beta_q", l.beta_q}, {"beta_p", l.beta_p}, {"theta", l.theta}});
        }
        doc[name] = list;
    }
    return doc.dump(2);
}

GateSequence GateSequence::from_json(const std::string &text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    int layers = doc.at("layers").get<int>();
    GateSequence seq = zero(layers);
    for (const auto &[name, half] : {std::pair{"pre", &seq.pre}, std::pair{"post", &seq.post}}) {
        const auto &list = doc.at(name);
        if (list.size() != static_cast<std::size_t>(layers)) {
            throw std::invalid_argument("GateSequence::from_json: layer count mismatch");
        }
        for (int i = 0; i < layers; ++i) {
            (*half)[i] = {list[i].at("beta_q").get<double>(), list[i].at("beta_p").get<double>(),
                          list[i].at("theta").get<double>()};
        }
    }
    return seq;
}

// ---------------------------------------------------------------------------------------------

namespace {

struct QuadratureBasis {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
};

QuadratureBasis diagonalize_position(FockSpace space) {
    Eigen::MatrixXd q = position_quadrature(space).matrix().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q);
    return {solver.eigenvectors(), solver.eigenvalues()};
}

// exp(i beta q) on the truncated space.
Matrix exp_position(const QuadratureBasis &basis, double beta) {
    Vector phases = (Complex(0.0, beta) * basis.values.cast<Complex>()).array().exp();
    Matrix v = basis.vectors.cast<Complex>();
    return v * phases.asDiagonal() * v.transpose();
}

// p = R q R^dag with R = exp(i pi a^dag a / 2), so exp(i beta p) = R exp(i beta q) R^dag.
Matrix exp_momentum(const QuadratureBasis &basis, double beta) {
    Eigen::Index n = basis.values.size();
    Vector r(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        r(k) = std::polar(1.0, 0.5 * std::numbers::pi * static_cast<double>(k % 4));
    }
    return r.asDiagonal() * exp_position(basis, beta) * r.conjugate().asDiagonal();
}

Matrix conditional(const Matrix &e_plus, const Matrix &e_minus) {
    Eigen::Index n = e_plus.rows();
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = e_plus;
    out.bottomRightCorner(n, n) = e_minus;
    return out;
}

Matrix layer_unitary(const QuadratureBasis &basis, const Layer &layer, FockSpace space) {
    Matrix cd_q = conditional(exp_position(basis, layer.beta_q), exp_position(basis, -layer.beta_q));
    Matrix cd_p = conditional(exp_momentum(basis, layer.beta_p), exp_momentum(basis, -layer.beta_p));
    Matrix cr = suppression_unitary(layer.theta, {1.0, 0.0, 0.0}, space).matrix();
    return cd_q * cd_p * cr;
}

// Diagonal of cos(theta n) and sin(theta n).
std::pair<Vector, Vector> rotation_diagonals(Eigen::Index n, double theta) {
    Vector c(n), s(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        c(k) = std::cos(theta * static_cast<double>(k));
        s(k) = std::sin(theta * static_cast<double>(k));
    }
    return {c, s};
}

}  // namespace

SequenceUnitaries build_sequence(const GateSequence &seq, FockSpace space) {
    if (seq.pre.size() != seq.post.size() || seq.pre.empty()) {
        throw std::invalid_argument("build_sequence: pre and post need the same positive layer count");
    }
    QuadratureBasis basis = diagonalize_position(space);
    Eigen::Index d = 2 * space.dim();
    Matrix pre = Matrix::Identity(d, d);
    Matrix post_forward = Matrix::Identity(d, d);
    for (int i = 0; i < seq.layers(); ++i) {
        pre = layer_unitary(basis, seq.pre[i], space) * pre;
        post_forward = layer_unitary(basis, seq.post[i], space) * post_forward;
    }
    return {HybridOperator(space, 1, pre), HybridOperator(space, 1, post_forward.adjoint())};
}

// ---------------------------------------------------------------------------------------------

SequenceEvaluator::SequenceEvaluator(const BosonicCode &code, const KrausChannel &cv_noise,
                                     std::optional<KrausChannel> dv_noise, Vector ancilla_init)
    : code_(&code), cv_noise_(cv_noise), dv_noise_(std::move(dv_noise)), ancilla_(std::move(ancilla_init)) {
    if (cv_noise_.space() != code.space()) {
        throw DimensionMismatch("SequenceEvaluator: code and channel have different cutoffs");
    }
    if (dv_noise_ && dv_noise_->is_bosonic()) {
        throw std::invalid_argument("SequenceEvaluator: ancilla noise must be a qubit channel");
    }
    QuadratureBasis basis = diagonalize_position(code.space());
    q_vectors_ = std::move(basis.vectors);
    q_values_ = std::move(basis.values);
}

LogicalResponse SequenceEvaluator::response(const GateSequence &seq) const {
    const Eigen::Index n = code_->space().dim();
    const QuadratureBasis basis{q_vectors_, q_values_};

    // Encoded kets after U_pre: columns [w^0, w^1], each stacked as (ancilla 0 block; ancilla 1 block).
    Matrix w(2 * n, 2);
    for (int mu = 0; mu < 2; ++mu) {
        w.block(0, mu, n, 1) = ancilla_(0) * code_->ket(mu).amplitudes();
        w.block(n, mu, n, 1) = ancilla_(1) * code_->ket(mu).amplitudes();
    }
    for (const Layer &l : seq.pre) {
        auto [c, s] = rotation_diagonals(n, l.theta);
        Matrix top = w.topRows(n);
        Matrix bottom = w.bottomRows(n);
        const Complex i(0.0, 1.0);
        w.topRows(n) = c.asDiagonal() * top + i * (s.asDiagonal() * bottom);
        w.bottomRows(n) = i * (s.asDiagonal() * top) + c.asDiagonal() * bottom;
        w.topRows(n) = exp_momentum(basis, l.beta_p) * w.topRows(n);
        w.bottomRows(n) = exp_momentum(basis, -l.beta_p) * w.bottomRows(n);
        w.topRows(n) = exp_position(basis, l.beta_q) * w.topRows(n);
        w.bottomRows(n) = exp_position(basis, -l.beta_q) * w.bottomRows(n);
    }

    // Heralded rows of U_post: (<a| (x) 1) V(post_1)^dag ... V(post_L)^dag, built left to right.
    Matrix m0 = std::conj(ancilla_(0)) * Matrix::Identity(n, n);
    Matrix m1 = std::conj(ancilla_(1)) * Matrix::Identity(n, n);
    for (const Layer &l : seq.post) {
        // V^dag = CR(-theta) CD_p(-beta_p) CD_q(-beta_q)
        auto [c, s] = rotation_diagonals(n, l.theta);
        const Complex i(0.0, 1.0);
        Matrix a0 = m0 * c.asDiagonal() - i * (m1 * s.asDiagonal());
        Matrix a1 = -i * (m0 * s.asDiagonal()) + m1 * c.asDiagonal();
        m0 = a0 * exp_momentum(basis, -l.beta_p) * exp_position(basis, -l.beta_q);
        m1 = a1 * exp_momentum(basis, l.beta_p) * exp_position(basis, l.beta_q);
    }

    // Every CV Kraus term applied to both ancilla blocks of both encoded kets.
    const auto &terms = cv_noise_.bosonic_terms();
    const Eigen::Index nk = static_cast<Eigen::Index>(terms.size());
    std::array<std::array<Matrix, 2>, 2> y;  // y[mu][t]: N x nk
    for (int mu = 0; mu < 2; ++mu) {
        for (int t = 0; t < 2; ++t) {
            y[mu][t].resize(n, nk);
            Vector col = w.block(t * n, mu, n, 1);
            for (Eigen::Index k = 0; k < nk; ++k) {
                y[mu][t].col(k) = terms[k].apply(col);
            }
        }
    }
    std::vector<Matrix> dv_terms = dv_noise_ ? dv_noise_->qubit_terms() : std::vector<Matrix>{qubit::identity()};
    Matrix kets(n, 2);
    kets << code_->ket0().amplitudes(), code_->ket1().amplitudes();

    LogicalResponse r;
    r.defect = cv_noise_.cptp_defect();
    std::array<std::array<Matrix, 2>, 2> z[2];  // z[mu][s][t] = M_s y[mu][t]
    for (int mu = 0; mu < 2; ++mu) {
        for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
                z[mu][s][t].noalias() = (s == 0 ? m0 : m1) * y[mu][t];
            }
        }
    }
    for (const Matrix &j : dv_terms) {
        std::array<Matrix, 2> out;  // heralded trajectories, N x nk
        std::array<Matrix, 2> proj;  // <a_L| trajectories, 2 x nk
        for (int mu = 0; mu < 2; ++mu) {
            out[mu] = Matrix::Zero(n, nk);
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 2; ++t) {
                    if (j(s, t) != 0.0) {
                        out[mu] += j(s, t) * z[mu][s][t];
                    }
                }
            }
            proj[mu] = kets.adjoint() * out[mu];
        }
        for (int mu = 0; mu < 2; ++mu) {
            for (int nu = 0; nu < 2; ++nu) {
                r.trace[mu][nu] += (out[nu].conjugate().cwiseProduct(out[mu])).sum();
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        r.overlap[a][b][mu][nu] += (proj[mu].row(a).cwiseProduct(proj[nu].row(b).conjugate())).sum();
                    }
                }
            }
        }
    }
    return r;
}

double SequenceEvaluator::average_fidelity(const GateSequence &seq) const {
    return cfs::average_fidelity(response(seq)).value;
}

LogicalResponse sequence_response_density(const BosonicCode &code, const GateSequence &seq,
                                          const KrausChannel &cv_noise, const std::optional<KrausChannel> &dv_noise,
                                          const Vector &ancilla_init) {
    SequenceUnitaries u = build_sequence(seq, code.space());
    HeraldedMap map = [&](const Matrix &x) {
        HybridState state = tensor_state(FockOperator(code.space(), x), ancilla_init * ancilla_init.adjoint());
        state = conjugate(u.pre, state);
        state = apply(cv_noise, state, Factor::Cv);
        if (dv_noise) {
            state = apply(*dv_noise, state, Factor::Qubit0);
        }
        state = conjugate(u.post, state);
        return project_all_qubits(state, ancilla_init).matrix();
    };
    return LogicalResponse::from_map(code, map, cv_noise.cptp_defect());
}

// ---------------------------------------------------------------------------------------------

namespace {

struct StartOutcome {
    std::vector<double> best_x;
    double best_value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool exhausted = false;
};

struct ObjectiveContext {
    const SequenceEvaluator *evaluator;
    int layers;
    StartOutcome *outcome;
};

double objective(const gsl_vector *x, void *params) {
    auto *ctx = static_cast<ObjectiveContext *>(params);
    std::vector<double> values(x->size);
    for (std::size_t i = 0; i < x->size; ++i) {
        values[i] = gsl_vector_get(x, i);
    }
    double infidelity;
    try {
        infidelity = 1.0 - ctx->evaluator->average_fidelity(GateSequence::unflatten(ctx->layers, values));
    } catch (const std::exception &) {
        infidelity = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(infidelity)) {
        infidelity = 2.0;
    }
    StartOutcome &out = *ctx->outcome;
    ++out.evaluations;
    if (infidelity < out.best_value) {
        out.best_value = infidelity;
        out.best_x = values;
    }
    return infidelity;
}

StartOutcome run_start(const SequenceEvaluator &evaluator, const OptimizeOptions &options,
                       const std::vector<double> &start) {
    StartOutcome outcome;
    ObjectiveContext ctx{&evaluator, options.layers, &outcome};
    const std::size_t dim = start.size();
    gsl_multimin_function fn{&objective, dim, &ctx};
    gsl_vector *x = gsl_vector_alloc(dim);
    gsl_vector *step = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(x, i, start[i]);
        gsl_vector_set(step, i, options.initial_step);
    }
    gsl_multimin_fminimizer *nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_multimin_fminimizer_set(nm, &fn, x, step);
    bool converged = false;
    while (outcome.evaluations < options.budget) {
        if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), options.size_tol) == GSL_SUCCESS) {
            converged = true;
            break;
        }
    }
    outcome.exhausted = !converged && outcome.evaluations >= options.budget;
    gsl_multimin_fminimizer_free(nm);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return outcome;
}

}  // namespace

OptimizeResult optimize_sequence(const BosonicCode &code, const KrausChannel &cv_noise,
                                 const std::optional<KrausChannel> &dv_noise, const OptimizeOptions &options) {
    if (options.layers < 1 || options.starts < 1 || options.budget < 1) {
        throw std::invalid_argument("optimize_sequence: layers, starts and budget must be positive");
    }
    SuppressionConfig config = SuppressionConfig::for_code(code);
    SequenceEvaluator evaluator(code, cv_noise, dv_noise, config.ancilla_init);
    const GateSequence cf = GateSequence::cf_point(options.layers);
    const std::vector<double> cf_x = cf.flatten();

    std::vector<std::vector<double>> starts{cf_x};
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> offset(0.0, options.start_spread);
    while (static_cast<int>(starts.size()) < options.starts) {
        std::vector<double> x = cf_x;
        for (double &v : x) {
            v += offset(rng);
        }
        starts.push_back(std::move(x));
    }

    std::vector<StartOutcome> outcomes(starts.size());
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), starts.size()));
    for (std::size_t first = 0; first < starts.size(); first += workers) {
        std::vector<std::future<StartOutcome>> batch;
        for (std::size_t i = first; i < std::min(starts.size(), first + workers); ++i) {
            batch.push_back(std::async(std::launch::async, run_start, std::cref(evaluator), std::cref(options),
                                       std::cref(starts[i])));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            outcomes[first + i] = batch[i].get();
        }
    }

    OptimizeResult result;
    result.cf_fidelity = evaluator.average_fidelity(cf);
    double best = 1.0 - result.cf_fidelity;
    std::vector<double> best_x = cf_x;
    for (const StartOutcome &o : outcomes) {
        result.evaluations += o.evaluations;
        result.budget_exhausted = result.budget_exhausted || o.exhausted;
        if (o.best_value < best) {
            best = o.best_value;
            best_x = o.best_x;
        }
    }
    result.best = GateSequence::unflatten(options.layers, best_x);
    result.fidelity = 1.0 - best;
    return result;
}

}  // namespace cfs
