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

#include "cfs/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace cfs {

const char *to_string(Protocol protocol) {
    switch (protocol) {
    case Protocol::Suppress:
        return "suppress";
    case Protocol::Unsuppressed:
        return "unsuppressed";
    case Protocol::Communicate:
        return "communicate";
    case Protocol::Teleport:
        return "teleport";
    case Protocol::Optimize:
        return "optimize";
    }
    return "?";
}

Protocol parse_protocol(const std::string &name) {
    for (Protocol p : {Protocol::Suppress, Protocol::Unsuppressed, Protocol::Communicate, Protocol::Teleport,
                       Protocol::Optimize}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw SpecParseError("unknown protocol '" + name + "'");
}

void SweepSpec::validate() const {
    if (cutoff < 2) {
        throw SpecParseError("cutoff must be at least 2");
    }
    if (protocol != Protocol::Teleport && !code) {
        throw SpecParseError(std::string(to_string(protocol)) + " needs --code");
    }
    if (sweep) {
        if (sweep->values().empty()) {
            throw SpecParseError("empty sweep range");
        }
        if (sweep->var == "alpha" && (!code || code->family != "cat")) {
            throw SpecParseError("an alpha sweep needs a cat code");
        }
        if (sweep->var == "eta" && protocol == Protocol::Teleport) {
            throw SpecParseError("teleport has no bosonic noise to sweep");
        }
        if (sweep->var == "eta" && noise.kind == "none") {
            throw SpecParseError("an eta sweep needs --noise");
        }
    }
    if (layers < 1 || starts < 1 || budget < 1) {
        throw SpecParseError("layers, starts and budget must be positive");
    }
}

namespace {

std::string format_number(double v, int precision = 15) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string sanitize(std::string msg) {
    for (char &c : msg) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') {
            c = ';';
        }
    }
    return msg;
}

// The concrete parameters of one grid point.
struct GridPoint {
    std::optional<CodeSpec> code;
    NoiseSpec noise;
    DvNoiseSpec dv;
    double sweep_value = 0.0;
};

struct PointOutput {
    std::vector<std::pair<std::string, std::pair<double, std::string>>> metrics;  // name -> (value, err)
    double defect = 0.0;
    int l_max = 0;
    int k_max = 0;
    int quadrature_order = 0;
};

std::vector<GridPoint> expand_grid(const SweepSpec &spec) {
    std::vector<GridPoint> grid;
    std::vector<double> values = spec.sweep ? spec.sweep->values() : std::vector<double>{0.0};
    for (double v : values) {
        GridPoint g{spec.code, spec.noise, spec.dv, v};
        if (spec.sweep) {
            if (spec.sweep->var == "eta") {
                g.noise.eta = v;
            } else if (spec.sweep->var == "p") {
                if (g.dv.kind == "none") {
                    g.dv.kind = "damp";
                }
                g.dv.strength = v;
            } else {
                g.code->params["alpha"] = v;
            }
        }
        grid.push_back(std::move(g));
    }
    return grid;
}

std::pair<double, std::string> not_applicable(const std::string &why) {
    return {std::nan(""), "error:not applicable (" + why + ")"};
}

std::string err(double e) {
    return format_number(e, 3);
}

// Closed forms assume no ancilla noise; like-parity codes are exactly insensitive to damping.
std::optional<std::string> closed_form_blocker(const SweepSpec &spec, const GridPoint &g, const BosonicCode &code) {
    if (spec.gate_noise) {
        return "gate noise";
    }
    bool dv_free = g.dv.kind == "none" || g.dv.strength == 0.0;
    bool like = code.parity() == ParityClass::LikeEven || code.parity() == ParityClass::LikeOdd;
    if (!dv_free && !(like && g.dv.kind == "damp")) {
        return "ancilla noise";
    }
    return std::nullopt;
}

std::string optimization_key(const GridPoint &g) {
    return g.code->to_string() + "|" + g.noise.to_string();
}

PointOutput evaluate_point(const SweepSpec &spec, const GridPoint &g,
                           const std::map<std::string, OptimizeResult> &optimized) {
    PointOutput out;
    FockSpace space(spec.cutoff);
    if (spec.protocol == Protocol::Teleport) {
        double p = g.dv.strength;
        double sim = teleportation_average_simulated(p);
        double closed = teleportation_baseline(p);
        out.metrics = {{"avg_fidelity", {sim, err(std::abs(sim - closed))}},
                       {"avg_success", {1.0, "0"}},
                       {"closed_form_fidelity", {closed, "0"}},
                       {"closed_form_success", {1.0, "0"}}};
        return out;
    }

    BosonicCode code = g.code->build(space);
    KrausChannel channel = g.noise.build(space);
    out.defect = channel.cptp_defect();
    out.l_max = channel.l_max();
    out.k_max = channel.k_max();
    bool thermal_family = g.noise.kind == "loss" || g.noise.kind == "thermal" || g.noise.kind == "none";
    double nbar = g.noise.kind == "thermal" ? g.noise.nbar : 0.0;
    double eta = g.noise.kind == "none" ? 0.0 : g.noise.eta;

    auto fidelity_metric = [&](const LogicalResponse &response) {
        SphereAverage avg = average_fidelity(response);
        out.quadrature_order = avg.order;
        return std::pair{avg.value, err(avg.error + response.defect)};
    };

    switch (spec.protocol) {
    case Protocol::Suppress:
    case Protocol::Optimize: {
        SuppressionConfig config = SuppressionConfig::for_code(code, spec.variant);
        config.dv_noise = g.dv.build();
        if (spec.gate_noise) {
            config.gate_noise = GateNoise{};
        }
        LogicalResponse response;
        std::optional<double> cf_value;
        if (spec.protocol == Protocol::Optimize) {
            const OptimizeResult &opt = optimized.at(optimization_key(g));
            SequenceEvaluator evaluator(code, channel, config.dv_noise, config.ancilla_init);
            response = evaluator.response(opt.best);
            cf_value = evaluator.average_fidelity(GateSequence::cf_point(opt.best.layers()));
        } else {
            response = LogicalResponse::from_map(code, suppression_map(channel, config), channel.cptp_defect());
        }
        out.metrics.push_back({"avg_fidelity", fidelity_metric(response)});
        out.metrics.push_back({"avg_success", {average_success(response), err(response.defect)}});
        std::optional<std::string> blocker = closed_form_blocker(spec, g, code);
        if (blocker) {
            out.metrics.push_back({"closed_form_fidelity", not_applicable(*blocker)});
            out.metrics.push_back({"closed_form_success", not_applicable(*blocker)});
        } else {
            if (thermal_family) {
                out.metrics.push_back({"closed_form_fidelity",
                                       {closed_form_fidelity_suppressed(code, eta, nbar), err(eta * eta * eta)}});
            } else {
                out.metrics.push_back({"closed_form_fidelity", not_applicable("second-order formula is for thermal noise")});
            }
            out.metrics.push_back({"closed_form_success",
                                   {closed_form_success_amp_loss(code, g.noise.gain(), g.noise.loss_rate()), "0"}});
        }
        if (cf_value) {
            out.metrics.push_back({"cf_avg_fidelity", {*cf_value, err(1e-8)}});
        }
        return out;
    }
    case Protocol::Unsuppressed: {
        LogicalResponse response = LogicalResponse::from_map(code, unsuppressed_map(channel), channel.cptp_defect());
        out.metrics.push_back({"avg_fidelity", fidelity_metric(response)});
        out.metrics.push_back({"avg_success", {average_success(response), err(response.defect)}});
        if (thermal_family) {
            out.metrics.push_back({"closed_form_fidelity",
                                   {closed_form_fidelity_unsuppressed(code, eta, nbar), err(eta * eta)}});
        } else {
            out.metrics.push_back({"closed_form_fidelity", not_applicable("first-order formula is for thermal noise")});
        }
        out.metrics.push_back({"closed_form_success", {1.0, "0"}});
        return out;
    }
    case Protocol::Communicate: {
        CommConfig config{g.dv.strength, spec.herald};
        if (g.dv.kind == "depol") {
            throw SpecParseError("communicate models composite damping on the shared pair only");
        }
        LogicalResponse response =
            LogicalResponse::from_map(code, communication_map(channel, config), channel.cptp_defect());
        out.metrics.push_back({"avg_fidelity", fidelity_metric(response)});
        out.metrics.push_back({"avg_success", {average_success(response), err(response.defect)}});
        out.metrics.push_back({"closed_form_fidelity", not_applicable("no closed form for the two-party fidelity")});
        double closed = spec.herald == Herald::Only00
                            ? closed_form_success_comm_00(code, g.noise.gain(), g.noise.loss_rate(), config.bell_noise)
                            : closed_form_success_comm_both(code, g.noise.gain(), g.noise.loss_rate(), config.bell_noise);
        out.metrics.push_back({"closed_form_success", {closed, "0"}});
        return out;
    }
    case Protocol::Teleport:
        break;
    }
    return out;
}

std::vector<std::string> metric_names(const SweepSpec &spec) {
    std::vector<std::string> names{"avg_fidelity", "avg_success", "closed_form_fidelity", "closed_form_success"};
    if (spec.protocol == Protocol::Optimize) {
        names.push_back("cf_avg_fidelity");
    }
    return names;
}

}  // namespace

int workers_from_env() {
    const char *env = std::getenv(kWorkersEnv);
    if (env != nullptr) {
        int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<SweepRecord> run_sweep_records(const SweepSpec &spec, SweepDiagnostics *diagnostics, int workers) {
    spec.validate();
    std::vector<GridPoint> grid = expand_grid(spec);

    std::map<std::string, OptimizeResult> optimized;
    SweepDiagnostics local;
    SweepDiagnostics &diag = diagnostics ? *diagnostics : local;
    if (spec.protocol == Protocol::Optimize) {
        // Calibrated optimization: known bosonic noise, no ancilla noise; each distinct setting once.
        for (const GridPoint &g : grid) {
            std::string key = optimization_key(g);
            if (optimized.count(key)) {
                continue;
            }
            FockSpace space(spec.cutoff);
            BosonicCode code = g.code->build(space);
            OptimizeOptions options;
            options.layers = spec.layers;
            options.starts = spec.starts;
            options.budget = spec.budget;
            options.seed = spec.seed;
            OptimizeResult r = optimize_sequence(code, g.noise.build(space), std::nullopt, options);
            diag.sequences.push_back(r.best.to_json());
            optimized.emplace(key, std::move(r));
        }
    }

    std::vector<std::optional<PointOutput>> outputs(grid.size());
    std::vector<std::string> failures(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                outputs[i] = evaluate_point(spec, grid[i], optimized);
            } catch (const std::exception &e) {
                failures[i] = e.what();
            }
        }
    };
    if (workers <= 0) {
        workers = workers_from_env();
    }
    workers = std::max(1, std::min<int>(workers, static_cast<int>(grid.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }

    std::vector<SweepRecord> records;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridPoint &g = grid[i];
        SweepRecord base;
        base.protocol = to_string(spec.protocol);
        base.code = g.code ? g.code->family : "none";
        if (g.code) {
            std::string params;
            for (const auto &[k, v] : g.code->params) {
                params += (params.empty() ? "" : ";") + k + "=" + format_number(v, 12);
            }
            base.code_params = params;
        }
        base.eta = g.noise.kind == "none" ? 0.0 : g.noise.eta;
        base.nbar = g.noise.kind == "thermal" ? g.noise.nbar : 0.0;
        base.p_dv = g.dv.strength;
        base.sweep_var = spec.sweep ? spec.sweep->var : "none";
        base.sweep_value = g.sweep_value;
        if (outputs[i]) {
            const PointOutput &o = *outputs[i];
            diag.max_cptp_defect = std::max(diag.max_cptp_defect, o.defect);
            diag.l_max = std::max(diag.l_max, o.l_max);
            diag.k_max = std::max(diag.k_max, o.k_max);
            diag.quadrature_orders.push_back(o.quadrature_order);
            for (const auto &[name, value] : o.metrics) {
                SweepRecord r = base;
                r.metric = name;
                r.value = value.first;
                r.err_est = value.second;
                records.push_back(std::move(r));
            }
        } else {
            ++diag.failed_points;
            diag.quadrature_orders.push_back(0);
            for (const std::string &name : metric_names(spec)) {
                SweepRecord r = base;
                r.metric = name;
                r.value = std::nan("");
                r.err_est = "error:" + sanitize(failures[i]);
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::string format_csv(const std::vector<SweepRecord> &records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const SweepRecord &r : records) {
        std::string err_est = r.err_est;
        if (std::isnan(r.value) && err_est.rfind("error:", 0) != 0) {
            err_est = "error:nan";
        }
        out += r.protocol + "," + r.code + "," + r.code_params + "," + format_number(r.eta, 12) + "," +
               format_number(r.nbar, 12) + "," + format_number(r.p_dv, 12) + "," + r.sweep_var + "," +
               format_number(r.sweep_value, 12) + "," + r.metric + "," + format_number(r.value) + "," + err_est + "\n";
    }
    return out;
}

std::string format_manifest(const SweepSpec &spec, const SweepDiagnostics &diag, double wall_seconds) {
    nlohmann::ordered_json doc;
    doc["tool"] = "cfsupp";
    doc["version"] = kToolVersion;
    doc["protocol"] = to_string(spec.protocol);
    doc["code"] = spec.code ? spec.code->to_string() : "none";
    doc["noise"] = spec.noise.to_string();
    doc["ancilla_noise"] = spec.dv.to_string();
    if (spec.sweep) {
        doc["sweep"] = {{"var", spec.sweep->var}, {"start", spec.sweep->start}, {"stop", spec.sweep->stop},
                        {"step", spec.sweep->step}};
    }
    doc["cutoff"] = spec.cutoff;
    doc["seed"] = spec.seed;
    doc["herald"] = spec.herald == Herald::Only00 ? "00" : "both";
    doc["variant"] = spec.variant == Variant::TwoCF ? "two-cf" : "local-rotation";
    doc["gate_noise"] = spec.gate_noise;
    doc["kraus_truncation"] = {{"l_max", diag.l_max}, {"k_max", diag.k_max}};
    doc["max_cptp_defect"] = diag.max_cptp_defect;
    doc["quadrature_orders"] = diag.quadrature_orders;
    doc["failed_points"] = diag.failed_points;
    if (spec.protocol == Protocol::Optimize) {
        doc["optimizer"] = {{"layers", spec.layers}, {"starts", spec.starts}, {"budget", spec.budget}};
        nlohmann::ordered_json seqs = nlohmann::ordered_json::array();
        for (const std::string &s : diag.sequences) {
            seqs.push_back(nlohmann::ordered_json::parse(s));
        }
        doc["sequences"] = seqs;
    }
    doc["wall_time_s"] = wall_seconds;
    return doc.dump(2) + "\n";
}

int run_sweep(const SweepSpec &spec) {
    auto start = std::chrono::steady_clock::now();
    SweepDiagnostics diag;
    std::vector<SweepRecord> records = run_sweep_records(spec, &diag);
    std::string csv = format_csv(records);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (spec.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream file(spec.out, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot write " + spec.out);
        }
        file << csv;
        std::ofstream manifest(spec.out + ".manifest.json", std::ios::binary);
        manifest << format_manifest(spec, diag, wall);
    }
    return diag.failed_points;
}

}  // namespace cfs
