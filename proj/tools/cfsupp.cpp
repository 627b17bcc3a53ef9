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

// cfsupp: parameter sweeps for conditional-Fourier noise suppression.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfs/sweep.hpp"

namespace {

struct RawOptions {
    std::string code;
    std::string noise = "none";
    std::string dv = "none";
    std::string sweep;
    int cutoff = 60;
    std::uint64_t seed = 1;
    std::string out;
    std::string config;
    std::string herald = "both";
    std::string variant = "two-cf";
    bool gate_noise = false;
    int layers = 1;
    int starts = 8;
    int budget = 2000;
};

// Fill every option the command line left unset from the config file.
void apply_config(CLI::App &sub, RawOptions &raw) {
    if (raw.config.empty()) {
        return;
    }
    std::ifstream file(raw.config);
    if (!file) {
        throw cfs::SpecParseError("cannot read config file " + raw.config);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception &e) {
        throw cfs::SpecParseError("config file: " + std::string(e.what()));
    }
    if (!doc.is_object()) {
        throw cfs::SpecParseError("config file must hold an object");
    }
    static const std::set<std::string> known{"code",  "noise",   "dv",         "sweep",  "cutoff", "seeds", "out",
                                             "herald", "variant", "gate-noise", "layers", "starts", "budget"};
    try {
        for (const auto &[key, value] : doc.items()) {
            if (!known.contains(key)) {
                throw cfs::SpecParseError("unknown config key '" + key + "'");
            }
            if (sub.count("--" + key) != 0) {
                continue;
            }
            if (key == "code") {
                raw.code = value.get<std::string>();
            } else if (key == "noise") {
                raw.noise = value.get<std::string>();
            } else if (key == "dv") {
                raw.dv = value.get<std::string>();
            } else if (key == "sweep") {
                raw.sweep = value.get<std::string>();
            } else if (key == "cutoff") {
                raw.cutoff = value.get<int>();
            } else if (key == "seeds") {
                raw.seed = value.get<std::uint64_t>();
            } else if (key == "out") {
                raw.out = value.get<std::string>();
            } else if (key == "herald") {
                raw.herald = value.get<std::string>();
            } else if (key == "variant") {
                raw.variant = value.get<std::string>();
            } else if (key == "gate-noise") {
                raw.gate_noise = value.get<bool>();
            } else if (key == "layers") {
                raw.layers = value.get<int>();
            } else if (key == "starts") {
                raw.starts = value.get<int>();
            } else if (key == "budget") {
                raw.budget = value.get<int>();
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw cfs::SpecParseError("config file: " + std::string(e.what()));
    }
}

cfs::SweepSpec build_spec(cfs::Protocol protocol, const RawOptions &raw) {
    cfs::SweepSpec spec;
    spec.protocol = protocol;
    if (!raw.code.empty()) {
        spec.code = cfs::parse_code_spec(raw.code);
    }
    spec.noise = cfs::parse_noise_spec(raw.noise);
    spec.dv = cfs::parse_dv_noise_spec(raw.dv);
    if (!raw.sweep.empty()) {
        spec.sweep = cfs::parse_sweep(raw.sweep);
    }
    spec.cutoff = raw.cutoff;
    spec.seed = raw.seed;
    spec.out = raw.out;
    if (raw.herald == "both") {
        spec.herald = cfs::Herald::Both00And11;
    } else if (raw.herald == "00") {
        spec.herald = cfs::Herald::Only00;
    } else {
        throw cfs::SpecParseError("herald must be 'both' or '00'");
    }
    if (raw.variant == "two-cf") {
        spec.variant = cfs::Variant::TwoCF;
    } else if (raw.variant == "local-rotation") {
        spec.variant = cfs::Variant::LocalRotationPlusOneCF;
    } else {
        throw cfs::SpecParseError("variant must be 'two-cf' or 'local-rotation'");
    }
    spec.gate_noise = raw.gate_noise;
    spec.layers = raw.layers;
    spec.starts = raw.starts;
    spec.budget = raw.budget;
    spec.validate();
    return spec;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Conditional-Fourier noise suppression sweeps"};
    app.set_version_flag("--version", cfs::kToolVersion);
    app.require_subcommand(1);

    RawOptions raw;
    std::vector<std::pair<CLI::App *, cfs::Protocol>> subs;
    for (cfs::Protocol p : {cfs::Protocol::Suppress, cfs::Protocol::Unsuppressed, cfs::Protocol::Communicate,
                            cfs::Protocol::Teleport, cfs::Protocol::Optimize}) {
        CLI::App *sub = app.add_subcommand(cfs::to_string(p));
        sub->add_option("--code", raw.code, "code, e.g. bin:n=2,kappa=4");
        sub->add_option("--noise", raw.noise, "bosonic noise, e.g. thermal:eta=0.05,nbar=0.5");
        sub->add_option("--dv", raw.dv, "ancilla or shared-pair noise, e.g. damp:p=0.1");
        sub->add_option("--sweep", raw.sweep, "var:start:stop:step with var in p, eta, alpha");
        sub->add_option("--cutoff", raw.cutoff, "Fock cutoff N");
        sub->add_option("--seeds", raw.seed, "random seed");
        sub->add_option("--out", raw.out, "CSV path (stdout when omitted)");
        sub->add_option("--config", raw.config, "JSON file with the same keys; flags take precedence");
        sub->add_option("--herald", raw.herald, "communicate herald: both or 00");
        sub->add_option("--variant", raw.variant, "suppress variant: two-cf or local-rotation");
        sub->add_flag("--gate-noise", raw.gate_noise, "1% loss and damping after each conditional gate");
        sub->add_option("--layers", raw.layers, "optimize: layers per half");
        sub->add_option("--starts", raw.starts, "optimize: simplex starts");
        sub->add_option("--budget", raw.budget, "optimize: evaluations per start");
        subs.emplace_back(sub, p);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    for (auto &[sub, protocol] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        try {
            apply_config(*sub, raw);
            cfs::SweepSpec spec = build_spec(protocol, raw);
            int failed = cfs::run_sweep(spec);
            if (failed > 0) {
                std::cerr << "cfsupp: " << failed << " grid point(s) failed; see err_est\n";
                return 3;
            }
            return 0;
        } catch (const cfs::SpecParseError &e) {
            std::cerr << "cfsupp: " << e.what() << "\n";
            return 2;
        } catch (const std::exception &e) {
            std::cerr << "cfsupp: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
