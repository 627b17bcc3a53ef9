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

#include "cfs/specifiers.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace cfs {

namespace {

std::string trim(const std::string &s) {
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
}

double parse_number(const std::string &text, const std::string &context) {
    std::string t = trim(text);
    double value = 0.0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(value)) {
        throw SpecParseError(context + ": '" + text + "' is not a number");
    }
    return value;
}

void require_keys(const ParsedSpec &spec, const std::set<std::string> &required, const std::set<std::string> &allowed,
                  const std::string &text) {
    for (const auto &[key, value] : spec.params) {
        if (!allowed.count(key)) {
            throw SpecParseError("'" + text + "': unknown parameter '" + key + "' for " + spec.kind);
        }
    }
    for (const std::string &key : required) {
        if (!spec.params.count(key)) {
            throw SpecParseError("'" + text + "': missing parameter '" + key + "'");
        }
    }
}

int as_int(double v, const std::string &what) {
    if (v != std::floor(v)) {
        throw SpecParseError(what + " must be an integer");
    }
    return static_cast<int>(v);
}

std::string format(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

}  // namespace

ParsedSpec parse_spec(const std::string &text) {
    ParsedSpec spec;
    std::string t = trim(text);
    auto colon = t.find(':');
    spec.kind = trim(t.substr(0, colon));
    if (spec.kind.empty()) {
        throw SpecParseError("'" + text + "': missing kind before ':'");
    }
    if (colon == std::string::npos) {
        return spec;
    }
    std::stringstream rest(t.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw SpecParseError("'" + text + "': expected key=value, got '" + item + "'");
        }
        std::string key = trim(item.substr(0, eq));
        if (key.empty() || spec.params.count(key)) {
            throw SpecParseError("'" + text + "': empty or repeated key");
        }
        spec.params[key] = parse_number(item.substr(eq + 1), "'" + text + "'");
    }
    return spec;
}

CodeSpec parse_code_spec(const std::string &text) {
    ParsedSpec spec = parse_spec(text);
    if (spec.kind == "cat") {
        require_keys(spec, {"n", "alpha"}, {"n", "alpha"}, text);
        as_int(spec.params["n"], "cat n");
    } else if (spec.kind == "bin") {
        require_keys(spec, {"n", "kappa"}, {"n", "kappa"}, text);
        as_int(spec.params["n"], "bin n");
        as_int(spec.params["kappa"], "bin kappa");
    } else if (spec.kind == "gkp") {
        require_keys(spec, {}, {"delta"}, text);
        if (!spec.params.count("delta")) {
            spec.params["delta"] = 0.3;
        }
    } else {
        throw SpecParseError("'" + text + "': unknown code family '" + spec.kind + "' (cat, bin, gkp)");
    }
    return {spec.kind, spec.params};
}

BosonicCode CodeSpec::build(FockSpace space) const {
    if (family == "cat") {
        return cat_code(static_cast<int>(params.at("n")), params.at("alpha"), space);
    }
    if (family == "bin") {
        return binomial_code(static_cast<int>(params.at("n")), static_cast<int>(params.at("kappa")), space);
    }
    return gkp_code(params.at("delta"), space);
}

std::string CodeSpec::to_string() const {
    std::string out = family + ":";
    bool first = true;
    for (const auto &[key, value] : params) {
        out += (first ? "" : ",") + key + "=" + format(value);
        first = false;
    }
    return out;
}

NoiseSpec parse_noise_spec(const std::string &text) {
    ParsedSpec spec = parse_spec(text);
    NoiseSpec noise;
    noise.kind = spec.kind;
    if (spec.kind == "none") {
        require_keys(spec, {}, {}, text);
        return noise;
    }
    if (spec.kind == "loss" || spec.kind == "gdn") {
        require_keys(spec, {"eta"}, {"eta"}, text);
    } else if (spec.kind == "thermal") {
        require_keys(spec, {"eta", "nbar"}, {"eta", "nbar"}, text);
        noise.nbar = spec.params["nbar"];
    } else {
        throw SpecParseError("'" + text + "': unknown noise '" + spec.kind + "' (loss, thermal, gdn, none)");
    }
    noise.eta = spec.params["eta"];
    if (!(noise.eta >= 0.0 && noise.eta < 1.0) || noise.nbar < 0.0) {
        throw SpecParseError("'" + text + "': need 0 <= eta < 1 and nbar >= 0");
    }
    return noise;
}

double NoiseSpec::gain() const {
    if (kind == "thermal") {
        return ThermalParams{eta, nbar}.gain();
    }
    if (kind == "gdn") {
        return 1.0 / eta;
    }
    return 1.0;
}

double NoiseSpec::loss_rate() const {
    if (kind == "thermal") {
        return ThermalParams{eta, nbar}.loss_rate();
    }
    if (kind == "loss" || kind == "gdn") {
        return eta;
    }
    return 0.0;
}

KrausChannel NoiseSpec::build(FockSpace space, const TruncationPolicy &policy) const {
    if (kind == "gdn") {
        return gdn_channel(eta, space, policy);
    }
    return amp_after_loss_channel(gain(), loss_rate(), space, policy);
}

std::string NoiseSpec::to_string() const {
    if (kind == "none") {
        return kind;
    }
    std::string out = kind + ":eta=" + format(eta);
    if (kind == "thermal") {
        out += ",nbar=" + format(nbar);
    }
    return out;
}

DvNoiseSpec parse_dv_noise_spec(const std::string &text) {
    ParsedSpec spec = parse_spec(text);
    DvNoiseSpec dv;
    dv.kind = spec.kind;
    if (spec.kind == "none") {
        require_keys(spec, {}, {}, text);
        return dv;
    }
    if (spec.kind == "damp") {
        require_keys(spec, {"p"}, {"p"}, text);
        dv.strength = spec.params["p"];
    } else if (spec.kind == "depol") {
        require_keys(spec, {"eta"}, {"eta"}, text);
        dv.strength = spec.params["eta"];
    } else {
        throw SpecParseError("'" + text + "': unknown ancilla noise '" + spec.kind + "' (damp, depol, none)");
    }
    if (!(dv.strength >= 0.0 && dv.strength <= 1.0)) {
        throw SpecParseError("'" + text + "': strength must lie in [0, 1]");
    }
    return dv;
}

std::optional<KrausChannel> DvNoiseSpec::build() const {
    if (kind == "none" || strength == 0.0) {
        return std::nullopt;
    }
    if (kind == "damp") {
        return qubit_damping(strength, DampingKind::Composite);
    }
    return depolarizing(strength);
}

std::string DvNoiseSpec::to_string() const {
    if (kind == "none") {
        return kind;
    }
    return kind + (kind == "damp" ? ":p=" : ":eta=") + format(strength);
}

SweepRange parse_sweep(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 4) {
        throw SpecParseError("'" + text + "': expected var:start:stop:step");
    }
    SweepRange range;
    range.var = trim(parts[0]);
    if (range.var != "p" && range.var != "eta" && range.var != "alpha") {
        throw SpecParseError("'" + text + "': sweep variable must be p, eta or alpha");
    }
    range.start = parse_number(parts[1], "sweep start");
    range.stop = parse_number(parts[2], "sweep stop");
    range.step = parse_number(parts[3], "sweep step");
    if (!(range.step > 0.0)) {
        throw SpecParseError("'" + text + "': step must be positive");
    }
    if (range.stop < range.start) {
        throw SpecParseError("'" + text + "': empty range");
    }
    return range;
}

std::vector<double> SweepRange::values() const {
    // Small slack so that e.g. 0:0.3:0.05 includes 0.3 despite rounding.
    auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (long i = 0; i < count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

}  // namespace cfs
