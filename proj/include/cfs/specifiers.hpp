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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfs/channels.hpp"
#include "cfs/codes.hpp"

namespace cfs {

class SpecParseError : public std::invalid_argument {
  public:
    explicit SpecParseError(const std::string &what) : std::invalid_argument(what) {
    }
};

/// `family:key=value,key=value`.
struct ParsedSpec {
    std::string kind;
    std::map<std::string, double> params;
};

ParsedSpec parse_spec(const std::string &text);

/// `cat:n=6,alpha=1.916`, `bin:n=2,kappa=4`, `gkp:delta=0.3`.
struct CodeSpec {
    std::string family;
    std::map<std::string, double> params;

    BosonicCode build(FockSpace space) const;
    std::string to_string() const;
};

CodeSpec parse_code_spec(const std::string &text);

/// `loss:eta=0.05`, `thermal:eta=0.05,nbar=0.5`, `gdn:eta=0.05`, or `none`.
struct NoiseSpec {
    std::string kind = "none";
    double eta = 0.0;
    double nbar = 0.0;

    KrausChannel build(FockSpace space, const TruncationPolicy &policy = {}) const;
    /// Loss rate and gain of the amplifier-after-loss decomposition.
    double gain() const;
    double loss_rate() const;
    std::string to_string() const;
};

NoiseSpec parse_noise_spec(const std::string &text);

/// `damp:p=0.1`, `depol:eta=0.1`, or `none`.
struct DvNoiseSpec {
    std::string kind = "none";
    double strength = 0.0;

    /// Empty for `none` and for zero strength.
    std::optional<KrausChannel> build() const;
    std::string to_string() const;
};

DvNoiseSpec parse_dv_noise_spec(const std::string &text);

/// `var:start:stop:step` with var in {p, eta, alpha}.
struct SweepRange {
    std::string var;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

SweepRange parse_sweep(const std::string &text);

}  // namespace cfs
