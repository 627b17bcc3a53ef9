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
#include <string>
#include <vector>

#include "cfs/communication.hpp"
#include "cfs/optimize.hpp"
#include "cfs/specifiers.hpp"

namespace cfs {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kWorkersEnv = "CFSUPP_WORKERS";

enum class Protocol { Suppress, Unsuppressed, Communicate, Teleport, Optimize };

const char *to_string(Protocol protocol);
Protocol parse_protocol(const std::string &name);

struct SweepSpec {
    Protocol protocol = Protocol::Suppress;
    std::optional<CodeSpec> code;
    NoiseSpec noise;
    DvNoiseSpec dv;
    std::optional<SweepRange> sweep;
    int cutoff = 60;
    std::uint64_t seed = 1;
    Herald herald = Herald::Both00And11;
    Variant variant = Variant::TwoCF;
    bool gate_noise = false;
    int layers = 1;
    int starts = 8;
    int budget = 2000;
    std::string out;  // CSV path; empty means stdout

    /// Throws SpecParseError for inconsistent combinations.
    void validate() const;
};

/// One long-format CSV row.
struct SweepRecord {
    std::string protocol;
    std::string code;
    std::string code_params;
    double eta = 0.0;
    double nbar = 0.0;
    double p_dv = 0.0;
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string metric;
    double value = 0.0;
    std::string err_est;  // a number, or "error:<message>" when value is nan
};

/// Bookkeeping for the manifest written next to the CSV.
struct SweepDiagnostics {
    double max_cptp_defect = 0.0;
    int l_max = 0;
    int k_max = 0;
    std::vector<int> quadrature_orders;
    int failed_points = 0;
    std::vector<std::string> sequences;  // optimized sequences as JSON, one per optimization
};

inline constexpr const char *kCsvHeader = "protocol,code,code_params,eta,nbar,p_dv,sweep_var,sweep_value,metric,value,err_est";

/// Evaluates every grid point (in parallel when allowed) and returns rows in grid order.
std::vector<SweepRecord> run_sweep_records(const SweepSpec &spec, SweepDiagnostics *diagnostics = nullptr,
                                           int workers = 0);

std::string format_csv(const std::vector<SweepRecord> &records);

/// Manifest as JSON text.
std::string format_manifest(const SweepSpec &spec, const SweepDiagnostics &diagnostics, double wall_seconds);

/// Worker count from the environment, defaulting to the hardware concurrency.
int workers_from_env();

/// Runs the sweep and writes the CSV plus `<out>.manifest.json`. Returns the number of failed grid points.
int run_sweep(const SweepSpec &spec);

}  // namespace cfs
