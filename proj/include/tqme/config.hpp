// Copyright 2026 The tqme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqme/models.hpp"
#include "tqme/unravel.hpp"

namespace tqme {

/// Experiment configuration, loaded from a single JSON document. Matrices
/// are nested arrays of [re, im] pairs.
struct SimConfig {
    // model
    std::string model_name = "two-level";
    int model_dim = 2;
    double omega = 1.0;
    double mass = 1.0;
    std::optional<Operator> custom_H;
    std::optional<Operator> custom_Q;

    // environment
    double c_hh = 0.0;
    double c_hs = 0.0;
    std::optional<double> T_e;
    bool equilibrium = false;
    PhysicalConstants consts;

    // run
    double dt = 1e-3;
    double t_end = 1.0;
    int record_every = 10;
    int ensemble_size = 1000;
    uint64_t seed = 1;
    AlphaPolicy alpha_policy;
    double eps_floor = 0.0;
    double degeneracy_tol = 1e-12;
    int threads = 1;

    // initial state: "ground", "excited" (basis level), "gibbs", or "pure"
    // with an explicit vector
    std::string initial_type = "ground";
    int initial_level = 0;
    std::optional<std::vector<cplx>> initial_state;

    // output
    std::string output_path = "out.csv";
    std::string output_format = "csv";
    std::vector<std::string> observables = {"energy", "purity", "trace_raw"};

    static SimConfig from_json_text(const std::string& text);
    static SimConfig from_file(const std::string& path);
    std::string to_json_text() const;

    ModelSpec build_model() const;
    EnvironmentSpec build_env() const;
    DensityMatrix build_initial_density(const ModelSpec& model) const;
    Ensemble build_initial_ensemble(const ModelSpec& model, uint64_t seed_override) const;
    UnravelConfig build_unravel_config() const;
};

struct TimeSeries {
    std::vector<std::string> columns;          // excludes the leading "time"
    std::vector<double> times;
    std::vector<std::vector<double>> rows;     // rows[i] aligned with columns
};

/// CSV: header "time,<columns...>", 12 significant digits. JSON: an array of
/// objects with identical field names; values round-trip bit-exactly.
void write_timeseries(const TimeSeries& series, const std::string& format,
                      const std::string& path);

/// Observable evaluation shared by the oracle and unraveling drivers.
/// Supported names: energy, purity, trace_raw, trace_distance_to_oracle,
/// alpha, gamma, jumps, population_<n>.
double evaluate_observable(const std::string& name, const DensityMatrix& rho,
                           const ModelSpec& model, double raw_trace, double alpha, double gamma,
                           double jumps, std::optional<double> dist_to_oracle);

}  // namespace tqme
