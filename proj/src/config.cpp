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

#include "tqme/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tqme {

using nlohmann::json;

namespace {

Operator matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ConfigParse("matrix: expected nonempty array of rows");
    const int n = static_cast<int>(j.size());
    Operator A(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ConfigParse("matrix: ragged rows");
        for (int k = 0; k < n; ++k) {
            const json& e = row[static_cast<size_t>(k)];
            if (!e.is_array() || e.size() != 2) throw ConfigParse("matrix: entries are [re, im]");
            A(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return A;
}

json matrix_to_json(const Operator& A) {
    json rows = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < A.dim(); ++k)
            row.push_back(json::array({A(i, k).real(), A(i, k).imag()}));
        rows.push_back(row);
    }
    return rows;
}

std::vector<cplx> vector_from_json(const json& j) {
    std::vector<cplx> v;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ConfigParse("vector: entries are [re, im]");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (v.empty()) throw ConfigParse("vector: empty");
    return v;
}

AlphaPolicy policy_from_json(const json& run) {
    AlphaPolicy policy;
    const std::string s = run.value("alpha_policy", "exact");
    if (s == "exact") {
        policy.kind = AlphaPolicyKind::Exact;
    } else if (s == "approximate") {
        policy.kind = AlphaPolicyKind::Approximate;
    } else if (s == "fixed") {
        policy.kind = AlphaPolicyKind::Fixed;
        if (!run.contains("alpha_fixed")) throw ConfigParse("alpha_policy fixed needs alpha_fixed");
        policy.fixed_value = run["alpha_fixed"].get<double>();
        if (policy.fixed_value <= 0.0) throw ConfigParse("alpha_fixed must be > 0");
    } else {
        throw ConfigParse("alpha_policy: expected exact | approximate | fixed");
    }
    return policy;
}

}  // namespace

SimConfig SimConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigParse(std::string("config: invalid JSON: ") + e.what());
    }
    SimConfig cfg;
    try {
        if (j.contains("model")) {
            const json& m = j["model"];
            cfg.model_name = m.value("name", cfg.model_name);
            cfg.model_dim = m.value("dim", cfg.model_dim);
            cfg.omega = m.value("omega", cfg.omega);
            cfg.mass = m.value("mass", cfg.mass);
            if (m.contains("H")) cfg.custom_H = matrix_from_json(m["H"]);
            if (m.contains("Q")) cfg.custom_Q = matrix_from_json(m["Q"]);
        }
        if (j.contains("env")) {
            const json& e = j["env"];
            cfg.c_hh = e.value("c_hh", cfg.c_hh);
            cfg.equilibrium = e.value("equilibrium", cfg.equilibrium);
            if (e.contains("T_e")) cfg.T_e = e["T_e"].get<double>();
            if (e.contains("hbar")) cfg.consts.hbar = e["hbar"].get<double>();
            if (e.contains("k_B")) cfg.consts.k_B = e["k_B"].get<double>();
            if (cfg.equilibrium) {
                if (!cfg.T_e || *cfg.T_e <= 0.0)
                    throw ConfigParse("env: equilibrium requires T_e > 0");
                const double derived = cfg.c_hh / *cfg.T_e;
                if (e.contains("c_hs")) {
                    cfg.c_hs = e["c_hs"].get<double>();
                    if (std::abs(*cfg.T_e * cfg.c_hs - cfg.c_hh) > 1e-12 * std::max(1.0, cfg.c_hh))
                        throw ConfigParse("env: equilibrium requires T_e * c_hs = c_hh");
                } else {
                    cfg.c_hs = derived;
                }
            } else {
                cfg.c_hs = e.value("c_hs", cfg.c_hs);
            }
        }
        if (j.contains("run")) {
            const json& r = j["run"];
            cfg.dt = r.value("dt", cfg.dt);
            cfg.t_end = r.value("t_end", cfg.t_end);
            cfg.record_every = r.value("record_every", cfg.record_every);
            cfg.ensemble_size = r.value("ensemble_size", cfg.ensemble_size);
            cfg.seed = r.value("seed", cfg.seed);
            cfg.alpha_policy = policy_from_json(r);
            cfg.eps_floor = r.value("eps_floor", cfg.eps_floor);
            cfg.degeneracy_tol = r.value("degeneracy_tol", cfg.degeneracy_tol);
            cfg.threads = r.value("threads", cfg.threads);
        }
        if (j.contains("initial")) {
            const json& in = j["initial"];
            cfg.initial_type = in.value("type", cfg.initial_type);
            cfg.initial_level = in.value("level", cfg.initial_level);
            if (in.contains("state")) cfg.initial_state = vector_from_json(in["state"]);
        }
        if (j.contains("output")) {
            const json& o = j["output"];
            cfg.output_path = o.value("path", cfg.output_path);
            cfg.output_format = o.value("format", cfg.output_format);
            if (o.contains("observables"))
                cfg.observables = o["observables"].get<std::vector<std::string>>();
        }
    } catch (const json::exception& e) {
        throw ConfigParse(std::string("config: ") + e.what());
    }

    if (cfg.dt <= 0.0) throw ConfigParse("run.dt must be > 0");
    if (cfg.t_end < 0.0) throw ConfigParse("run.t_end must be >= 0");
    if (cfg.record_every < 1) throw ConfigParse("run.record_every must be >= 1");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ConfigParse("output.format must be csv or json");
    if (cfg.c_hh < 0.0) throw ConfigParse("env.c_hh must be >= 0");
    return cfg;
}

SimConfig SimConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParse("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string SimConfig::to_json_text() const {
    json j;
    json m;
    m["name"] = model_name;
    m["dim"] = model_dim;
    m["omega"] = omega;
    m["mass"] = mass;
    if (custom_H) m["H"] = matrix_to_json(*custom_H);
    if (custom_Q) m["Q"] = matrix_to_json(*custom_Q);
    j["model"] = m;

    json e;
    e["c_hh"] = c_hh;
    e["c_hs"] = c_hs;
    if (T_e) e["T_e"] = *T_e;
    e["equilibrium"] = equilibrium;
    e["hbar"] = consts.hbar;
    e["k_B"] = consts.k_B;
    j["env"] = e;

    json r;
    r["dt"] = dt;
    r["t_end"] = t_end;
    r["record_every"] = record_every;
    r["ensemble_size"] = ensemble_size;
    r["seed"] = seed;
    switch (alpha_policy.kind) {
        case AlphaPolicyKind::Exact: r["alpha_policy"] = "exact"; break;
        case AlphaPolicyKind::Approximate: r["alpha_policy"] = "approximate"; break;
        case AlphaPolicyKind::Fixed:
            r["alpha_policy"] = "fixed";
            r["alpha_fixed"] = alpha_policy.fixed_value;
            break;
    }
    r["eps_floor"] = eps_floor;
    r["degeneracy_tol"] = degeneracy_tol;
    r["threads"] = threads;
    j["run"] = r;

    json in;
    in["type"] = initial_type;
    in["level"] = initial_level;
    if (initial_state) {
        json v = json::array();
        for (const auto& a : *initial_state) v.push_back(json::array({a.real(), a.imag()}));
        in["state"] = v;
    }
    j["initial"] = in;

    json o;
    o["path"] = output_path;
    o["format"] = output_format;
    o["observables"] = observables;
    j["output"] = o;

    return j.dump(2);
}

ModelSpec SimConfig::build_model() const {
    if (model_name == "two-level") return two_level(omega, consts);
    if (model_name == "oscillator") return harmonic_oscillator(model_dim, omega, mass, consts);
    if (model_name == "custom") {
        if (!custom_H || !custom_Q) throw ConfigParse("custom model needs H and Q matrices");
        ModelSpec model;
        model.H = *custom_H;
        model.Q = *custom_Q;
        model.dim = custom_H->dim();
        model.name = "custom";
        model.validate();
        return model;
    }
    throw ConfigParse("model.name must be two-level | oscillator | custom");
}

EnvironmentSpec SimConfig::build_env() const {
    EnvironmentSpec env;
    env.c_hh = c_hh;
    env.c_hs = c_hs;
    env.T_e = T_e.value_or(0.0);
    env.equilibrium = equilibrium;
    env.consts = consts;
    env.validate();
    return env;
}

namespace {

// Energy eigenstate, levels counted in ascending energy order.
StateVector energy_eigenstate(const ModelSpec& model, int level) {
    if (level < 0 || level >= model.dim) throw ConfigParse("initial.level out of range");
    const Spectrum s = hermitian_eig(model.H, 1e-10);
    StateVector psi(model.dim);
    for (int i = 0; i < model.dim; ++i)
        psi.amp[static_cast<size_t>(i)] = s.eigenvectors(i, level);
    return psi;
}

}  // namespace

DensityMatrix SimConfig::build_initial_density(const ModelSpec& model) const {
    if (initial_type == "gibbs") {
        if (!T_e || *T_e <= 0.0) throw ConfigParse("initial gibbs requires env.T_e > 0");
        return gibbs_state(model.H, *T_e, consts);
    }
    if (initial_type == "ground") return DensityMatrix::pure(energy_eigenstate(model, 0));
    if (initial_type == "excited")
        return DensityMatrix::pure(energy_eigenstate(model, initial_level));
    if (initial_type == "pure") {
        if (!initial_state) throw ConfigParse("initial pure requires a state vector");
        if (static_cast<int>(initial_state->size()) != model.dim)
            throw ConfigParse("initial.state dimension mismatch");
        StateVector psi(model.dim);
        psi.amp = *initial_state;
        return DensityMatrix::pure(psi);
    }
    throw ConfigParse("initial.type must be ground | excited | gibbs | pure");
}

Ensemble SimConfig::build_initial_ensemble(const ModelSpec& model, uint64_t seed_override) const {
    if (initial_type == "gibbs")
        return Ensemble::from_density(build_initial_density(model), ensemble_size, seed_override);
    if (initial_type == "ground")
        return Ensemble::from_pure(energy_eigenstate(model, 0), ensemble_size, seed_override);
    if (initial_type == "excited")
        return Ensemble::from_pure(energy_eigenstate(model, initial_level), ensemble_size,
                                   seed_override);
    if (initial_type == "pure") {
        if (!initial_state) throw ConfigParse("initial pure requires a state vector");
        StateVector psi(model.dim);
        if (static_cast<int>(initial_state->size()) != model.dim)
            throw ConfigParse("initial.state dimension mismatch");
        psi.amp = *initial_state;
        return Ensemble::from_pure(psi, ensemble_size, seed_override);
    }
    throw ConfigParse("initial.type must be ground | excited | gibbs | pure");
}

UnravelConfig SimConfig::build_unravel_config() const {
    UnravelConfig uc;
    uc.dt = dt;
    uc.t_end = t_end;
    uc.record_every = record_every;
    uc.alpha_policy = alpha_policy;
    uc.eps_floor = eps_floor;
    uc.degeneracy_tol = degeneracy_tol;
    uc.threads = threads;
    return uc;
}

void write_timeseries(const TimeSeries& series, const std::string& format,
                      const std::string& path) {
    if (format == "csv") {
        std::ofstream out(path);
        if (!out) throw IoError("write_timeseries: cannot open " + path);
        out << "time";
        for (const auto& c : series.columns) out << "," << c;
        out << "\n";
        char buf[64];
        for (size_t i = 0; i < series.times.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.12g", series.times[i]);
            out << buf;
            for (double v : series.rows[i]) {
                std::snprintf(buf, sizeof(buf), "%.12g", v);
                out << "," << buf;
            }
            out << "\n";
        }
        if (!out) throw IoError("write_timeseries: write failed for " + path);
        return;
    }
    if (format == "json") {
        json arr = json::array();
        for (size_t i = 0; i < series.times.size(); ++i) {
            json rec;
            rec["time"] = series.times[i];
            for (size_t k = 0; k < series.columns.size(); ++k)
                rec[series.columns[k]] = series.rows[i][k];
            arr.push_back(rec);
        }
        std::ofstream out(path);
        if (!out) throw IoError("write_timeseries: cannot open " + path);
        out << arr.dump(2) << "\n";
        if (!out) throw IoError("write_timeseries: write failed for " + path);
        return;
    }
    throw ConfigParse("write_timeseries: format must be csv or json");
}

double evaluate_observable(const std::string& name, const DensityMatrix& rho,
                           const ModelSpec& model, double raw_trace, double alpha, double gamma,
                           double jumps, std::optional<double> dist_to_oracle) {
    if (name == "energy") return expectation(model.H, rho).real();
    if (name == "purity") return purity(rho);
    if (name == "trace_raw") return raw_trace;
    if (name == "alpha") return alpha;
    if (name == "gamma") return gamma;
    if (name == "jumps") return jumps;
    if (name == "trace_distance_to_oracle") {
        if (!dist_to_oracle) throw ConfigParse("trace_distance_to_oracle only valid in compare runs");
        return *dist_to_oracle;
    }
    if (name.rfind("population_", 0) == 0) {
        const int level = std::stoi(name.substr(11));
        if (level < 0 || level >= model.dim) throw ConfigParse("population level out of range");
        return rho.op()(level, level).real();
    }
    throw ConfigParse("unknown observable: " + name);
}

}  // namespace tqme
