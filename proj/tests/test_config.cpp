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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tqme/config.hpp"

using namespace tqme;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tqme_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("SimConfig: load, defaults, round-trip") {
    const std::string text = R"({
        "model": {"name": "oscillator", "dim": 10},
        "env": {"c_hh": 0.25, "T_e": 1.0, "equilibrium": true},
        "run": {"dt": 0.001, "t_end": 2.0, "ensemble_size": 100, "seed": 7,
                "alpha_policy": "exact"},
        "initial": {"type": "excited", "level": 1},
        "output": {"path": "x.csv", "format": "csv",
                   "observables": ["energy", "purity", "population_0"]}
    })";
    const SimConfig cfg = SimConfig::from_json_text(text);
    CHECK(cfg.model_name == "oscillator");
    CHECK(cfg.c_hs == doctest::Approx(0.25).epsilon(1e-15));  // derived from equilibrium
    CHECK(cfg.seed == 7);

    const std::string serialized = cfg.to_json_text();
    const SimConfig again = SimConfig::from_json_text(serialized);
    CHECK(again.to_json_text() == serialized);
}

TEST_CASE("SimConfig: errors") {
    CHECK_THROWS_AS(SimConfig::from_json_text("{not json"), ConfigParse);
    CHECK_THROWS_AS(SimConfig::from_json_text(R"({"run": {"dt": -1}})"), ConfigParse);
    CHECK_THROWS_AS(SimConfig::from_json_text(
                        R"({"env": {"c_hh": 1.0, "c_hs": 0.3, "T_e": 1.0, "equilibrium": true}})"),
                    ConfigParse);
    CHECK_THROWS_AS(SimConfig::from_json_text(R"({"output": {"format": "xml"}})"), ConfigParse);
}

TEST_CASE("SimConfig: custom model matrices") {
    const std::string text = R"({
        "model": {"name": "custom",
                  "H": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]],
                  "Q": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}
    })";
    const ModelSpec model = SimConfig::from_json_text(text).build_model();
    CHECK(model.dim == 2);
    CHECK(model.H(0, 0).real() == 0.5);
    CHECK(model.Q(0, 1).real() == 1.0);
}

TEST_CASE("write_timeseries: CSV shape and values") {
    TimeSeries ts;
    ts.columns = {"energy", "purity"};

    TempFile f("empty.csv");
    write_timeseries(ts, "csv", f.path);
    CHECK(slurp(f.path) == "time,energy,purity\n");

    // pure ground state of the two-level model: energy -0.5, purity 1
    ts.times = {0.0};
    ts.rows = {{-0.5, 1.0}};
    TempFile g("one.csv");
    write_timeseries(ts, "csv", g.path);
    CHECK(slurp(g.path) == "time,energy,purity\n0,-0.5,1\n");
}

TEST_CASE("write_timeseries: JSON round-trips bit-exactly") {
    TimeSeries ts;
    ts.columns = {"energy", "purity"};
    ts.times = {0.0, 0.4};
    ts.rows = {{-0.4999999999999987, 0.9999999999991}, {1.0 / 3.0, 2.0 / 7.0}};
    TempFile f("round.json");
    write_timeseries(ts, "json", f.path);

    const auto parsed = nlohmann::json::parse(slurp(f.path));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["time"].get<double>() == 0.0);
    CHECK(parsed[0]["energy"].get<double>() == -0.4999999999999987);
    CHECK(parsed[0]["purity"].get<double>() == 0.9999999999991);
    CHECK(parsed[1]["energy"].get<double>() == 1.0 / 3.0);
    CHECK(parsed[1]["purity"].get<double>() == 2.0 / 7.0);
}

TEST_CASE("evaluate_observable") {
    const ModelSpec model = two_level(1.0);
    const DensityMatrix rho = DensityMatrix::pure(StateVector::basis_state(2, 1));
    CHECK(evaluate_observable("energy", rho, model, 1.0, 0, 0, 0, std::nullopt) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(evaluate_observable("purity", rho, model, 1.0, 0, 0, 0, std::nullopt) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(evaluate_observable("population_1", rho, model, 1.0, 0, 0, 0, std::nullopt) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate_observable("nope", rho, model, 1.0, 0, 0, 0, std::nullopt),
                    ConfigParse);
}
