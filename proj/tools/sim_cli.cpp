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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tqme/config.hpp"
#include "tqme/validate.hpp"

namespace {

using namespace tqme;

struct CommonOpts {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

SimConfig load_config(const CommonOpts& opts) {
    SimConfig cfg = SimConfig::from_file(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.output) cfg.output_path = *opts.output;
    if (opts.format) cfg.output_format = *opts.format;
    return cfg;
}

TimeSeries series_from_oracle(const OracleResult& res, const SimConfig& cfg,
                              const ModelSpec& model) {
    TimeSeries ts;
    ts.columns = cfg.observables;
    for (const auto& s : res.samples) {
        ts.times.push_back(s.time);
        std::vector<double> row;
        for (const auto& name : cfg.observables)
            row.push_back(evaluate_observable(name, s.rho, model, s.rho.op().trace().real(), 0.0,
                                              0.0, 0.0, std::nullopt));
        ts.rows.push_back(std::move(row));
    }
    return ts;
}

TimeSeries series_from_unravel(const UnravelResult& res, const SimConfig& cfg,
                               const ModelSpec& model,
                               const std::vector<DensityMatrix>* oracle_rhos) {
    TimeSeries ts;
    ts.columns = cfg.observables;
    for (size_t i = 0; i < res.samples.size(); ++i) {
        const auto& s = res.samples[i];
        ts.times.push_back(s.time);
        std::optional<double> dist;
        if (oracle_rhos && i < oracle_rhos->size())
            dist = trace_distance(s.rho, (*oracle_rhos)[i]);
        std::vector<double> row;
        for (const auto& name : cfg.observables)
            row.push_back(evaluate_observable(name, s.rho, model, s.raw_trace, s.alpha, s.gamma,
                                              static_cast<double>(s.jumps), dist));
        ts.rows.push_back(std::move(row));
    }
    return ts;
}

int cmd_oracle(const CommonOpts& opts) {
    const SimConfig cfg = load_config(opts);
    const ModelSpec model = cfg.build_model();
    const EnvironmentSpec env = cfg.build_env();
    const DensityMatrix rho0 = cfg.build_initial_density(model);
    NumericOptions num{cfg.eps_floor, cfg.degeneracy_tol};
    const OracleResult res =
        integrate_oracle(rho0, model, env, cfg.dt, cfg.t_end, cfg.record_every, num);
    if (res.positivity_warning)
        std::cerr << "warning: positivity lost, min eigenvalue "
                  << res.min_eigenvalue_seen << "\n";
    write_timeseries(series_from_oracle(res, cfg, model), cfg.output_format, cfg.output_path);
    std::cout << "oracle: " << res.samples.size() << " samples -> " << cfg.output_path << "\n";
    return 0;
}

int cmd_unravel(const CommonOpts& opts) {
    SimConfig cfg = load_config(opts);
    const ModelSpec model = cfg.build_model();
    const EnvironmentSpec env = cfg.build_env();
    Ensemble ens = cfg.build_initial_ensemble(model, cfg.seed);
    const UnravelResult res = run_unraveling(std::move(ens), model, env,
                                             cfg.build_unravel_config());
    write_timeseries(series_from_unravel(res, cfg, model, nullptr), cfg.output_format,
                     cfg.output_path);
    std::cout << "unravel: " << res.samples.size() << " samples, " << res.total_jumps
              << " jumps -> " << cfg.output_path << "\n";
    return 0;
}

int cmd_compare(const CommonOpts& opts) {
    SimConfig cfg = load_config(opts);
    const ModelSpec model = cfg.build_model();
    const EnvironmentSpec env = cfg.build_env();
    NumericOptions num{cfg.eps_floor, cfg.degeneracy_tol};
    const OracleResult oracle = integrate_oracle(cfg.build_initial_density(model), model, env,
                                                 cfg.dt, cfg.t_end, cfg.record_every, num);
    Ensemble ens = cfg.build_initial_ensemble(model, cfg.seed);
    const UnravelResult stoch = run_unraveling(std::move(ens), model, env,
                                               cfg.build_unravel_config());
    std::vector<DensityMatrix> oracle_rhos;
    for (const auto& s : oracle.samples) oracle_rhos.push_back(s.rho);

    if (std::find(cfg.observables.begin(), cfg.observables.end(),
                  "trace_distance_to_oracle") == cfg.observables.end())
        cfg.observables.push_back("trace_distance_to_oracle");
    write_timeseries(series_from_unravel(stoch, cfg, model, &oracle_rhos), cfg.output_format,
                     cfg.output_path);

    double worst = 0.0;
    const size_t n = std::min(oracle_rhos.size(), stoch.samples.size());
    for (size_t i = 0; i < n; ++i)
        worst = std::max(worst, trace_distance(stoch.samples[i].rho, oracle_rhos[i]));
    std::cout << "compare: max trace distance " << worst << " over " << n << " samples -> "
              << cfg.output_path << "\n";
    return 0;
}

int cmd_validate(const CommonOpts& opts, uint64_t check_seed) {
    if (!opts.config_path.empty()) (void)load_config(opts);  // config errors still exit 1
    const auto results = run_all_checks(check_seed);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%-4s %-45s worst %.3e  tol %.3e%s%s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst, r.tolerance, r.detail.empty() ? "" : "  # ",
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%s (%zu checks)\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", results.size());
    return all_pass ? 0 : 3;
}

int cmd_detailed_balance(const CommonOpts& opts) {
    const SimConfig cfg = load_config(opts);
    const ModelSpec model = cfg.build_model();
    const EnvironmentSpec env = cfg.build_env();
    if (env.T_e <= 0.0) throw ConfigParse("detailed-balance requires env.T_e > 0");
    const DensityMatrix g = gibbs_state(model.H, env.T_e, env.consts);
    const RhoBasis basis = positive_basis(g, 1e-300);
    JumpParameters params;
    params.beta = compute_beta(env);
    params.alpha = solve_alpha(basis, params.beta, model, cfg.alpha_policy, cfg.degeneracy_tol);
    const Operator Qt = jump_operator(basis, params, model, cfg.degeneracy_tol);
    const Spectrum sh = hermitian_eig(model.H);
    const Operator Qt_e = sh.eigenvectors.adjoint() * Qt * sh.eigenvectors;
    const Operator Q_e = sh.eigenvectors.adjoint() * model.Q * sh.eigenvectors;

    std::printf("# model %s, T_e %.6g, alpha %.12g, beta %.12g\n", model.name.c_str(), env.T_e,
                params.alpha, params.beta);
    std::printf("%3s %3s %14s %14s %14s %14s\n", "m", "n", "E_n-E_m", "|<m|Q|n>|", "|<m|Qt|n>|",
                "balance_factor");
    for (int m = 0; m < model.dim; ++m)
        for (int n = 0; n < model.dim; ++n) {
            if (std::abs(Q_e(m, n)) < 1e-14) continue;
            const double de = sh.eigenvalues[static_cast<size_t>(n)] -
                              sh.eigenvalues[static_cast<size_t>(m)];
            const double factor =
                0.5 * params.alpha * (1.0 + std::exp(de / (env.consts.k_B * env.T_e)));
            std::printf("%3d %3d %14.6g %14.6g %14.6g %14.6g\n", m, n, de, std::abs(Q_e(m, n)),
                        std::abs(Qt_e(m, n)), factor);
        }

    // adjacent-pair asymmetry: downward over upward jump amplitude
    double ratio = 0.0;
    for (int n = 1; n < model.dim; ++n) {
        if (std::abs(Q_e(n - 1, n)) < 1e-14) continue;
        ratio = std::abs(Qt_e(n - 1, n)) / std::abs(Qt_e(n, n - 1)) *
                std::abs(Q_e(n, n - 1)) / std::abs(Q_e(n - 1, n));
        break;
    }
    std::printf("# downward/upward factor ratio: %.12g\n", ratio);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear thermodynamic quantum master equation simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    uint64_t check_seed = 20240917ULL;
    std::string subcmd;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* copt = sub->add_option("--config", opts.config_path, "JSON config file");
        if (config_required) copt->required();
        sub->add_option("--seed", [&opts](const CLI::results_t& r) {
            opts.seed = std::stoull(r[0]);
            return true;
        }, "override run.seed");
        sub->add_option("--output", [&opts](const CLI::results_t& r) {
            opts.output = r[0];
            return true;
        }, "override output.path");
        sub->add_option("--format", [&opts](const CLI::results_t& r) {
            opts.format = r[0];
            return true;
        }, "override output.format (csv|json)")->check(CLI::IsMember({"csv", "json"}));
    };

    add_common(app.add_subcommand("oracle", "deterministic density-matrix integration"), true);
    add_common(app.add_subcommand("unravel", "stochastic jump-process ensemble run"), true);
    add_common(app.add_subcommand("compare", "run both and report per-time trace distance"), true);
    auto* val = app.add_subcommand("validate", "run the full invariant suite");
    add_common(val, false);
    val->add_option("--check-seed", check_seed, "seed for randomized property checks");
    add_common(app.add_subcommand("detailed-balance",
                                  "print the equilibrium matrix-element table"),
               true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "oracle") return cmd_oracle(opts);
        if (name == "unravel") return cmd_unravel(opts);
        if (name == "compare") return cmd_compare(opts);
        if (name == "validate") return cmd_validate(opts, check_seed);
        if (name == "detailed-balance") return cmd_detailed_balance(opts);
    } catch (const ConfigParse& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
