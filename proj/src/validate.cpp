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

#include "tqme/validate.hpp"

#include <cmath>

namespace tqme {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

CheckResult make_result(const std::string& name, double worst, double tol,
                        const std::string& detail = "") {
    return CheckResult{name, worst <= tol, worst, tol, detail};
}

Operator equilibrium_jump_reference(const DensityMatrix& gibbs, double alpha,
                                    const Operator& Q) {
    // (alpha/2) (Q + rho Q rho^{-1})
    const Operator rinv = regularized_inverse(gibbs, 1e-300);
    Operator out = Q + gibbs.op() * Q * rinv;
    out *= 0.5 * alpha;
    return out;
}

Operator equilibrium_friction_reference(const DensityMatrix& gibbs, double alpha, double gamma,
                                        const Operator& Q) {
    // (gamma/2) [1 - (alpha^2/4)(3Q^2 - rho Q^2 rinv + Q rho Q rinv + rho Q rinv Q)]
    const Operator rinv = regularized_inverse(gibbs, 1e-300);
    const Operator rho = gibbs.op();
    Operator inner = cplx(3.0) * (Q * Q);
    inner -= rho * (Q * Q) * rinv;
    inner += Q * rho * Q * rinv;
    inner += rho * Q * rinv * Q;
    Operator out = Operator::identity(Q.dim());
    out -= cplx(alpha * alpha / 4.0) * inner;
    out *= 0.5 * gamma;
    return out;
}

}  // namespace

Operator random_hermitian(std::mt19937_64& rng, int dim) {
    Operator X(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            X(i, j) = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    Operator H(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) H(i, j) = 0.5 * (X(i, j) + std::conj(X(j, i)));
    return H;
}

DensityMatrix random_density(std::mt19937_64& rng, int dim, double min_eigenvalue) {
    if (min_eigenvalue * dim >= 1.0)
        throw DomainError("random_density: min_eigenvalue too large for dim");
    const Spectrum s = hermitian_eig(random_hermitian(rng, dim), 1e-10);
    std::vector<double> u(static_cast<size_t>(dim));
    double total = 0.0;
    for (auto& v : u) {
        v = uniform(rng, 0.05, 1.0);
        total += v;
    }
    const double budget = 1.0 - min_eigenvalue * dim;
    Operator rho(dim);
    const Operator& V = s.eigenvectors;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double p = min_eigenvalue + budget * u[static_cast<size_t>(k)] / total;
                acc += V(i, k) * p * std::conj(V(j, k));
            }
            rho(i, j) = acc;
        }
    return DensityMatrix(rho);
}

std::vector<CheckResult> run_all_checks(uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> results;
    const PhysicalConstants consts;

    // --- linalg ---
    {
        double worst_rec = 0.0, worst_uni = 0.0;
        for (int dim : {1, 2, 3, 5, 8, 13, 21, 32}) {
            for (int rep = 0; rep < 3; ++rep) {
                const Operator A = random_hermitian(rng, dim);
                const Spectrum s = hermitian_eig(A);
                const Operator& V = s.eigenvectors;
                Operator rec(dim);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) {
                        cplx acc = 0.0;
                        for (int k = 0; k < dim; ++k)
                            acc += V(i, k) * s.eigenvalues[static_cast<size_t>(k)] *
                                   std::conj(V(j, k));
                        rec(i, j) = acc;
                    }
                worst_rec = std::max(worst_rec,
                                     (rec - A).max_abs() / std::max(1.0, A.frob_norm()));
                worst_uni = std::max(
                    worst_uni, (V.adjoint() * V - Operator::identity(dim)).max_abs());
            }
        }
        results.push_back(make_result("linalg/eig_reconstruction", worst_rec, 1e-10));
        results.push_back(make_result("linalg/eig_unitarity", worst_uni, 1e-12));
    }
    {
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 6);
            const Operator A = random_hermitian(rng, dim);
            const Operator expA = matrix_function(A, [](double x) { return std::exp(x); });
            const Operator back = matrix_function(expA, [](double x) { return std::log(x); });
            worst = std::max(worst, (back - A).max_abs());
            const Operator half = matrix_function(expA, [](double x) { return std::sqrt(x); });
            const Operator direct = matrix_function(A, [](double x) { return std::exp(0.5 * x); });
            worst = std::max(worst, (half - direct).max_abs());
        }
        results.push_back(make_result("linalg/matrix_function_composition", worst, 1e-8));
    }
    {
        double worst_anti = 0.0, worst_tr = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 6);
            const Operator A = random_hermitian(rng, dim);
            const Operator B = random_hermitian(rng, dim);
            worst_anti = std::max(worst_anti, (commutator(A, B) + commutator(B, A)).max_abs());
            worst_tr = std::max(worst_tr, std::abs(commutator(A, B).trace()));
        }
        results.push_back(make_result("linalg/commutator_antisymmetry", worst_anti, 0.0));
        results.push_back(make_result("linalg/commutator_traceless", worst_tr, 1e-12));
    }

    // --- density ---
    {
        double worst_lin = 0.0, worst_comm = 0.0, worst_herm = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 5);
            const DensityMatrix rho = random_density(rng, dim, 1e-3);
            const Operator A = random_hermitian(rng, dim);
            const Operator B = random_hermitian(rng, dim);
            const double a = uniform(rng, -2.0, 2.0), b = uniform(rng, -2.0, 2.0);
            Operator comb = cplx(a) * A;
            comb += cplx(b) * B;
            Operator sep = cplx(a) * rho_weighted(A, rho);
            sep += cplx(b) * rho_weighted(B, rho);
            worst_lin = std::max(worst_lin, (rho_weighted(comb, rho) - sep).max_abs());

            // commuting case: A a matrix function of rho
            const Operator P = matrix_function(rho.op(), [](double x) { return x * x + 0.3; }, 1e-8);
            worst_comm = std::max(worst_comm, (rho_weighted(P, rho) - P * rho.op()).max_abs());

            // general (non-Hermitian) A
            Operator C = A;
            C += cplx(0.0, 1.0) * B;
            worst_herm = std::max(
                worst_herm,
                (rho_weighted(C, rho).adjoint() - rho_weighted(C.adjoint(), rho)).max_abs());
        }
        results.push_back(make_result("density/rho_weighted_linearity", worst_lin, 1e-12));
        results.push_back(make_result("density/rho_weighted_commuting", worst_comm, 1e-10));
        results.push_back(make_result("density/hermiticity_transfer", worst_herm, 1e-12));
    }
    {
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 7);
            const DensityMatrix rho = random_density(rng, dim, 1e-3);
            const Operator A = random_hermitian(rng, dim);
            worst = std::max(worst, check_arho_identity(A, rho));
        }
        results.push_back(make_result("density/arho_identity", worst, 1e-10));
    }
    {
        double worst = 0.0;
        const Operator H = random_hermitian(rng, 6);
        const double T_e = 0.7;
        const DensityMatrix g = gibbs_state(H, T_e, consts);
        worst = std::max(worst, std::abs(g.op().trace().real() - 1.0));
        // populations in reverse energy order
        const Spectrum sh = hermitian_eig(H);
        const Spectrum sg = hermitian_eig(g.op());
        double z = 0.0;
        const double e0 = sh.eigenvalues.front();
        for (double e : sh.eigenvalues) z += std::exp(-(e - e0) / (consts.k_B * T_e));
        for (size_t k = 0; k < sh.eigenvalues.size(); ++k) {
            const double expect = std::exp(-(sh.eigenvalues[k] - e0) / (consts.k_B * T_e)) / z;
            const double got = sg.eigenvalues[sh.eigenvalues.size() - 1 - k];
            worst = std::max(worst, std::abs(expect - got));
        }
        results.push_back(make_result("density/gibbs_state", worst, 1e-12));
    }

    // --- oracle ---
    {
        const ModelSpec model = two_level(1.0, consts);
        const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, 1.0, consts);
        const DensityMatrix rho0 = DensityMatrix::pure(StateVector::basis_state(2, 0));
        const OracleResult res = integrate_oracle(rho0, model, env, 1e-3, 10.0, 1000);
        const double worst = std::max(res.max_trace_drift, res.max_hermiticity_defect * 0.1);
        results.push_back(make_result("oracle/trace_and_hermiticity", res.max_trace_drift, 1e-9,
                                      "10^4 RK4 steps"));
        results.push_back(
            make_result("oracle/hermiticity_defect", res.max_hermiticity_defect, 1e-10));
        (void)worst;
    }
    {
        double worst = 0.0;
        const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, 1.0, consts);
        for (const ModelSpec& model :
             {harmonic_oscillator(8, 1.0, 1.0, consts), two_level(1.0, consts)}) {
            const DensityMatrix g = gibbs_state(model.H, env.T_e, consts);
            worst = std::max(worst, master_rhs(g, model, env).max_abs());
        }
        results.push_back(make_result("oracle/gibbs_stationarity", worst, 1e-10));
    }
    {
        const ModelSpec model = two_level(1.0, consts);
        EnvironmentSpec env;
        env.consts = consts;
        StateVector psi(2);
        psi.amp = {cplx(0.8, 0.0), cplx(0.36, 0.48)};
        const DensityMatrix rho0 = DensityMatrix::pure(psi);
        const double e0 = expectation(model.H, rho0).real();
        const OracleResult res = integrate_oracle(rho0, model, env, 1e-3, 10.0, 2000);
        double worst = 0.0;
        for (const auto& s : res.samples)
            worst = std::max(worst, std::abs(expectation(model.H, s.rho).real() - e0));
        results.push_back(make_result("oracle/closed_system_energy", worst, 1e-9));
    }

    // --- unraveling algebra ---
    {
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 5);
            const DensityMatrix rho = random_density(rng, dim, 1e-3);
            ModelSpec model;
            model.dim = dim;
            model.name = "random";
            model.H = random_hermitian(rng, dim);
            model.Q = random_hermitian(rng, dim);
            JumpParameters params;
            params.alpha = std::pow(10.0, uniform(rng, -1.0, 1.0));
            params.beta = uniform(rng, -2.0, 2.0);
            params.gamma = std::pow(10.0, uniform(rng, -1.0, 1.0));
            params.gamma_alpha_sq = params.gamma * params.alpha * params.alpha;
            worst = std::max(worst, second_moment_identity_residual(rho, params, model));
        }
        results.push_back(make_result("unravel/second_moment_identity", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 5);
            const DensityMatrix rho = random_density(rng, dim, 1e-3);
            ModelSpec model;
            model.dim = dim;
            model.name = "random";
            model.H = random_hermitian(rng, dim);
            model.Q = random_hermitian(rng, dim);
            const double beta = uniform(rng, -1.5, 1.5);
            const RhoBasis basis = positive_basis(rho, default_eps_floor(rho));
            JumpParameters params;
            params.beta = beta;
            params.alpha = solve_alpha(basis, beta, model, AlphaPolicy{});
            params.gamma = 1.7;
            params.gamma_alpha_sq = params.gamma * params.alpha * params.alpha;
            const Operator rho_f = basis.assemble([](double p) { return p; });
            const Operator Qt = jump_operator(basis, params, model);
            const Operator L = friction_operator(basis, params, model);
            worst = std::max(worst, std::abs((Qt * rho_f * Qt.adjoint()).trace().real() - 1.0));
            worst = std::max(worst, std::abs((L * rho_f).trace().real()));
        }
        results.push_back(make_result("unravel/normalization_pair", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const int dim = 2 + static_cast<int>(rng() % 4);
            const DensityMatrix rho = random_density(rng, dim, 1e-3);
            ModelSpec model;
            model.dim = dim;
            model.name = "random";
            model.H = random_hermitian(rng, dim);
            model.Q = random_hermitian(rng, dim);
            EnvironmentSpec env;
            env.c_hh = 0.4;
            env.c_hs = 0.2;
            env.consts = consts;
            ModelSpec scaled = model;
            scaled.Q *= 3.0;
            EnvironmentSpec env_scaled = env;
            env_scaled.c_hh /= 9.0;
            env_scaled.c_hs /= 9.0;
            worst = std::max(
                worst, (master_rhs(rho, model, env) - master_rhs(rho, scaled, env_scaled)).max_abs());
        }
        results.push_back(make_result("unravel/scaling_invariance", worst, 1e-10));
    }

    // --- equilibrium specialization ---
    {
        double worst_18 = 0.0, worst_19 = 0.0, worst_20 = 0.0;
        const double T_e = 1.0;
        const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, T_e, consts);
        const double beta = compute_beta(env);
        for (const ModelSpec& model :
             {harmonic_oscillator(10, 1.0, 1.0, consts), two_level(1.0, consts)}) {
            const DensityMatrix g = gibbs_state(model.H, T_e, consts);
            const RhoBasis basis = positive_basis(g, 1e-300);
            JumpParameters params;
            params.beta = beta;
            params.alpha = solve_alpha(basis, beta, model, AlphaPolicy{});
            params.gamma_alpha_sq = compute_gamma_alpha_sq(env);
            params.gamma = params.gamma_alpha_sq / (params.alpha * params.alpha);
            const Operator Qt = jump_operator(basis, params, model);
            worst_18 = std::max(
                worst_18, (Qt - equilibrium_jump_reference(g, params.alpha, model.Q)).max_abs());
            const Operator L = friction_operator(basis, params, model);
            worst_19 = std::max(
                worst_19,
                (L - equilibrium_friction_reference(g, params.alpha, params.gamma, model.Q))
                    .max_abs());
            // matrix elements in the energy eigenbasis
            const Spectrum sh = hermitian_eig(model.H);
            const Operator Qt_e = sh.eigenvectors.adjoint() * Qt * sh.eigenvectors;
            const Operator Q_e = sh.eigenvectors.adjoint() * model.Q * sh.eigenvectors;
            for (int m = 0; m < model.dim; ++m)
                for (int n = 0; n < model.dim; ++n) {
                    const double factor =
                        0.5 * params.alpha *
                        (1.0 + std::exp((sh.eigenvalues[static_cast<size_t>(n)] -
                                         sh.eigenvalues[static_cast<size_t>(m)]) /
                                        (consts.k_B * T_e)));
                    worst_20 = std::max(worst_20, std::abs(Qt_e(m, n) - factor * Q_e(m, n)));
                }
        }
        results.push_back(make_result("unravel/equilibrium_jump_closed_form", worst_18, 1e-10));
        results.push_back(make_result("unravel/equilibrium_friction_closed_form", worst_19, 1e-10));
        results.push_back(make_result("unravel/detailed_balance_matrix_elements", worst_20, 1e-10));
    }
    {
        // adjacent-level asymmetry at hbar w / (k_B T_e) = 1: downward over
        // upward equals e
        const ModelSpec model = harmonic_oscillator(10, 1.0, 1.0, consts);
        const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, 1.0, consts);
        const DensityMatrix g = gibbs_state(model.H, 1.0, consts);
        const RhoBasis basis = positive_basis(g, 1e-300);
        JumpParameters params;
        params.beta = compute_beta(env);
        params.alpha = solve_alpha(basis, params.beta, model, AlphaPolicy{});
        const Operator Qt = jump_operator(basis, params, model);
        double worst = 0.0;
        for (int n = 1; n < 6; ++n) {
            const double down = std::abs(Qt(n - 1, n));
            const double up = std::abs(Qt(n, n - 1));
            const double q_ratio = std::abs(model.Q(n - 1, n)) / std::abs(model.Q(n, n - 1));
            worst = std::max(worst, std::abs(down / up / q_ratio - std::exp(1.0)));
        }
        results.push_back(make_result("unravel/detailed_balance_ratio", worst, 1e-10));
    }

    // --- reproducibility across worker counts ---
    {
        const ModelSpec model = two_level(1.0, consts);
        const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, 1.0, consts);
        UnravelConfig uc;
        uc.dt = 1e-3;
        uc.t_end = 0.2;
        uc.record_every = 50;
        uc.eps_floor = 1e-2;   // pure-state start: keep rho^{-1} tame
        auto run_with = [&](int threads) {
            uc.threads = threads;
            Ensemble ens = Ensemble::from_pure(StateVector::basis_state(2, 0), 400, 12345);
            return run_unraveling(std::move(ens), model, env, uc);
        };
        const UnravelResult r1 = run_with(1);
        const UnravelResult r4 = run_with(4);
        double worst = 0.0;
        if (r1.samples.size() != r4.samples.size() || r1.total_jumps != r4.total_jumps) {
            worst = 1.0;
        } else {
            for (size_t i = 0; i < r1.samples.size(); ++i) {
                const Operator d = r1.samples[i].rho.op() - r4.samples[i].rho.op();
                worst = std::max(worst, d.max_abs());
                worst = std::max(worst,
                                 std::abs(r1.samples[i].raw_trace - r4.samples[i].raw_trace));
            }
        }
        results.push_back(make_result("unravel/reproducible_across_threads", worst, 0.0));
        // mean squared norm stays near one on average
        double norm_dev = 0.0;
        for (const auto& s : r1.samples) norm_dev = std::max(norm_dev, std::abs(s.raw_trace - 1.0));
        results.push_back(make_result("unravel/mean_norm_diagnostic", norm_dev, 0.5,
                                      "statistical, loose bound"));
    }

    // --- model catalog ---
    {
        double worst = 0.0;
        const ModelSpec osc = harmonic_oscillator(10, 1.0, 1.0, consts);
        worst = std::max(worst, osc.H.hermiticity_defect());
        worst = std::max(worst, osc.Q.hermiticity_defect());
        for (int n = 0; n + 1 < osc.dim; ++n)
            worst = std::max(worst,
                             std::abs((osc.H(n + 1, n + 1) - osc.H(n, n)).real() - 1.0));
        worst = std::max(worst, std::abs(osc.Q(0, 1).real() - 1.0 / std::sqrt(2.0)));
        for (int m = 0; m < osc.dim; ++m)
            for (int n = 0; n < osc.dim; ++n)
                if (std::abs(m - n) != 1) worst = std::max(worst, std::abs(osc.Q(m, n)));
        const ModelSpec tls = two_level(1.0, consts);
        worst = std::max(worst, (tls.Q * tls.Q - Operator::identity(2)).max_abs());
        worst = std::max(worst, std::abs(tls.H(0, 0).real() - 0.5));
        results.push_back(make_result("models/catalog_invariants", worst, 1e-12));

        const DensityMatrix g = gibbs_state(osc.H, 1.0, consts);
        const double top = g.op()(osc.dim - 1, osc.dim - 1).real();
        results.push_back(make_result("models/oscillator_truncation", top, 1e-4,
                                      "top-level Gibbs population, k_B T_e = hbar w"));
    }

    // --- config ---
    {
        SimConfig cfg;
        cfg.model_name = "oscillator";
        cfg.model_dim = 10;
        cfg.c_hh = 0.25;
        cfg.T_e = 1.0;
        cfg.c_hs = 0.25;
        cfg.equilibrium = true;
        cfg.seed = 42;
        const std::string once = cfg.to_json_text();
        const SimConfig back = SimConfig::from_json_text(once);
        const double worst = (back.to_json_text() == once) ? 0.0 : 1.0;
        results.push_back(make_result("config/roundtrip", worst, 0.0));
    }

    return results;
}

}  // namespace tqme
