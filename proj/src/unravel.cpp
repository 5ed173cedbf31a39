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

#include "tqme/unravel.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace tqme {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 member_stream(uint64_t master_seed, uint64_t index) {
    return std::mt19937_64(splitmix64(master_seed ^ splitmix64(index)));
}

// Uniform in [0, 1) from the top 53 bits; avoids distribution objects so the
// draw count per member per step is exactly one.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exact RK4 update for the linear, constant-coefficient flow psi' = G psi.
StateVector rk4_linear(const Operator& G, const StateVector& psi, double dt) {
    const StateVector k1 = apply(G, psi);
    StateVector tmp = psi;
    const int n = psi.dim();
    for (int i = 0; i < n; ++i) tmp.amp[i] = psi.amp[i] + 0.5 * dt * k1.amp[i];
    const StateVector k2 = apply(G, tmp);
    for (int i = 0; i < n; ++i) tmp.amp[i] = psi.amp[i] + 0.5 * dt * k2.amp[i];
    const StateVector k3 = apply(G, tmp);
    for (int i = 0; i < n; ++i) tmp.amp[i] = psi.amp[i] + dt * k3.amp[i];
    const StateVector k4 = apply(G, tmp);
    StateVector out(n);
    for (int i = 0; i < n; ++i)
        out.amp[i] =
            psi.amp[i] + (dt / 6.0) * (k1.amp[i] + 2.0 * k2.amp[i] + 2.0 * k3.amp[i] + k4.amp[i]);
    return out;
}

double inf_norm(const Operator& A) {
    double m = 0.0;
    for (int i = 0; i < A.dim(); ++i) {
        double s = 0.0;
        for (int j = 0; j < A.dim(); ++j) s += std::abs(A(i, j));
        m = std::max(m, s);
    }
    return m;
}

}  // namespace

double compute_beta(const EnvironmentSpec& env) {
    if (env.c_hh == 0.0) throw ZeroBracket("compute_beta: c_hh = 0");
    return env.c_hs / (2.0 * env.consts.k_B * env.c_hh);
}

double compute_gamma_alpha_sq(const EnvironmentSpec& env) {
    return 2.0 * env.c_hh;
}

double solve_alpha(const RhoBasis& basis, double beta, const ModelSpec& model,
                   const AlphaPolicy& policy, double degeneracy_tol) {
    if (policy.kind == AlphaPolicyKind::Fixed) {
        if (policy.fixed_value <= 0.0) throw ConfigParse("solve_alpha: fixed alpha must be > 0");
        return policy.fixed_value;
    }
    const Operator rho_op = basis.assemble([](double p) { return p; });
    const double tr_qrq = (model.Q * rho_op * model.Q).trace().real();
    double bracket = tr_qrq;
    if (policy.kind == AlphaPolicyKind::Exact && beta != 0.0) {
        const Operator R = rho_weighted(commutator(model.Q, model.H), basis, degeneracy_tol);
        const Operator rinv = regularized_inverse(basis);
        // R is anti-self-adjoint, so this trace is <= 0 and the bracket only
        // grows.
        bracket -= beta * beta * (R * rinv * R).trace().real();
    }
    if (bracket <= 1e-14)
        throw DegenerateCoupling("solve_alpha: normalization bracket <= 1e-14");
    return 1.0 / std::sqrt(bracket);
}

double solve_alpha(const DensityMatrix& rho, double beta, const ModelSpec& model,
                   const AlphaPolicy& policy) {
    return solve_alpha(positive_basis(rho, default_eps_floor(rho)), beta, model, policy);
}

Operator jump_operator(const RhoBasis& basis, const JumpParameters& params, const ModelSpec& model,
                       double degeneracy_tol) {
    Operator Qt = model.Q;
    if (params.beta != 0.0) {
        const Operator R = rho_weighted(commutator(model.Q, model.H), basis, degeneracy_tol);
        Qt += cplx(params.beta) * (R * regularized_inverse(basis));
    }
    Qt *= params.alpha;
    return Qt;
}

Operator jump_operator(const DensityMatrix& rho, const JumpParameters& params,
                       const ModelSpec& model) {
    return jump_operator(positive_basis(rho, default_eps_floor(rho)), params, model);
}

Operator friction_operator(const RhoBasis& basis, const JumpParameters& params,
                           const ModelSpec& model, double degeneracy_tol) {
    const double a2 = params.alpha * params.alpha;
    Operator inner = Operator::identity(model.dim);
    inner -= cplx(a2) * (model.Q * model.Q);
    if (params.beta != 0.0) {
        const Operator R = rho_weighted(commutator(model.Q, model.H), basis, degeneracy_tol);
        const Operator K = R * regularized_inverse(basis);
        inner += cplx(a2 * params.beta * params.beta) * (K * K);
    }
    inner *= 0.5 * params.gamma;
    return inner;
}

Operator friction_operator(const DensityMatrix& rho, const JumpParameters& params,
                           const ModelSpec& model) {
    return friction_operator(positive_basis(rho, default_eps_floor(rho)), params, model);
}

double second_moment_identity_residual(const DensityMatrix& rho, const JumpParameters& params,
                                       const ModelSpec& model) {
    const RhoBasis basis = positive_basis(rho, default_eps_floor(rho));
    // Both routes are evaluated for the same floored rho, so the comparison
    // is exact.
    const Operator rho_f = basis.assemble([](double p) { return p; });
    const Operator Qt = jump_operator(basis, params, model);
    const Operator L = friction_operator(basis, params, model);

    Operator lhs = L * rho_f + rho_f * L.adjoint();
    lhs += cplx(params.gamma) * (Qt * rho_f * Qt.adjoint() - rho_f);

    const double ga2 = params.gamma * params.alpha * params.alpha;
    const Operator R = rho_weighted(commutator(model.Q, model.H), basis);
    Operator rhs = cplx(-ga2 * params.beta) * commutator(model.Q, R);
    rhs -= cplx(0.5 * ga2) * commutator(model.Q, commutator(model.Q, rho_f));

    return (lhs - rhs).max_abs();
}

StateVector jump_step(const StateVector& psi, const Operator& Qtilde) {
    return apply(Qtilde, psi);
}

StateVector deterministic_step(const StateVector& psi, const Operator& H, const Operator& Lambda,
                               double dt, const PhysicalConstants& consts) {
    if (H.dim() != psi.dim() || Lambda.dim() != psi.dim())
        throw DimensionMismatch("deterministic_step: dims differ");
    if (dt * (inf_norm(H) / consts.hbar + inf_norm(Lambda)) > 1.0)
        throw StepTooLarge("deterministic_step: dt too large for H, Lambda");
    Operator G = (cplx(0.0, -1.0) / consts.hbar) * H;
    G += Lambda;
    return rk4_linear(G, psi, dt);
}

double Ensemble::mean_norm_sq() const {
    double s = 0.0;
    for (const auto& m : members) s += m.norm_sq();
    return s / static_cast<double>(members.size());
}

Ensemble Ensemble::from_pure(const StateVector& psi, int n_members, uint64_t seed) {
    if (n_members < 1) throw ConfigParse("Ensemble: need at least one member");
    const double nrm = std::sqrt(psi.norm_sq());
    if (nrm <= 0.0) throw ConfigParse("Ensemble: zero initial state");
    StateVector unit = psi;
    for (auto& a : unit.amp) a /= nrm;
    Ensemble ens;
    ens.members.assign(static_cast<size_t>(n_members), unit);
    ens.rngs.reserve(static_cast<size_t>(n_members));
    for (int i = 0; i < n_members; ++i) ens.rngs.push_back(member_stream(seed, static_cast<uint64_t>(i)));
    return ens;
}

Ensemble Ensemble::from_density(const DensityMatrix& rho0, int n_members, uint64_t seed) {
    if (n_members < 1) throw ConfigParse("Ensemble: need at least one member");
    const Spectrum s = hermitian_eig(rho0.op(), 1e-8);
    const int n = rho0.dim();
    Ensemble ens;
    ens.members.reserve(static_cast<size_t>(n_members));
    ens.rngs.reserve(static_cast<size_t>(n_members));
    for (int i = 0; i < n_members; ++i) {
        auto rng = member_stream(seed, static_cast<uint64_t>(i));
        const double u = uniform01(rng);
        double acc = 0.0;
        int pick = n - 1;
        for (int k = 0; k < n; ++k) {
            acc += std::max(s.eigenvalues[static_cast<size_t>(k)], 0.0);
            if (u < acc) {
                pick = k;
                break;
            }
        }
        StateVector psi(n);
        for (int r = 0; r < n; ++r) psi.amp[static_cast<size_t>(r)] = s.eigenvectors(r, pick);
        ens.members.push_back(std::move(psi));
        ens.rngs.push_back(std::move(rng));
    }
    return ens;
}

EnsembleDensity ensemble_density(const Ensemble& ens) {
    const int N = ens.size();
    if (N < 1) throw ConfigParse("ensemble_density: empty ensemble");
    const int n = ens.members.front().dim();
    Operator sum(n);
    // Fixed member order keeps the reduction bit-identical across thread
    // counts.
    for (const auto& psi : ens.members) sum += outer(psi, psi);
    sum *= 1.0 / static_cast<double>(N);
    const double raw = sum.trace().real();
    sum *= 1.0 / raw;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx m = 0.5 * (sum(i, j) + std::conj(sum(j, i)));
            sum(i, j) = m;
            sum(j, i) = std::conj(m);
        }
    return EnsembleDensity{DensityMatrix(sum), raw};
}

UnravelResult run_unraveling(Ensemble ens, const ModelSpec& model, const EnvironmentSpec& env,
                             const UnravelConfig& config) {
    model.validate();
    env.validate();
    if (ens.size() < 2) throw ConfigParse("run_unraveling: ensemble size must be >= 2");
    if (config.dt <= 0.0 || config.t_end < 0.0)
        throw ConfigParse("run_unraveling: dt > 0, t_end >= 0 required");
    if (config.record_every < 1) throw ConfigParse("run_unraveling: record_every >= 1");
    const int threads = std::max(1, config.threads);

    const bool dissipative = env.c_hh > 0.0;
    const double beta = dissipative ? compute_beta(env) : 0.0;
    const double ga2 = compute_gamma_alpha_sq(env);
    const long steps = std::lround(config.t_end / config.dt);
    const int N = ens.size();

    UnravelResult result;
    long jumps_since_record = 0;

    const Operator drift_base = (cplx(0.0, -1.0) / env.consts.hbar) * model.H;

    for (long step = 0; step <= steps; ++step) {
        EnsembleDensity ed = ensemble_density(ens);
        if (ed.raw_trace < 0.1 || ed.raw_trace > 10.0)
            throw EnsembleCollapse("run_unraveling: mean squared norm " +
                                   std::to_string(ed.raw_trace) + " outside [0.1, 10]");

        JumpParameters params;
        params.beta = beta;
        params.gamma_alpha_sq = ga2;
        params.policy = config.alpha_policy;
        Operator Qt(model.dim), G = drift_base;
        if (dissipative) {
            const double eps =
                config.eps_floor > 0.0 ? config.eps_floor : default_eps_floor(ed.rho);
            const RhoBasis basis = positive_basis(ed.rho, eps);
            params.alpha = solve_alpha(basis, beta, model, config.alpha_policy,
                                       config.degeneracy_tol);
            params.gamma = ga2 / (params.alpha * params.alpha);
            if (config.dt * params.gamma > 0.1)
                throw StepTooLarge("run_unraveling: dt * gamma = " +
                                   std::to_string(config.dt * params.gamma) + " > 0.1");
            Qt = jump_operator(basis, params, model, config.degeneracy_tol);
            G += friction_operator(basis, params, model, config.degeneracy_tol);
        }

        if (step % config.record_every == 0 || step == steps) {
            result.samples.push_back({static_cast<double>(step) * config.dt, ed.rho, ed.raw_trace,
                                      dissipative ? params.alpha : 0.0, params.gamma,
                                      jumps_since_record});
            jumps_since_record = 0;
        }
        if (step == steps) break;

        const double p_jump = dissipative ? -std::expm1(-params.gamma * config.dt) : 0.0;
        auto advance_range = [&](int lo, int hi, long* jump_count) {
            long local = 0;
            for (int i = lo; i < hi; ++i) {
                const double u = uniform01(ens.rngs[static_cast<size_t>(i)]);
                if (u < p_jump) {
                    ens.members[static_cast<size_t>(i)] =
                        jump_step(ens.members[static_cast<size_t>(i)], Qt);
                    ++local;
                } else {
                    ens.members[static_cast<size_t>(i)] =
                        rk4_linear(G, ens.members[static_cast<size_t>(i)], config.dt);
                }
            }
            *jump_count = local;
        };

        std::vector<long> chunk_jumps(static_cast<size_t>(threads), 0);
        if (threads == 1) {
            advance_range(0, N, &chunk_jumps[0]);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (N + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                const int lo = t * chunk;
                const int hi = std::min(N, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(advance_range, lo, hi, &chunk_jumps[static_cast<size_t>(t)]);
            }
            for (auto& th : pool) th.join();
        }
        for (long c : chunk_jumps) {
            jumps_since_record += c;
            result.total_jumps += c;
        }
        ens.time += config.dt;
    }
    return result;
}

}  // namespace tqme
