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

#include <cstdint>
#include <random>
#include <vector>

#include "tqme/master.hpp"

namespace tqme {

enum class AlphaPolicyKind { Exact, Approximate, Fixed };

struct AlphaPolicy {
    AlphaPolicyKind kind = AlphaPolicyKind::Exact;
    double fixed_value = 1.0;
};

/// Jump-process parameters. Only beta and the combination gamma * alpha^2
/// are physically fixed; alpha is pinned by the chosen normalization policy
/// and gamma follows as gamma_alpha_sq / alpha^2.
struct JumpParameters {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    double gamma_alpha_sq = 0.0;
    AlphaPolicy policy;
};

/// beta = c_hs / (2 k_B c_hh).
double compute_beta(const EnvironmentSpec& env);

/// gamma * alpha^2 = 2 c_hh.
double compute_gamma_alpha_sq(const EnvironmentSpec& env);

/// Solve the normalization condition
///   alpha^2 [ tr(Q rho Q) - beta^2 tr([Q,H]_rho rho^{-1} [Q,H]_rho) ] = 1
/// (exact policy), or alpha^2 tr(Q rho Q) = 1 (approximate policy), or
/// return the configured fixed value. alpha > 0 by convention.
double solve_alpha(const RhoBasis& basis, double beta, const ModelSpec& model,
                   const AlphaPolicy& policy, double degeneracy_tol = 1e-12);
double solve_alpha(const DensityMatrix& rho, double beta, const ModelSpec& model,
                   const AlphaPolicy& policy);

/// Jump operator Qtilde = alpha (Q + beta [Q,H]_rho rho^{-1}). Not
/// self-adjoint in general.
Operator jump_operator(const RhoBasis& basis, const JumpParameters& params, const ModelSpec& model,
                       double degeneracy_tol = 1e-12);
Operator jump_operator(const DensityMatrix& rho, const JumpParameters& params,
                       const ModelSpec& model);

/// Friction operator
///   Lambda = (gamma/2) [ 1 - alpha^2 Q^2 + alpha^2 beta^2 ([Q,H]_rho rho^{-1})^2 ].
Operator friction_operator(const RhoBasis& basis, const JumpParameters& params,
                           const ModelSpec& model, double degeneracy_tol = 1e-12);
Operator friction_operator(const DensityMatrix& rho, const JumpParameters& params,
                           const ModelSpec& model);

/// Max-entry residual between the two routes to the second-moment evolution:
///   Lambda rho + rho Lambda^dag + gamma (Qt rho Qt^dag - rho)
/// against
///   -gamma alpha^2 beta [Q, [Q,H]_rho] - (gamma alpha^2 / 2) [Q, [Q, rho]].
/// An algebraic identity: holds for any alpha, beta, gamma.
double second_moment_identity_residual(const DensityMatrix& rho, const JumpParameters& params,
                                       const ModelSpec& model);

/// psi -> Qtilde psi, deliberately unnormalized.
StateVector jump_step(const StateVector& psi, const Operator& Qtilde);

/// One RK4 step of d psi / dt = -(i/hbar) H psi + Lambda psi, with Lambda
/// held fixed over the step.
StateVector deterministic_step(const StateVector& psi, const Operator& H, const Operator& Lambda,
                               double dt, const PhysicalConstants& consts = {});

/// Trajectory ensemble with one seed-derived RNG stream per member, so the
/// result is independent of how members are distributed over workers.
struct Ensemble {
    std::vector<StateVector> members;
    std::vector<std::mt19937_64> rngs;
    double time = 0.0;

    int size() const { return static_cast<int>(members.size()); }
    double mean_norm_sq() const;

    /// All members start in the same (normalized) pure state.
    static Ensemble from_pure(const StateVector& psi, int n_members, uint64_t seed);
    /// Members drawn from the eigenstate mixture of rho0.
    static Ensemble from_density(const DensityMatrix& rho0, int n_members, uint64_t seed);
};

struct EnsembleDensity {
    DensityMatrix rho;       // symmetrized and renormalized to trace one
    double raw_trace = 0.0;  // mean squared norm before renormalization
};

/// Empirical second moment (1/N) sum |psi_i><psi_i|.
EnsembleDensity ensemble_density(const Ensemble& ens);

struct UnravelConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int record_every = 1;
    AlphaPolicy alpha_policy;
    double eps_floor = 0.0;        // 0 = default 1e-8 * trace / dim
    double degeneracy_tol = 1e-12;
    int threads = 1;
};

struct UnravelSample {
    double time = 0.0;
    DensityMatrix rho;
    double raw_trace = 1.0;
    double alpha = 0.0;
    double gamma = 0.0;
    long jumps = 0;   // jumps since the previous recorded sample
};

struct UnravelResult {
    std::vector<UnravelSample> samples;
    long total_jumps = 0;
};

/// Mean-field propagation: one ensemble average per step feeds the jump and
/// friction operators that advance every member of that step. Each member
/// jumps with probability 1 - exp(-gamma dt), otherwise follows the modified
/// Schroedinger flow. Bit-for-bit reproducible for a fixed seed regardless
/// of thread count.
UnravelResult run_unraveling(Ensemble ens, const ModelSpec& model, const EnvironmentSpec& env,
                             const UnravelConfig& config);

}  // namespace tqme
