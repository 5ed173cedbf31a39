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

#include <string>
#include <vector>

#include "tqme/density.hpp"

namespace tqme {

/// The environment enters only through two dissipative-bracket scalars and,
/// for equilibrium constructions, a temperature.
struct EnvironmentSpec {
    double c_hh = 0.0;   // {H_e, H_e} bracket, >= 0
    double c_hs = 0.0;   // {H_e, S_e} bracket
    double T_e = 0.0;    // environment temperature; used only when > 0
    bool equilibrium = false;
    PhysicalConstants consts;

    void validate() const;

    /// c_hs = c_hh / T_e, the condition under which the Gibbs state is
    /// stationary.
    static EnvironmentSpec equilibrium_env(double c_hh, double T_e, PhysicalConstants consts = {});
};

struct ModelSpec {
    Operator H;
    Operator Q;
    int dim = 0;
    std::string name;

    void validate() const;
};

struct NumericOptions {
    double eps_floor = 0.0;        // 0 = default 1e-8 * trace / dim
    double degeneracy_tol = 1e-12;
};

/// Right-hand side of the nonlinear master equation:
///   (i/hbar)[rho, H] - (c_hs/k_B)[Q, [Q,H]_rho] - c_hh [Q, [Q, rho]].
/// Traceless and Hermitian by construction.
Operator master_rhs(const DensityMatrix& rho, const ModelSpec& model, const EnvironmentSpec& env,
                    const NumericOptions& opts = {});

struct OracleSample {
    double time = 0.0;
    DensityMatrix rho;
};

struct OracleResult {
    std::vector<OracleSample> samples;
    double min_eigenvalue_seen = 0.0;
    bool positivity_warning = false;   // min eigenvalue dipped below -1e-6
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
};

/// Classical RK4 on the matrix ODE, nonlinearity re-evaluated at every
/// stage. rho is re-symmetrized after each step; positivity is monitored at
/// recording times, not enforced.
OracleResult integrate_oracle(const DensityMatrix& rho0, const ModelSpec& model,
                              const EnvironmentSpec& env, double dt, double t_end,
                              int record_every = 1, const NumericOptions& opts = {});

}  // namespace tqme
