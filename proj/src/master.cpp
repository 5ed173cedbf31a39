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

#include "tqme/master.hpp"

#include <cmath>

namespace tqme {

void EnvironmentSpec::validate() const {
    if (c_hh < 0.0) throw ConfigParse("EnvironmentSpec: c_hh must be >= 0");
    if (consts.hbar <= 0.0 || consts.k_B <= 0.0)
        throw ConfigParse("EnvironmentSpec: constants must be > 0");
    if (equilibrium) {
        if (T_e <= 0.0) throw ConfigParse("EnvironmentSpec: equilibrium requires T_e > 0");
        if (std::abs(T_e * c_hs - c_hh) > 1e-12 * std::max(1.0, c_hh))
            throw ConfigParse("EnvironmentSpec: equilibrium requires T_e * c_hs = c_hh");
    }
}

EnvironmentSpec EnvironmentSpec::equilibrium_env(double c_hh, double T_e,
                                                 PhysicalConstants consts) {
    EnvironmentSpec env;
    env.c_hh = c_hh;
    env.T_e = T_e;
    env.c_hs = c_hh / T_e;
    env.equilibrium = true;
    env.consts = consts;
    env.validate();
    return env;
}

void ModelSpec::validate() const {
    if (H.dim() != dim || Q.dim() != dim) throw ConfigParse("ModelSpec: dimension mismatch");
    if (H.hermiticity_defect() > 1e-10) throw NotHermitian("ModelSpec: H not self-adjoint");
    if (Q.hermiticity_defect() > 1e-10) throw NotHermitian("ModelSpec: Q not self-adjoint");
}

Operator master_rhs(const DensityMatrix& rho, const ModelSpec& model, const EnvironmentSpec& env,
                    const NumericOptions& opts) {
    if (rho.dim() != model.dim) throw DimensionMismatch("master_rhs: dims differ");
    const cplx i_unit(0.0, 1.0);
    Operator rhs = (i_unit / env.consts.hbar) * commutator(rho.op(), model.H);
    if (env.c_hs != 0.0 || env.c_hh != 0.0) {
        const double eps = opts.eps_floor > 0.0 ? opts.eps_floor : default_eps_floor(rho);
        const RhoBasis basis = positive_basis(rho, eps);
        if (env.c_hs != 0.0) {
            const Operator qh_rho =
                rho_weighted(commutator(model.Q, model.H), basis, opts.degeneracy_tol);
            rhs -= (env.c_hs / env.consts.k_B) * commutator(model.Q, qh_rho);
        }
        if (env.c_hh != 0.0)
            rhs -= cplx(env.c_hh) * commutator(model.Q, commutator(model.Q, rho.op()));
    }
    return rhs;
}

OracleResult integrate_oracle(const DensityMatrix& rho0, const ModelSpec& model,
                              const EnvironmentSpec& env, double dt, double t_end,
                              int record_every, const NumericOptions& opts) {
    if (dt <= 0.0 || t_end < 0.0) throw ConfigParse("integrate_oracle: dt > 0, t_end >= 0 required");
    if (record_every < 1) throw ConfigParse("integrate_oracle: record_every >= 1 required");
    model.validate();
    env.validate();

    const double h_norm = spectral_norm(model.H, 1e-10);
    const double q_norm = spectral_norm(model.Q, 1e-10);
    const double rate = h_norm / env.consts.hbar + env.c_hh * q_norm * q_norm;
    if (dt * rate > 0.1)
        throw StepTooLarge("integrate_oracle: dt * (||H||/hbar + c_hh ||Q||^2) = " +
                           std::to_string(dt * rate) + " > 0.1");

    const long steps = std::lround(t_end / dt);
    const int n = model.dim;

    OracleResult result;
    result.min_eigenvalue_seen = 1.0;

    Operator rho = rho0.op();
    auto symmetrize = [n](Operator& a) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
                a(i, j) = m;
                a(j, i) = std::conj(m);
            }
    };

    auto record = [&](long step) {
        DensityMatrix dm(rho);
        result.max_trace_drift = std::max(result.max_trace_drift, std::abs(rho.trace().real() - 1.0));
        result.max_hermiticity_defect =
            std::max(result.max_hermiticity_defect, rho.hermiticity_defect());
        const double min_ev = dm.min_eigenvalue();
        result.min_eigenvalue_seen = std::min(result.min_eigenvalue_seen, min_ev);
        if (min_ev < -1e-6) result.positivity_warning = true;
        result.samples.push_back({static_cast<double>(step) * dt, dm});
    };

    record(0);
    for (long step = 0; step < steps; ++step) {
        const Operator k1 = master_rhs(DensityMatrix(rho), model, env, opts);
        Operator y2 = rho;
        y2 += (0.5 * dt) * k1;
        const Operator k2 = master_rhs(DensityMatrix(y2), model, env, opts);
        Operator y3 = rho;
        y3 += (0.5 * dt) * k2;
        const Operator k3 = master_rhs(DensityMatrix(y3), model, env, opts);
        Operator y4 = rho;
        y4 += cplx(dt) * k3;
        const Operator k4 = master_rhs(DensityMatrix(y4), model, env, opts);

        Operator incr = k1;
        incr += cplx(2.0) * k2;
        incr += cplx(2.0) * k3;
        incr += k4;
        rho += (dt / 6.0) * incr;
        symmetrize(rho);

        if ((step + 1) % record_every == 0 || step + 1 == steps) record(step + 1);
    }
    return result;
}

}  // namespace tqme
