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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tqme/models.hpp"
#include "tqme/unravel.hpp"
#include "tqme/validate.hpp"

using namespace tqme;

TEST_CASE("compute_beta and compute_gamma_alpha_sq") {
    EnvironmentSpec env;
    env.c_hh = 1.0;
    env.c_hs = 0.0;
    CHECK(compute_beta(env) == 0.0);

    const EnvironmentSpec eq = EnvironmentSpec::equilibrium_env(1.0, 1.0);
    CHECK(compute_beta(eq) == doctest::Approx(0.5).epsilon(1e-15));

    EnvironmentSpec scaled = env;
    scaled.c_hh = 7.0;
    scaled.c_hs = 7.0 * eq.c_hs;
    EnvironmentSpec base = env;
    base.c_hh = 1.0;
    base.c_hs = eq.c_hs;
    CHECK(compute_beta(scaled) == doctest::Approx(compute_beta(base)).epsilon(1e-15));

    EnvironmentSpec zero;
    CHECK_THROWS_AS(compute_beta(zero), ZeroBracket);

    CHECK(compute_gamma_alpha_sq(eq) == doctest::Approx(2.0).epsilon(1e-15));
    env.c_hh = 0.25;
    CHECK(compute_gamma_alpha_sq(env) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(compute_gamma_alpha_sq(zero) == 0.0);
}

TEST_CASE("solve_alpha: worked two-level value alpha^2 = 0.8") {
    // rho = I/2, Q = sigma_x, H = sigma_z/2, beta = 1/2. The two traces are
    // tr(Q rho Q) = 1 and tr([Q,H]_rho rho^{-1} [Q,H]_rho) = -1, so
    // alpha^2 = 1/(1 + beta^2) = 0.8.
    const ModelSpec model = two_level(1.0);
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    const double alpha = solve_alpha(rho, 0.5, model, AlphaPolicy{});
    CHECK(alpha * alpha == doctest::Approx(0.8).epsilon(1e-12));

    // beta = 0 collapses to 1/tr(Q rho Q)
    const double alpha0 = solve_alpha(rho, 0.0, model, AlphaPolicy{});
    CHECK(alpha0 * alpha0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_alpha: jump normalization cross-check tr(Qt rho Qt^dag) = 1") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        const DensityMatrix rho = random_density(rng, dim, 1e-3);
        ModelSpec model;
        model.dim = dim;
        model.name = "random";
        model.H = random_hermitian(rng, dim);
        model.Q = random_hermitian(rng, dim);
        const RhoBasis basis = positive_basis(rho, default_eps_floor(rho));
        JumpParameters params;
        params.beta = 0.7;
        params.alpha = solve_alpha(basis, params.beta, model, AlphaPolicy{});
        const Operator Qt = jump_operator(basis, params, model);
        const Operator rho_f = basis.assemble([](double p) { return p; });
        CHECK(std::abs((Qt * rho_f * Qt.adjoint()).trace().real() - 1.0) <= 1e-10);
    }
}

TEST_CASE("solve_alpha: degenerate coupling") {
    ModelSpec model = two_level(1.0);
    model.Q = Operator::zero(2);
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    CHECK_THROWS_AS(solve_alpha(rho, 0.0, model, AlphaPolicy{}), DegenerateCoupling);
}

TEST_CASE("jump_operator: beta = 0 gives alpha Q") {
    const ModelSpec model = two_level(1.0);
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    JumpParameters params;
    params.alpha = 0.9;
    params.beta = 0.0;
    Operator expected = model.Q;
    expected *= 0.9;
    CHECK((jump_operator(rho, params, model) - expected).max_abs() <= 1e-14);
}

TEST_CASE("friction_operator: Q = 0 gives (gamma/2) identity") {
    ModelSpec model = two_level(1.0);
    model.Q = Operator::zero(2);
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    JumpParameters params;
    params.alpha = 1.0;
    params.beta = 0.4;
    params.gamma = 3.0;
    Operator expected = Operator::identity(2);
    expected *= 1.5;
    CHECK((friction_operator(rho, params, model) - expected).max_abs() <= 1e-14);
}

TEST_CASE("friction_operator: tr(Lambda rho) = 0 with exact alpha") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        const DensityMatrix rho = random_density(rng, dim, 1e-3);
        ModelSpec model;
        model.dim = dim;
        model.name = "random";
        model.H = random_hermitian(rng, dim);
        model.Q = random_hermitian(rng, dim);
        const RhoBasis basis = positive_basis(rho, default_eps_floor(rho));
        JumpParameters params;
        params.beta = -0.6;
        params.alpha = solve_alpha(basis, params.beta, model, AlphaPolicy{});
        params.gamma = 2.5;
        const Operator L = friction_operator(basis, params, model);
        const Operator rho_f = basis.assemble([](double p) { return p; });
        CHECK(std::abs((L * rho_f).trace().real()) <= 1e-10);
    }
}

TEST_CASE("second_moment_identity_residual") {
    // Q = 0: both sides vanish
    {
        ModelSpec model = two_level(1.0);
        model.Q = Operator::zero(2);
        JumpParameters params;
        params.alpha = 1.3;
        params.beta = 0.2;
        params.gamma = 2.0;
        CHECK(second_moment_identity_residual(DensityMatrix::maximally_mixed(2), params, model) <=
              1e-14);
    }
    // spec's pinned random instance shape: dim 4, alpha 0.7, beta 0.3, gamma 2
    std::mt19937_64 rng(43);
    {
        const DensityMatrix rho = random_density(rng, 4, 1e-3);
        ModelSpec model;
        model.dim = 4;
        model.name = "random";
        model.H = random_hermitian(rng, 4);
        model.Q = random_hermitian(rng, 4);
        JumpParameters params;
        params.alpha = 0.7;
        params.beta = 0.3;
        params.gamma = 2.0;
        CHECK(second_moment_identity_residual(rho, params, model) <= 1e-10);
        params.beta = 0.0;  // diffusion-only reduction
        CHECK(second_moment_identity_residual(rho, params, model) <= 1e-10);
    }
}

TEST_CASE("jump_step") {
    const StateVector psi = StateVector::basis_state(2, 0);
    CHECK((apply(Operator::identity(2), psi).amp == psi.amp));
    ModelSpec model = two_level(1.0);
    Operator Qt = model.Q;
    Qt *= 0.8;
    const StateVector out = jump_step(psi, Qt);
    CHECK(std::abs(out.amp[1] - cplx(0.8)) <= 1e-15);
    CHECK(std::abs(out.amp[0]) == 0.0);
}

TEST_CASE("deterministic_step: unitary limit preserves the norm") {
    const ModelSpec model = two_level(1.0);
    StateVector psi(2);
    psi.amp = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
    const StateVector out = deterministic_step(psi, model.H, Operator::zero(2), 1e-2);
    CHECK(std::abs(out.norm_sq() - 1.0) <= 1e-10);
}

TEST_CASE("deterministic_step: scalar exponential growth") {
    Operator lam = Operator::identity(2);
    lam *= 0.5;
    StateVector psi(2);
    psi.amp = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    const StateVector out = deterministic_step(psi, Operator::zero(2), lam, 0.02);
    CHECK(std::sqrt(out.norm_sq()) == doctest::Approx(std::exp(0.01)).epsilon(1e-10));
}

TEST_CASE("deterministic_step: RK4 order via Richardson comparison") {
    std::mt19937_64 rng(44);
    const Operator H = random_hermitian(rng, 3);
    const Operator L = random_hermitian(rng, 3);
    StateVector psi = testing::haar_state(rng, 3);

    auto err_for = [&](double dt) {
        // one step of size dt against two steps of dt/2
        const StateVector one = deterministic_step(psi, H, L, dt);
        const StateVector two =
            deterministic_step(deterministic_step(psi, H, L, 0.5 * dt), H, L, 0.5 * dt);
        double m = 0.0;
        for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(one.amp[i] - two.amp[i]));
        return m;
    };
    const double ratio = err_for(0.2) / err_for(0.1);
    CHECK(ratio > 18.0);   // ~2^5 for a 4th order one-step error
    CHECK(ratio < 45.0);
}

TEST_CASE("ensemble_density") {
    const StateVector psi0 = StateVector::basis_state(2, 0);
    Ensemble single = Ensemble::from_pure(psi0, 1, 5);
    const EnsembleDensity ed = ensemble_density(single);
    CHECK((ed.rho.op() - DensityMatrix::pure(psi0).op()).max_abs() <= 1e-14);
    CHECK(ed.raw_trace == doctest::Approx(1.0).epsilon(1e-14));

    // Haar-random members approach the maximally mixed state as N^{-1/2}
    std::mt19937_64 rng(45);
    Ensemble big;
    for (int i = 0; i < 10000; ++i) big.members.push_back(testing::haar_state(rng, 2));
    big.rngs.resize(big.members.size());
    const EnsembleDensity bd = ensemble_density(big);
    CHECK(trace_distance(bd.rho, DensityMatrix::maximally_mixed(2)) < 0.05);
}

TEST_CASE("run_unraveling: closed system matches the deterministic oracle") {
    const ModelSpec model = two_level(1.0);
    EnvironmentSpec env;  // no dissipation
    StateVector psi(2);
    psi.amp = {cplx(0.6, 0.0), cplx(0.0, 0.8)};

    UnravelConfig uc;
    uc.dt = 1e-3;
    uc.t_end = 1.0;
    uc.record_every = 200;
    const UnravelResult res =
        run_unraveling(Ensemble::from_pure(psi, 8, 99), model, env, uc);
    CHECK(res.total_jumps == 0);

    const OracleResult oracle =
        integrate_oracle(DensityMatrix::pure(psi), model, env, uc.dt, uc.t_end, uc.record_every);
    REQUIRE(res.samples.size() == oracle.samples.size());
    for (size_t i = 0; i < res.samples.size(); ++i)
        CHECK(trace_distance(res.samples[i].rho, oracle.samples[i].rho) <= 1e-8);
}

TEST_CASE("run_unraveling: reproducible across thread counts") {
    const ModelSpec model = two_level(1.0);
    const EnvironmentSpec env = EnvironmentSpec::equilibrium_env(0.25, 1.0);
    UnravelConfig uc;
    uc.dt = 1e-3;
    uc.t_end = 0.1;
    uc.record_every = 25;
    uc.eps_floor = 1e-2;
    auto run_with = [&](int threads) {
        uc.threads = threads;
        return run_unraveling(Ensemble::from_pure(StateVector::basis_state(2, 0), 300, 2024),
                              model, env, uc);
    };
    const UnravelResult a = run_with(1);
    const UnravelResult b = run_with(3);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(a.total_jumps == b.total_jumps);
    for (size_t i = 0; i < a.samples.size(); ++i) {
        CHECK((a.samples[i].rho.op() - b.samples[i].rho.op()).max_abs() == 0.0);
        CHECK(a.samples[i].raw_trace == b.samples[i].raw_trace);
    }
}

TEST_CASE("run_unraveling: config validation") {
    const ModelSpec model = two_level(1.0);
    EnvironmentSpec env;
    UnravelConfig uc;
    CHECK_THROWS_AS(run_unraveling(Ensemble::from_pure(StateVector::basis_state(2, 0), 1, 1),
                                   model, env, uc),
                    ConfigParse);
    uc.dt = -1.0;
    CHECK_THROWS_AS(run_unraveling(Ensemble::from_pure(StateVector::basis_state(2, 0), 4, 1),
                                   model, env, uc),
                    ConfigParse);
}
