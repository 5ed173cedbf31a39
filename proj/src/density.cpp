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

#include "tqme/density.hpp"

#include <algorithm>
#include <cmath>

namespace tqme {

DensityMatrix::DensityMatrix(const Operator& op, double psd_tol) : op_(op), psd_tol_(psd_tol) {
    if (!op.all_finite()) throw InvalidDensity("DensityMatrix: non-finite entries");
    const double hd = op.hermiticity_defect();
    if (hd > 1e-10)
        throw NotHermitian("DensityMatrix: hermiticity defect " + std::to_string(hd));
    const double tr = op.trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw InvalidDensity("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    // Store the symmetrized form.
    const int n = op_.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx m = 0.5 * (op_(i, j) + std::conj(op_(j, i)));
            op_(i, j) = m;
            op_(j, i) = std::conj(m);
        }
}

double DensityMatrix::min_eigenvalue() const {
    const Spectrum s = hermitian_eig(op_, 1e-8);
    return s.eigenvalues.front();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const double n2 = psi.norm_sq();
    if (n2 <= 0.0) throw InvalidDensity("pure: zero state vector");
    Operator P = outer(psi, psi);
    P *= 1.0 / n2;
    return DensityMatrix(P);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    Operator I = Operator::identity(dim);
    I *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(I);
}

Operator RhoBasis::assemble(const std::function<double(double)>& g) const {
    const int n = dim();
    Operator B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += V(i, k) * g(p[static_cast<size_t>(k)]) * std::conj(V(j, k));
            B(i, j) = acc;
        }
    return B;
}

Operator RhoBasis::to_eigenbasis(const Operator& A) const {
    return V.adjoint() * A * V;
}

Operator RhoBasis::from_eigenbasis(const Operator& B) const {
    return V * B * V.adjoint();
}

double default_eps_floor(const DensityMatrix& rho) {
    return 1e-8 * rho.op().trace().real() / rho.dim();
}

RhoBasis positive_basis(const DensityMatrix& rho, double eps) {
    if (eps <= 0.0) throw DomainError("positive_basis: eps must be > 0");
    const Spectrum s = hermitian_eig(rho.op(), 1e-8);
    RhoBasis b;
    b.V = s.eigenvectors;
    b.p.resize(s.eigenvalues.size());
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) b.p[i] = std::max(s.eigenvalues[i], eps);
    return b;
}

namespace {

// Logarithmic mean of two positive numbers; arithmetic mean on
// near-degenerate pairs, which is its continuous limit.
double log_mean(double pm, double pn, double degeneracy_tol) {
    if (std::abs(pm - pn) <= degeneracy_tol * std::max(pm, pn)) return 0.5 * (pm + pn);
    return (pm - pn) / (std::log(pm) - std::log(pn));
}

}  // namespace

Operator rho_weighted(const Operator& A, const RhoBasis& basis, double degeneracy_tol) {
    if (A.dim() != basis.dim()) throw DimensionMismatch("rho_weighted: dims differ");
    for (double pv : basis.p)
        if (pv <= 0.0) throw NonPositiveEigenvalue("rho_weighted: eigenvalue <= 0");
    const int n = basis.dim();
    Operator At = basis.to_eigenbasis(A);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            At(m, k) *= log_mean(basis.p[static_cast<size_t>(m)], basis.p[static_cast<size_t>(k)],
                                 degeneracy_tol);
    return basis.from_eigenbasis(At);
}

Operator rho_weighted(const Operator& A, const DensityMatrix& rho, double degeneracy_tol) {
    const Spectrum s = hermitian_eig(rho.op(), 1e-8);
    RhoBasis b{s.eigenvectors, s.eigenvalues};
    return rho_weighted(A, b, degeneracy_tol);
}

double check_arho_identity(const Operator& A, const DensityMatrix& rho) {
    const Spectrum s = hermitian_eig(rho.op(), 1e-8);
    for (double pv : s.eigenvalues)
        if (pv <= 0.0) throw NonPositiveEigenvalue("check_arho_identity: rho not strictly positive");
    RhoBasis b{s.eigenvectors, s.eigenvalues};
    const Operator Arho = rho_weighted(A, b);
    const Operator lnrho = b.assemble([](double p) { return std::log(p); });
    const Operator lhs = commutator(Arho, lnrho);
    const Operator rhs = commutator(A, rho.op());
    return (lhs - rhs).max_abs();
}

Operator regularized_inverse(const RhoBasis& basis) {
    return basis.assemble([](double p) { return 1.0 / p; });
}

Operator regularized_inverse(const DensityMatrix& rho, double eps) {
    return regularized_inverse(positive_basis(rho, eps));
}

DensityMatrix gibbs_state(const Operator& H, double T_e, const PhysicalConstants& consts) {
    if (T_e <= 0.0) throw DomainError("gibbs_state: T_e must be > 0");
    const Spectrum s = hermitian_eig(H, 1e-10);
    const double e0 = s.eigenvalues.front();
    const double beta_th = 1.0 / (consts.k_B * T_e);
    const int n = H.dim();
    std::vector<double> w(static_cast<size_t>(n));
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        w[static_cast<size_t>(i)] = std::exp(-beta_th * (s.eigenvalues[static_cast<size_t>(i)] - e0));
        z += w[static_cast<size_t>(i)];
    }
    Operator rho(n);
    const Operator& V = s.eigenvectors;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += V(i, k) * (w[static_cast<size_t>(k)] / z) * std::conj(V(j, k));
            rho(i, j) = acc;
        }
    return DensityMatrix(rho);
}

cplx expectation(const Operator& A, const DensityMatrix& rho) {
    if (A.dim() != rho.dim()) throw DimensionMismatch("expectation: dims differ");
    return (rho.op() * A).trace();
}

double purity(const DensityMatrix& rho) {
    return (rho.op() * rho.op()).trace().real();
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("trace_distance: dims differ");
    const Spectrum s = hermitian_eig(rho1.op() - rho2.op(), 1e-8);
    double sum = 0.0;
    for (double ev : s.eigenvalues) sum += std::abs(ev);
    return 0.5 * sum;
}

}  // namespace tqme
