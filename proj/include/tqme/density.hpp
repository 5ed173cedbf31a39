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

#include "tqme/linalg.hpp"

namespace tqme {

struct PhysicalConstants {
    double hbar = 1.0;
    double k_B = 1.0;
};

/// Hermitian, trace-one, positive-semidefinite statistical operator.
/// Hermiticity and trace are checked at construction; positivity is checked
/// explicitly via min_eigenvalue (the integrators monitor rather than
/// enforce it).
class DensityMatrix {
  public:
    explicit DensityMatrix(const Operator& op, double psd_tol = 1e-10);

    const Operator& op() const { return op_; }
    int dim() const { return op_.dim(); }
    double psd_tol() const { return psd_tol_; }

    double min_eigenvalue() const;

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int dim);

  private:
    Operator op_;
    double psd_tol_;
};

/// Eigenbasis of a density matrix with eigenvalues floored away from zero.
/// All the rho-weighted calculus is carried out in this basis.
struct RhoBasis {
    Operator V;              // unitary of eigenvectors
    std::vector<double> p;   // floored eigenvalues, ascending
    int dim() const { return V.dim(); }

    /// V diag(g(p)) V^dag.
    Operator assemble(const std::function<double(double)>& g) const;
    /// V^dag A V.
    Operator to_eigenbasis(const Operator& A) const;
    /// V B V^dag.
    Operator from_eigenbasis(const Operator& B) const;
};

/// Default eigenvalue floor: 1e-8 * trace / dim.
double default_eps_floor(const DensityMatrix& rho);

/// Eigendecompose rho and floor each eigenvalue at eps.
RhoBasis positive_basis(const DensityMatrix& rho, double eps);

/// The Kubo-style weighted product A_rho = int_0^1 rho^l A rho^{1-l} dl,
/// computed exactly in rho's eigenbasis with logarithmic-mean weights
/// w(p_m, p_n) = (p_m - p_n)/(ln p_m - ln p_n), arithmetic mean on
/// near-degenerate pairs.
Operator rho_weighted(const Operator& A, const RhoBasis& basis, double degeneracy_tol = 1e-12);
Operator rho_weighted(const Operator& A, const DensityMatrix& rho, double degeneracy_tol = 1e-12);

/// Max-entry residual of [A_rho, ln rho] - [A, rho].
double check_arho_identity(const Operator& A, const DensityMatrix& rho);

/// Eigenvalue-floored inverse: p -> 1/max(p, eps).
Operator regularized_inverse(const DensityMatrix& rho, double eps);
Operator regularized_inverse(const RhoBasis& basis);

/// rho proportional to exp(-H/(k_B T_e)), trace one. The ground-state energy
/// is subtracted before exponentiation so low temperatures do not overflow.
DensityMatrix gibbs_state(const Operator& H, double T_e, const PhysicalConstants& consts = {});

cplx expectation(const Operator& A, const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace tqme
