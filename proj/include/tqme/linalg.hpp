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

#include <complex>
#include <functional>
#include <vector>

#include "tqme/errors.hpp"

namespace tqme {

using cplx = std::complex<double>;

/// Dense complex square matrix, row-major. The universal carrier for H, Q,
/// the jump and friction operators, and density matrices.
class Operator {
  public:
    Operator() = default;
    explicit Operator(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
        if (dim < 1) throw DimensionMismatch("Operator: dim must be >= 1");
    }

    static Operator identity(int dim);
    static Operator zero(int dim) { return Operator(dim); }
    static Operator diagonal(const std::vector<double>& d);

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    Operator& operator+=(const Operator& b);
    Operator& operator-=(const Operator& b);
    Operator& operator*=(cplx s);

    Operator adjoint() const;
    cplx trace() const;

    /// Largest entry magnitude.
    double max_abs() const;
    /// Frobenius norm.
    double frob_norm() const;
    /// max |A - A^dag| over entries.
    double hermiticity_defect() const;

    bool all_finite() const;

  private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, Operator a);

/// State vector in the underlying Hilbert space. Norm is not required to be
/// one; trajectories of the jump process are deliberately unnormalized.
struct StateVector {
    std::vector<cplx> amp;

    StateVector() = default;
    explicit StateVector(int dim) : amp(static_cast<size_t>(dim)) {}

    int dim() const { return static_cast<int>(amp.size()); }
    double norm_sq() const;

    static StateVector basis_state(int dim, int k);
};

/// Apply A to psi.
StateVector apply(const Operator& A, const StateVector& psi);

/// |psi><phi| outer product.
Operator outer(const StateVector& psi, const StateVector& phi);

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the unitary of column eigenvectors.
struct Spectrum {
    std::vector<double> eigenvalues;
    Operator eigenvectors;
};

/// Cyclic Jacobi diagonalization for Hermitian matrices. Deterministic:
/// identical input gives identical output, ties resolved by making the first
/// nonzero component of each eigenvector real positive.
Spectrum hermitian_eig(const Operator& A, double hermiticity_tol = 1e-10);

/// AB - BA.
Operator commutator(const Operator& A, const Operator& B);

/// V f(lambda) V^dag for Hermitian A. Throws DomainError if f is not finite
/// on some eigenvalue.
Operator matrix_function(const Operator& A, const std::function<double(double)>& f,
                         double hermiticity_tol = 1e-10);

/// Spectral norm (largest |eigenvalue|) of a Hermitian matrix.
double spectral_norm(const Operator& A, double hermiticity_tol = 1e-8);

}  // namespace tqme
