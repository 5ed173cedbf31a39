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

#include "tqme/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tqme {

Operator Operator::identity(int dim) {
    Operator I(dim);
    for (int i = 0; i < dim; ++i) I(i, i) = 1.0;
    return I;
}

Operator Operator::diagonal(const std::vector<double>& d) {
    Operator A(static_cast<int>(d.size()));
    for (int i = 0; i < A.dim(); ++i) A(i, i) = d[static_cast<size_t>(i)];
    return A;
}

Operator& Operator::operator+=(const Operator& b) {
    if (dim_ != b.dim_) throw DimensionMismatch("Operator +=: dims differ");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

Operator& Operator::operator-=(const Operator& b) {
    if (dim_ != b.dim_) throw DimensionMismatch("Operator -=: dims differ");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Operator Operator::adjoint() const {
    Operator B(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) B(j, i) = std::conj((*this)(i, j));
    return B;
}

cplx Operator::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double Operator::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Operator::frob_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Operator::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool Operator::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Operator operator+(Operator a, const Operator& b) {
    a += b;
    return a;
}

Operator operator-(Operator a, const Operator& b) {
    a -= b;
    return a;
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("Operator *: dims differ");
    const int n = a.dim();
    Operator c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Operator operator*(cplx s, Operator a) {
    a *= s;
    return a;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& v : amp) s += std::norm(v);
    return s;
}

StateVector StateVector::basis_state(int dim, int k) {
    StateVector psi(dim);
    psi.amp[static_cast<size_t>(k)] = 1.0;
    return psi;
}

StateVector apply(const Operator& A, const StateVector& psi) {
    if (A.dim() != psi.dim()) throw DimensionMismatch("apply: dims differ");
    const int n = A.dim();
    StateVector out(n);
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += A(i, j) * psi.amp[static_cast<size_t>(j)];
        out.amp[static_cast<size_t>(i)] = s;
    }
    return out;
}

Operator outer(const StateVector& psi, const StateVector& phi) {
    if (psi.dim() != phi.dim()) throw DimensionMismatch("outer: dims differ");
    const int n = psi.dim();
    Operator A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = psi.amp[static_cast<size_t>(i)] * std::conj(phi.amp[static_cast<size_t>(j)]);
    return A;
}

namespace {

double offdiag_frob(const Operator& A) {
    double s = 0.0;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating A(p,q). A is updated in place as
// U^dag A U, V as V U, with the 2x2 block of U being
//   [ c           s e^{i phi} ]
//   [ -s e^{-i phi}    c      ]
// and phi the phase of A(p,q).
void jacobi_rotate(Operator& A, Operator& V, int p, int q) {
    const cplx apq = A(p, q);
    const double az = std::abs(apq);
    if (az == 0.0) return;
    const cplx phase = apq / az;
    const double app = A(p, p).real();
    const double aqq = A(q, q).real();
    const double tau = (aqq - app) / (2.0 * az);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx sp = s * phase;             // s e^{i phi}
    const cplx spc = s * std::conj(phase); // s e^{-i phi}

    const int n = A.dim();
    // Columns: A <- A U, V <- V U.
    for (int k = 0; k < n; ++k) {
        const cplx akp = A(k, p), akq = A(k, q);
        A(k, p) = c * akp - spc * akq;
        A(k, q) = sp * akp + c * akq;
        const cplx vkp = V(k, p), vkq = V(k, q);
        V(k, p) = c * vkp - spc * vkq;
        V(k, q) = sp * vkp + c * vkq;
    }
    // Rows: A <- U^dag A.
    for (int k = 0; k < n; ++k) {
        const cplx apk = A(p, k), aqk = A(q, k);
        A(p, k) = c * apk - sp * aqk;
        A(q, k) = spc * apk + c * aqk;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = A(p, p).real();
    A(q, q) = A(q, q).real();
}

}  // namespace

Spectrum hermitian_eig(const Operator& A, double hermiticity_tol) {
    if (!A.all_finite()) throw DomainError("hermitian_eig: non-finite entries");
    if (A.hermiticity_defect() > hermiticity_tol)
        throw NotHermitian("hermitian_eig: hermiticity defect " +
                           std::to_string(A.hermiticity_defect()) + " exceeds tolerance");
    const int n = A.dim();
    // Symmetrize to suppress roundoff drift within tolerance.
    Operator B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = 0.5 * (A(i, j) + std::conj(A(j, i)));

    Operator V = Operator::identity(n);
    const double scale = std::max(B.frob_norm(), 1e-300);
    const double stop = 1e-14 * scale;
    const int max_sweeps = 100;
    int sweep = 0;
    while (offdiag_frob(B) > stop) {
        if (++sweep > max_sweeps)
            throw NoConvergence("hermitian_eig: Jacobi sweeps exceeded");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(B(p, q)) > 1e-18 * scale) jacobi_rotate(B, V, p, q);
    }

    Spectrum spec;
    spec.eigenvalues.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) spec.eigenvalues[static_cast<size_t>(i)] = B(i, i).real();

    // Sort ascending, stable in the original column order.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return spec.eigenvalues[static_cast<size_t>(a)] < spec.eigenvalues[static_cast<size_t>(b)];
    });

    Spectrum out;
    out.eigenvalues.resize(static_cast<size_t>(n));
    out.eigenvectors = Operator(n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        out.eigenvalues[static_cast<size_t>(j)] = spec.eigenvalues[static_cast<size_t>(src)];
        // Phase convention: first component above threshold made real positive.
        cplx ph = 1.0;
        for (int i = 0; i < n; ++i) {
            const cplx v = V(i, src);
            if (std::abs(v) > 1e-12) {
                ph = std::conj(v) / std::abs(v);
                break;
            }
        }
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = ph * V(i, src);
    }
    return out;
}

Operator commutator(const Operator& A, const Operator& B) {
    if (A.dim() != B.dim()) throw DimensionMismatch("commutator: dims differ");
    return A * B - B * A;
}

Operator matrix_function(const Operator& A, const std::function<double(double)>& f,
                         double hermiticity_tol) {
    const Spectrum s = hermitian_eig(A, hermiticity_tol);
    const int n = A.dim();
    std::vector<double> fv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double y = f(s.eigenvalues[static_cast<size_t>(i)]);
        if (!std::isfinite(y))
            throw DomainError("matrix_function: f not finite at eigenvalue " +
                              std::to_string(s.eigenvalues[static_cast<size_t>(i)]));
        fv[static_cast<size_t>(i)] = y;
    }
    const Operator& V = s.eigenvectors;
    Operator B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += V(i, k) * fv[static_cast<size_t>(k)] * std::conj(V(j, k));
            B(i, j) = acc;
        }
    // Hermitize against roundoff.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx m = 0.5 * (B(i, j) + std::conj(B(j, i)));
            B(i, j) = m;
            B(j, i) = std::conj(m);
        }
    return B;
}

double spectral_norm(const Operator& A, double hermiticity_tol) {
    const Spectrum s = hermitian_eig(A, hermiticity_tol);
    double m = 0.0;
    for (double ev : s.eigenvalues) m = std::max(m, std::abs(ev));
    return m;
}

}  // namespace tqme
