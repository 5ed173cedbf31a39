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

#include "tqme/linalg.hpp"
#include "tqme/validate.hpp"

using namespace tqme;

namespace {

Operator pauli_x() {
    Operator s(2);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
}

Operator pauli_y() {
    Operator s(2);
    s(0, 1) = cplx(0.0, -1.0);
    s(1, 0) = cplx(0.0, 1.0);
    return s;
}

Operator reconstruct(const Spectrum& s) {
    const int n = s.eigenvectors.dim();
    Operator rec(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += s.eigenvectors(i, k) * s.eigenvalues[static_cast<size_t>(k)] *
                       std::conj(s.eigenvectors(j, k));
            rec(i, j) = acc;
        }
    return rec;
}

}  // namespace

TEST_CASE("hermitian_eig: identity and diagonal cases") {
    const Spectrum s3 = hermitian_eig(Operator::identity(3));
    for (double ev : s3.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-14));

    const Spectrum sz = hermitian_eig(Operator::diagonal({1.0, -1.0}));
    CHECK(sz.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sz.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig: random 5x5 reconstruction") {
    std::mt19937_64 rng(7);
    const Operator A = random_hermitian(rng, 5);
    const Spectrum s = hermitian_eig(A);
    CHECK((reconstruct(s) - A).max_abs() <= 1e-10 * std::max(1.0, A.frob_norm()));
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Operator::identity(5)).max_abs() <= 1e-12);
    for (size_t k = 1; k < s.eigenvalues.size(); ++k)
        CHECK(s.eigenvalues[k] >= s.eigenvalues[k - 1]);
}

TEST_CASE("hermitian_eig: reconstruction and unitarity over dims 1..32") {
    std::mt19937_64 rng(11);
    for (int dim : {1, 2, 4, 7, 12, 20, 32}) {
        const Operator A = random_hermitian(rng, dim);
        const Spectrum s = hermitian_eig(A);
        CHECK((reconstruct(s) - A).max_abs() <= 1e-10 * std::max(1.0, A.frob_norm()));
        CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Operator::identity(dim)).max_abs() <=
              1e-12);
    }
}

TEST_CASE("hermitian_eig: deterministic and rejects non-Hermitian input") {
    std::mt19937_64 rng(3);
    const Operator A = random_hermitian(rng, 6);
    const Spectrum s1 = hermitian_eig(A);
    const Spectrum s2 = hermitian_eig(A);
    for (size_t k = 0; k < s1.eigenvalues.size(); ++k)
        CHECK(s1.eigenvalues[k] == s2.eigenvalues[k]);
    CHECK((s1.eigenvectors - s2.eigenvectors).max_abs() == 0.0);

    Operator bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(bad, 1e-10), NotHermitian);
}

TEST_CASE("commutator: algebra") {
    std::mt19937_64 rng(5);
    const Operator A = random_hermitian(rng, 4);
    CHECK(commutator(A, A).max_abs() == 0.0);

    // [sigma_x, sigma_z] = -2i sigma_y, by direct 2x2 multiplication
    const Operator expected = cplx(0.0, -2.0) * pauli_y();
    CHECK((commutator(pauli_x(), Operator::diagonal({1.0, -1.0})) - expected).max_abs() <= 1e-15);

    const Operator d1 = Operator::diagonal({1.0, 2.0, 3.0});
    const Operator d2 = Operator::diagonal({-4.0, 0.5, 9.0});
    CHECK(commutator(d1, d2).max_abs() == 0.0);

    const Operator B = random_hermitian(rng, 4);
    CHECK((commutator(A, B) + commutator(B, A)).max_abs() == 0.0);
    CHECK(std::abs(commutator(A, B).trace()) <= 1e-12);

    CHECK_THROWS_AS(commutator(A, Operator::identity(3)), DimensionMismatch);
}

TEST_CASE("matrix_function: basic and composition") {
    std::mt19937_64 rng(9);
    const Operator A = random_hermitian(rng, 4);
    CHECK((matrix_function(A, [](double x) { return x; }) - A).max_abs() <= 1e-12);

    const Operator sq = matrix_function(Operator::diagonal({4.0, 9.0}),
                                        [](double x) { return std::sqrt(x); });
    CHECK((sq - Operator::diagonal({2.0, 3.0})).max_abs() <= 1e-13);

    const Operator expA = matrix_function(A, [](double x) { return std::exp(x); });
    const Operator back = matrix_function(expA, [](double x) { return std::log(x); });
    CHECK((back - A).max_abs() <= 1e-8);

    CHECK_THROWS_AS(matrix_function(Operator::diagonal({1.0, -2.0}),
                                    [](double x) { return std::log(x); }),
                    DomainError);
}
