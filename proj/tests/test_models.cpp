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

#include "tqme/density.hpp"
#include "tqme/models.hpp"

using namespace tqme;

TEST_CASE("harmonic_oscillator: spectrum and coupling structure") {
    const ModelSpec osc = harmonic_oscillator(10);
    for (int n = 0; n + 1 < osc.dim; ++n)
        CHECK((osc.H(n + 1, n + 1) - osc.H(n, n)).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(osc.Q(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    for (int m = 0; m < osc.dim; ++m)
        for (int n = 0; n < osc.dim; ++n)
            if (std::abs(m - n) != 1) CHECK(std::abs(osc.Q(m, n)) == 0.0);
    CHECK(osc.H.hermiticity_defect() <= 1e-12);
    CHECK(osc.Q.hermiticity_defect() <= 1e-12);
}

TEST_CASE("harmonic_oscillator: truncation diagnostic") {
    const ModelSpec osc = harmonic_oscillator(10);
    const DensityMatrix g = gibbs_state(osc.H, 1.0);  // k_B T_e = hbar w
    CHECK(g.op()(9, 9).real() < 1e-4);
}

TEST_CASE("two_level: catalog values") {
    const ModelSpec tls = two_level(1.0);
    const Spectrum s = hermitian_eig(tls.H);
    CHECK(s.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK((tls.Q * tls.Q - Operator::identity(2)).max_abs() == 0.0);

    // [Q, H] = -i w sigma_y by direct 2x2 multiplication
    Operator expected(2);
    expected(0, 1) = -1.0;
    expected(1, 0) = 1.0;
    CHECK((commutator(tls.Q, tls.H) - expected).max_abs() <= 1e-14);
}
