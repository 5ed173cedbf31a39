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

#include "tqme/models.hpp"

#include <cmath>

namespace tqme {

ModelSpec harmonic_oscillator(int dim, double omega, double mass, const PhysicalConstants& consts) {
    if (dim < 2) throw ConfigParse("harmonic_oscillator: dim must be >= 2");
    if (omega <= 0.0 || mass <= 0.0)
        throw ConfigParse("harmonic_oscillator: omega and mass must be > 0");
    ModelSpec model;
    model.dim = dim;
    model.name = "oscillator";
    model.H = Operator(dim);
    model.Q = Operator(dim);
    const double x0 = std::sqrt(consts.hbar / (2.0 * mass * omega));
    for (int n = 0; n < dim; ++n) {
        model.H(n, n) = consts.hbar * omega * (n + 0.5);
        if (n + 1 < dim) {
            // <n|x|n+1> = x0 sqrt(n+1)
            const double v = x0 * std::sqrt(static_cast<double>(n + 1));
            model.Q(n, n + 1) = v;
            model.Q(n + 1, n) = v;
        }
    }
    model.validate();
    return model;
}

ModelSpec two_level(double omega, const PhysicalConstants& consts) {
    if (omega <= 0.0) throw ConfigParse("two_level: omega must be > 0");
    ModelSpec model;
    model.dim = 2;
    model.name = "two-level";
    model.H = Operator::diagonal({0.5 * consts.hbar * omega, -0.5 * consts.hbar * omega});
    model.Q = Operator(2);
    model.Q(0, 1) = 1.0;
    model.Q(1, 0) = 1.0;
    model.validate();
    return model;
}

}  // namespace tqme
