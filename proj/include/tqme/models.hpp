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

#include "tqme/master.hpp"

namespace tqme {

/// Truncated harmonic oscillator: H = diag(hbar w (n + 1/2)), Q the position
/// operator sqrt(hbar/(2 m w)) (a + a^dag) with hard-cutoff ladder operators.
ModelSpec harmonic_oscillator(int dim, double omega = 1.0, double mass = 1.0,
                              const PhysicalConstants& consts = {});

/// Two-level system: H = (hbar w / 2) diag(1, -1), Q = sigma_x.
ModelSpec two_level(double omega = 1.0, const PhysicalConstants& consts = {});

}  // namespace tqme
