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

#include <random>
#include <string>
#include <vector>

#include "tqme/config.hpp"

namespace tqme {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;       // worst observed residual or defect
    double tolerance = 0.0;
    std::string detail;
};

/// Random Hermitian matrix with entries of order one.
Operator random_hermitian(std::mt19937_64& rng, int dim);

/// Random density matrix with all eigenvalues >= min_eigenvalue.
DensityMatrix random_density(std::mt19937_64& rng, int dim, double min_eigenvalue);

/// The full invariant suite across all modules; every listed property maps
/// to one named check. Deterministic for a fixed seed.
std::vector<CheckResult> run_all_checks(uint64_t seed);

}  // namespace tqme
