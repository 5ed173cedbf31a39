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

#include <stdexcept>
#include <string>

namespace tqme {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NonPositiveEigenvalue : Error {
    using Error::Error;
};
struct InvalidDensity : Error {
    using Error::Error;
};
struct ZeroBracket : Error {
    using Error::Error;
};
struct DegenerateCoupling : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};
struct EnsembleCollapse : Error {
    using Error::Error;
};
struct ConfigParse : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace tqme
