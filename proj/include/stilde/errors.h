// Copyright 2026 The stilde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STILDE_ERRORS_H
#define STILDE_ERRORS_H

#include <stdexcept>
#include <string>

namespace stilde {

/// Malformed input: bad dimensions, geometry that does not fit, unparseable configs.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input outside the exactly computable scope (non-abelian quotient, non-Clifford gate, ...).
struct ScopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonCommutativeQuotient : ScopeError {
    using ScopeError::ScopeError;
};

struct PhaseIncoherence : ScopeError {
    using ScopeError::ScopeError;
};

struct NonGroupLikeFusion : ScopeError {
    using ScopeError::ScopeError;
};

/// A checked property failed (frustrated model, missing vacuum, ...).
struct PropertyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The dense oracle refuses instances above its amplitude cap.
struct CapExceeded : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace stilde

#endif
