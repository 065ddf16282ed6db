// Copyright 2026 The qmg Authors
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

namespace qmg {

/// Base class for all qmg errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix / tensor shapes.
struct DimensionError : Error {
  using Error::Error;
};

/// Bad argument outside of shape issues (index out of range, non-bijective
/// permutation, negative probability, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// A constructed object violates one of its structural invariants. Carries
/// the name of the failed rule plus a human-readable witness.
struct ValidationError : Error {
  std::string failed_rule;
  ValidationError(std::string rule, const std::string& msg)
      : Error(msg), failed_rule(std::move(rule)) {}
};

/// The requested computation is only defined for a restricted class of
/// inputs (e.g. diagonal algebras, single-block output).
struct UnsupportedError : Error {
  using Error::Error;
};

/// A precondition of an operation does not hold (non-symmetric relation
/// passed to synthesis, non-Hermitian matrix to the eigensolver, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Operator that should be positive semidefinite is not.
struct NotCpError : Error {
  using Error::Error;
};

/// An internal cross-check failed; indicates a convention bug or an input
/// that slipped past validation, not a numerical tolerance issue.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace qmg
