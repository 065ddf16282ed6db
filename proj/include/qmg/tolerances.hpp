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

#include <map>
#include <string>

#include "qmg/errors.hpp"

namespace qmg {

/// Numerical thresholds used throughout the library. Every threshold can be
/// overridden by name (the CLI exposes this via repeatable --tol NAME=VALUE).
struct Tolerances {
  /// Relative singular-value cutoff for numerical rank decisions.
  double rank = 1e-10;
  /// Subspace equality / containment: ||P_U - P_W||_F < eq * ambient_dim.
  double eq = 1e-8;
  /// Relation axiom checks: residual norm < axiom * ||input||.
  double axiom = 1e-8;
  /// CP check: minimal Choi eigenvalue >= -psd * spectral scale.
  double psd = 1e-9;
  /// Classical edge detection: p(y|x1) * p(y|x2) > edge.
  double edge = 1e-12;
  /// Matrix-entry significance cutoff (to_classical and friends).
  double entry = 1e-10;
  /// Allowed relative non-Hermiticity of eigensolver inputs.
  double hermitian = 1e-8;
  /// Kraus operators with max |entry| below this are dropped.
  double kraus_drop = 1e-12;

  Tolerances with_overrides(const std::map<std::string, double>& values) const {
    Tolerances t = *this;
    for (const auto& [name, v] : values) {
      if (name == "tol_rank")
        t.rank = v;
      else if (name == "tol_eq")
        t.eq = v;
      else if (name == "tol_axiom")
        t.axiom = v;
      else if (name == "tol_psd")
        t.psd = v;
      else if (name == "tol_edge")
        t.edge = v;
      else if (name == "tol_entry")
        t.entry = v;
      else if (name == "tol_hermitian")
        t.hermitian = v;
      else if (name == "tol_kraus_drop")
        t.kraus_drop = v;
      else
        throw ArgumentError("unknown tolerance name: " + name);
    }
    return t;
  }
};

}  // namespace qmg
