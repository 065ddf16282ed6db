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

#include <array>
#include <cstddef>
#include <set>

#include "qmg/errors.hpp"

namespace qmg {

/// A labeled multigraph on the pair of finite sets (X, Y): a set of triples
/// (x1, x2, y) meaning "x1 and x2 are related through the label y".
/// Indices are 0-based.
struct ClassicalMultiRelation {
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::set<std::array<std::size_t, 3>> triples;

  void insert(std::size_t x1, std::size_t x2, std::size_t y) {
    if (x1 >= x_size || x2 >= x_size || y >= y_size)
      throw ArgumentError("classical triple index out of range");
    triples.insert({x1, x2, y});
  }

  bool operator==(const ClassicalMultiRelation& o) const {
    return x_size == o.x_size && y_size == o.y_size && triples == o.triples;
  }

  static ClassicalMultiRelation complete(std::size_t x_size,
                                         std::size_t y_size) {
    ClassicalMultiRelation r{x_size, y_size, {}};
    for (std::size_t x1 = 0; x1 < x_size; ++x1)
      for (std::size_t x2 = 0; x2 < x_size; ++x2)
        for (std::size_t y = 0; y < y_size; ++y) r.insert(x1, x2, y);
    return r;
  }
};

}  // namespace qmg
