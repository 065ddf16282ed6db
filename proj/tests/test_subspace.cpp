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

#include "qmg/subspace.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace qmg;

namespace {
ComplexMatrix e(std::size_t n, std::size_t i, std::size_t j) {
  return ComplexMatrix::unit(n, n, i, j);
}
}  // namespace

TEST_CASE("from_spanning drops dependent and negligible directions") {
  const auto id = ComplexMatrix::identity(3);
  const auto s = OperatorSubspace::from_spanning(3, 3, {id, 2.0 * id});
  REQUIRE(s.dim() == 1);
  // Basis is I/sqrt(3) up to phase.
  CHECK(std::abs(std::abs(s.basis()[0](0, 0)) - 1.0 / std::sqrt(3.0)) < 1e-12);

  const auto two =
      OperatorSubspace::from_spanning(2, 2, {e(2, 0, 0), e(2, 1, 1)});
  CHECK(two.dim() == 2);

  auto rng = test::Rng(2);
  const auto a = test::random_matrix(rng, 2, 2);
  const auto b = test::random_matrix(rng, 2, 2);
  const auto perturbed = a + Complex(1e-15, 0.0) * b;
  const auto s2 = OperatorSubspace::from_spanning(2, 2, {a, perturbed});
  CHECK(s2.dim() == 1);

  const auto empty = OperatorSubspace::from_spanning(2, 2, {});
  CHECK(empty.dim() == 0);
  CHECK(empty.projector().frobenius_norm() == 0.0);
}

TEST_CASE("basis is HS-orthonormal and the projector fixes it") {
  auto rng = test::Rng(9);
  std::vector<ComplexMatrix> gens;
  for (int k = 0; k < 5; ++k) gens.push_back(test::random_matrix(rng, 3, 3));
  const auto s = OperatorSubspace::from_spanning(3, 3, gens);
  REQUIRE(s.dim() == 5);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const Complex g = hs_inner(s.basis()[i], s.basis()[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  // P vec(b) = vec(b), P Hermitian idempotent, trace = dim.
  const auto& p = s.projector();
  CHECK(distance(p, p.adjoint()) < 1e-12);
  CHECK(distance(p * p, p) < 1e-12);
  CHECK(std::abs(p.trace() - Complex(5.0, 0.0)) < 1e-10);
  for (const auto& b : s.basis()) {
    const auto pv = p * mat(vec(b), 9, 1);
    CHECK(distance(pv, mat(vec(b), 9, 1)) < 1e-12);
  }
}

TEST_CASE("from_spanning is idempotent on returned bases") {
  auto rng = test::Rng(10);
  std::vector<ComplexMatrix> gens;
  for (int k = 0; k < 4; ++k) gens.push_back(test::random_matrix(rng, 2, 3));
  const auto s = OperatorSubspace::from_spanning(2, 3, gens);
  const auto rebuilt = OperatorSubspace::from_spanning(2, 3, s.basis());
  CHECK(subspace_equals(s, rebuilt));
  CHECK(projector_distance(s, rebuilt) < 1e-12);
}

TEST_CASE("equality and containment") {
  const auto u = OperatorSubspace::from_spanning(2, 2, {e(2, 0, 1)});
  const auto w = OperatorSubspace::from_spanning(2, 2, {e(2, 1, 0)});
  CHECK(subspace_equals(u, u));
  CHECK_FALSE(subspace_equals(u, w));

  const auto full = OperatorSubspace::from_spanning(
      2, 2, {e(2, 0, 0), e(2, 0, 1), e(2, 1, 0), e(2, 1, 1)});
  CHECK(subspace_contains(full, u));
  CHECK(subspace_contains(full, w));
  CHECK_FALSE(subspace_contains(u, full));
  CHECK_THROWS_AS(subspace_equals(u, OperatorSubspace::zero(3, 3)),
                  ArgumentError);
}

TEST_CASE("product, adjoint, sum") {
  const auto u = OperatorSubspace::from_spanning(2, 2, {e(2, 0, 1)});
  const auto w = OperatorSubspace::from_spanning(2, 2, {e(2, 1, 0)});

  const auto prod = subspace_product(u, w);
  REQUIRE(prod.dim() == 1);
  CHECK(subspace_equals(prod,
                        OperatorSubspace::from_spanning(2, 2, {e(2, 0, 0)})));

  CHECK(subspace_equals(subspace_adjoint(u), w));

  const auto sum = subspace_sum(
      OperatorSubspace::from_spanning(2, 2, {e(2, 0, 0)}),
      OperatorSubspace::from_spanning(2, 2, {e(2, 1, 1)}));
  CHECK(sum.dim() == 2);
}

TEST_CASE("membership residual") {
  const auto u = OperatorSubspace::from_spanning(2, 2, {e(2, 0, 1)});
  CHECK(u.contains_matrix(Complex(3.0, -2.0) * e(2, 0, 1), 1e-10));
  CHECK_FALSE(u.contains_matrix(e(2, 1, 0), 1e-10));
  CHECK(u.membership_residual(e(2, 1, 0)) == doctest::Approx(1.0));
}
