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

#include "qmg/algebra.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace qmg;

TEST_CASE("matrix unit placement and relations") {
  const BlockAlgebra m2({2});
  CHECK(approx_equal(m2.matrix_unit(0, 0, 1), ComplexMatrix::unit(2, 2, 0, 1),
                     0.0));

  const BlockAlgebra two({2, 1});
  CHECK(approx_equal(two.matrix_unit(1, 0, 0), ComplexMatrix::unit(3, 3, 2, 2),
                     0.0));
  CHECK_THROWS_AS(two.matrix_unit(1, 0, 1), ArgumentError);

  // e^a_{ij} e^{a'}_{kl} = delta_{aa'} delta_{jk} e^a_{il} over all pairs.
  const BlockAlgebra alg({2, 3});
  for (const auto& u : alg.units())
    for (const auto& v : alg.units()) {
      const auto prod = alg.matrix_unit(u.block, u.i, u.j) *
                        alg.matrix_unit(v.block, v.i, v.j);
      if (u.block == v.block && u.j == v.i)
        CHECK(approx_equal(prod, alg.matrix_unit(u.block, u.i, v.j), 0.0));
      else
        CHECK(prod.frobenius_norm() == 0.0);
    }

  // Units resolve the identity.
  ComplexMatrix sum(alg.total_dim(), alg.total_dim());
  for (std::size_t a = 0; a < alg.n_blocks(); ++a)
    for (std::size_t i = 0; i < alg.block_dim(a); ++i)
      sum += alg.matrix_unit(a, i, i);
  CHECK(approx_equal(sum, alg.identity(), 0.0));
}

TEST_CASE("matrix units are HS-orthonormal") {
  const BlockAlgebra alg({2, 3});
  const auto us = alg.units();
  for (std::size_t p = 0; p < us.size(); ++p)
    for (std::size_t q = 0; q < us.size(); ++q) {
      const auto ip = hs_inner(alg.matrix_unit(us[p].block, us[p].i, us[p].j),
                               alg.matrix_unit(us[q].block, us[q].i, us[q].j));
      CHECK(ip == (p == q ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
    }
}

TEST_CASE("commutant and center") {
  CHECK(BlockAlgebra({3}).commutant().dim() == 1);

  const BlockAlgebra two({2, 1});
  const auto comm = two.commutant();
  REQUIRE(comm.dim() == 2);
  const auto expected = OperatorSubspace::from_spanning(
      3, 3, {ComplexMatrix::diag({1.0, 1.0, 0.0}),
             ComplexMatrix::diag({0.0, 0.0, 1.0})});
  CHECK(subspace_equals(comm, expected));

  CHECK(BlockAlgebra({1, 1, 1}).commutant().dim() == 3);

  // Minimality: center = commutant, and commutant elements commute with
  // every matrix unit.
  for (const BlockAlgebra& alg :
       {BlockAlgebra({2}), BlockAlgebra({2, 1}), BlockAlgebra({2, 3})}) {
    CHECK(subspace_equals(alg.center(), alg.commutant()));
    const auto comm = alg.commutant();
    for (const auto& c : comm.basis())
      for (const auto& u : alg.units()) {
        const auto e = alg.matrix_unit(u.block, u.i, u.j);
        CHECK(distance(c * e, e * c) < 1e-14);
      }
  }
}

TEST_CASE("op_rep is a linear antihomomorphism") {
  CHECK(approx_equal(op_rep(ComplexMatrix::identity(3)),
                     ComplexMatrix::identity(3), 0.0));
  CHECK(approx_equal(op_rep(ComplexMatrix::unit(2, 2, 0, 1)),
                     ComplexMatrix::unit(2, 2, 1, 0), 0.0));

  auto rng = test::Rng(21);
  for (int round = 0; round < 4; ++round) {
    const auto x = test::random_matrix(rng, 3, 3);
    const auto y = test::random_matrix(rng, 3, 3);
    CHECK(distance(op_rep(x * y), op_rep(y) * op_rep(x)) < 1e-13);
    CHECK(distance(op_rep(x + y), op_rep(x) + op_rep(y)) < 1e-15);
  }
}

TEST_CASE("comultiplication on matrix units") {
  const BlockAlgebra m2({2});
  // m*(e11) = e11 kron e11 + e12 kron e21.
  const auto expected = kron(m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 0, 0)) +
                        kron(m2.matrix_unit(0, 0, 1), m2.matrix_unit(0, 1, 0));
  CHECK(approx_equal(m2.comult_unit(0, 0, 0), expected, 0.0));

  // m(m*(e^a_{ij})) = n_a e^a_{ij}; for M2 this gives 2 e11.
  CHECK(approx_equal(m2.mult_apply(m2.comult_unit(0, 0, 0)),
                     2.0 * m2.matrix_unit(0, 0, 0), 1e-13));
  const BlockAlgebra alg({2, 3});
  CHECK(approx_equal(alg.mult_apply(alg.comult_unit(1, 0, 2)),
                     3.0 * alg.matrix_unit(1, 0, 2), 1e-13));
}

TEST_CASE("comultiplication is adjoint to multiplication") {
  // <m*(z), x kron y> = <z, x y> for algebra elements.
  const BlockAlgebra alg({2, 1});
  auto rng = test::Rng(33);
  auto random_element = [&] {
    ComplexMatrix x(3, 3);
    for (const auto& u : alg.units())
      x += rng.cgaussian() * alg.matrix_unit(u.block, u.i, u.j);
    return x;
  };
  for (int round = 0; round < 3; ++round) {
    const auto x = random_element();
    const auto y = random_element();
    for (const auto& u : alg.units()) {
      const auto z = alg.matrix_unit(u.block, u.i, u.j);
      const auto lhs = hs_inner(alg.comult_unit(u.block, u.i, u.j), kron(x, y));
      const auto rhs = hs_inner(z, x * y);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("algebra membership") {
  const BlockAlgebra alg({2, 1});
  CHECK(alg.is_member(alg.matrix_unit(0, 0, 1), 1e-12));
  CHECK_FALSE(alg.is_member(ComplexMatrix::unit(3, 3, 0, 2), 1e-12));
  CHECK_THROWS_AS(
      AlgebraElement::make(alg, ComplexMatrix::unit(3, 3, 0, 2)),
      ValidationError);
  const auto el = AlgebraElement::make(alg, alg.matrix_unit(1, 0, 0));
  CHECK(el.matrix.rows() == 3);
}
