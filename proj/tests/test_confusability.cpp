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

#include "qmg/confusability.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace qmg;

namespace {

ChannelMap identity_channel(std::size_t n) {
  const BlockAlgebra alg({n});
  return make_channel(alg, alg, {{0, 0, ComplexMatrix::identity(n)}});
}

ChannelMap amplitude_damping(double gamma) {
  const BlockAlgebra alg({2});
  ComplexMatrix e0(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix e1(2, 2);
  e1(0, 1) = std::sqrt(gamma);
  return make_channel(alg, alg, {{0, 0, e0}, {0, 0, e1}});
}

// Completely depolarizing on M_n: Kraus e_kl / sqrt(n).
ChannelMap depolarizing(std::size_t n) {
  const BlockAlgebra alg({n});
  std::vector<KrausOperator> kraus;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      ComplexMatrix e(n, n);
      e(k, l) = 1.0 / std::sqrt(static_cast<double>(n));
      kraus.push_back({0, 0, std::move(e)});
    }
  return make_channel(alg, alg, std::move(kraus));
}

}  // namespace

TEST_CASE("single-edged graph of basic channels") {
  const auto id = confusability_graph(identity_channel(2));
  REQUIRE(id.subspace.dim() == 1);
  CHECK(id.subspace.contains_matrix(ComplexMatrix::identity(2), 1e-10));

  CHECK(confusability_graph(depolarizing(2)).subspace.dim() == 4);

  // Classical p = [[1, .5], [0, .5]]: inputs 1 and 2 confusable through
  // y = 1, so the graph is all of the 2x2 matrix units.
  const auto cl =
      confusability_graph(classical_channel({{1.0, 0.5}, {0.0, 0.5}}));
  CHECK(cl.subspace.dim() == 4);

  // A noiseless classical channel only confuses inputs with themselves.
  const auto clean = confusability_graph(
      classical_channel({{1.0, 0.0}, {0.0, 1.0}}));
  CHECK(clean.subspace.dim() == 2);
  CHECK(clean.subspace.contains_matrix(ComplexMatrix::unit(2, 2, 0, 0), 1e-10));
  CHECK_FALSE(
      clean.subspace.contains_matrix(ComplexMatrix::unit(2, 2, 0, 1), 1e-10));
}

TEST_CASE("graph contains the identity for trace-preserving channels") {
  auto rng = test::Rng(7);
  for (int round = 0; round < 4; ++round) {
    const auto phi = test::random_cptp(rng, {2, 1}, {2}, 1);
    const auto g = confusability_graph(phi);
    CHECK(g.subspace.contains_matrix(ComplexMatrix::identity(3), 1e-8));
    CHECK(subspace_equals(subspace_adjoint(g.subspace), g.subspace));
  }
}

TEST_CASE("multigraph of the identity channel") {
  const auto s = confusability_multigraph(identity_channel(2));
  REQUIRE(s.subspace.dim() == 1);
  // Spanned by sum_ij e_ij kron (theta_{e_j,e_i})^t = |vec I><vec I| / 2.
  const auto v = vec(ComplexMatrix::identity(2));
  CHECK(s.subspace.contains_matrix(outer(v, v), 1e-10));
}

TEST_CASE("multigraph dimensions: amplitude damping and Kraus-space law") {
  const auto ad = amplitude_damping(0.5);
  const auto s = confusability_multigraph(ad);
  CHECK(s.subspace.dim() == 4);
  CHECK(multigraph_expected_dim(ad) == 4);

  CHECK(multigraph_expected_dim(identity_channel(2)) == 1);
  CHECK(confusability_multigraph(depolarizing(2)).subspace.dim() == 16);
  CHECK(multigraph_expected_dim(depolarizing(2)) == 16);

  // r independent Kraus operators -> dim r^2, checked over a seeded family.
  auto rng = test::Rng(19);
  for (std::size_t r = 1; r <= 3; ++r)
    for (int round = 0; round < 3; ++round) {
      const BlockAlgebra in_alg({3});
      const BlockAlgebra out_alg({3});
      std::vector<KrausOperator> kraus;
      for (std::size_t k = 0; k < r; ++k)
        kraus.push_back({0, 0, test::random_matrix(rng, 3, 3)});
      const auto phi = make_channel(in_alg, out_alg, std::move(kraus));
      CHECK(confusability_multigraph(phi).subspace.dim() == r * r);
      CHECK(multigraph_expected_dim(phi) == r * r);
    }

  // Multi-block output is out of the statement's scope.
  auto rng2 = test::Rng(4);
  const auto blocky = test::random_cptp(rng2, {2}, {2, 1}, 1);
  CHECK_THROWS_AS(multigraph_expected_dim(blocky), UnsupportedError);
}

TEST_CASE("classical multigraph span") {
  const std::vector<std::vector<double>> p{{1.0, 0.5}, {0.0, 0.5}};
  const auto s = confusability_multigraph(classical_channel(p));
  CHECK(s.subspace.dim() == 5);

  // The expected spanning set {e_{x1 x2} kron f_yy : p(y|x1) p(y|x2) != 0}.
  const auto r = classical_confusability_multigraph(p);
  const std::set<std::array<std::size_t, 3>> expected{
      {0, 0, 0}, {1, 1, 0}, {1, 1, 1}, {0, 1, 0}, {1, 0, 0}};
  CHECK(r.triples == expected);
  for (const auto& t : r.triples) {
    const auto gen = kron(ComplexMatrix::unit(2, 2, t[0], t[1]),
                          ComplexMatrix::unit(2, 2, t[2], t[2]));
    CHECK(s.subspace.contains_matrix(gen, 1e-10));
  }

  // Noiseless permutation channel: loops only.
  const auto loops =
      classical_confusability_multigraph({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(loops.triples ==
        std::set<std::array<std::size_t, 3>>{{0, 0, 1}, {1, 1, 0}});

  // Uniform channel: the complete multigraph.
  const auto full = classical_confusability_multigraph({{0.5, 0.5},
                                                        {0.5, 0.5}});
  CHECK(full == ClassicalMultiRelation::complete(2, 2));
}

TEST_CASE("counting edges recovers the single-edged graph") {
  // Identity channel: tracing the rank-one generator gives span{I}.
  const auto id = identity_channel(2);
  const auto counted = count_edges(confusability_multigraph(id));
  CHECK(subspace_equals(counted, confusability_graph(id).subspace));
  REQUIRE(counted.dim() == 1);

  // Classical example: counting collapses the 5 labeled edges to the
  // 4-dimensional single-edged graph.
  const auto cl = classical_channel({{1.0, 0.5}, {0.0, 0.5}});
  const auto ccount = count_edges(confusability_multigraph(cl));
  CHECK(ccount.dim() == 4);
  CHECK(subspace_equals(ccount, confusability_graph(cl).subspace));

  // Zero map.
  const BlockAlgebra alg({2});
  const auto zero = make_channel(alg, alg, {});
  CHECK(count_edges(confusability_multigraph(zero)).dim() == 0);

  // Seeded random channels, including multi-block shapes.
  auto rng = test::Rng(23);
  for (int round = 0; round < 6; ++round) {
    const auto phi = (round % 2 == 0)
                         ? test::random_cptp(rng, {2, 2}, {2, 1}, 1)
                         : test::random_cptp(rng, {3}, {2, 2}, 1);
    const auto s = confusability_multigraph(phi);
    const auto g = confusability_graph(phi);
    CHECK(projector_distance(count_edges(s), g.subspace) < 1e-8);
  }
}

TEST_CASE("multigraph is independent of the Kraus decomposition") {
  auto rng = test::Rng(31);
  for (int round = 0; round < 5; ++round) {
    const auto phi = test::random_cptp(rng, {2, 1}, {2, 1}, 1);
    const auto s = confusability_multigraph(phi);

    // Channel-level re-parameterization: mix the Kraus operators of each
    // (in_block, out_block) group by a random environment isometry so the
    // block form survives.
    std::vector<KrausOperator> reparam;
    for (std::size_t b = 0; b < phi.out_alg().n_blocks(); ++b)
      for (std::size_t a = 0; a < phi.in_alg().n_blocks(); ++a) {
        std::vector<std::size_t> group;
        for (std::size_t k = 0; k < phi.kraus().size(); ++k)
          if (phi.kraus()[k].out_block == b && phi.kraus()[k].in_block == a)
            group.push_back(k);
        if (group.empty()) continue;
        const std::size_t nk = group.size();
        const auto u = test::random_isometry(rng, nk + 1, nk);
        for (std::size_t j = 0; j < nk + 1; ++j) {
          ComplexMatrix e(phi.out_alg().block_dim(b),
                          phi.in_alg().total_dim());
          for (std::size_t k = 0; k < nk; ++k)
            e += u(j, k) * phi.kraus()[group[k]].matrix;
          reparam.push_back({b, a, std::move(e)});
        }
      }
    const auto phi2 = make_channel(phi.in_alg(), phi.out_alg(), reparam);
    const auto s2 = confusability_multigraph(phi2);
    CHECK(projector_distance(s.subspace, s2.subspace) < 1e-8);

    // Module-level re-parameterization: an isometry on a whole output
    // block's environment may mix input blocks; the span of the generator
    // vectors is still unchanged.
    auto vecs = multigraph_generator_vectors(phi);
    std::vector<std::vector<CVector>> mixed(vecs.size());
    for (std::size_t b = 0; b < vecs.size(); ++b) {
      const std::size_t nk = vecs[b].size();
      if (nk == 0) continue;
      const auto u = test::random_isometry(rng, nk + 2, nk);
      for (std::size_t j = 0; j < nk + 2; ++j) {
        CVector w(vecs[b][0].size(), Complex{0.0, 0.0});
        for (std::size_t k = 0; k < nk; ++k)
          for (std::size_t t = 0; t < w.size(); ++t)
            // Adjoints conjugate the mixing coefficients.
            w[t] += std::conj(u(j, k)) * vecs[b][k][t];
        mixed[b].push_back(std::move(w));
      }
    }
    const auto s3 = multigraph_span_from_vectors(phi.in_alg(), phi.out_alg(),
                                                 mixed);
    CHECK(projector_distance(s.subspace, s3) < 1e-8);
  }
}

TEST_CASE("multigraph carries an algebra structure") {
  auto rng = test::Rng(37);
  for (int round = 0; round < 4; ++round) {
    const auto phi = (round % 2 == 0) ? test::random_cptp(rng, {2}, {2, 1}, 1)
                                      : test::random_cptp(rng, {2, 1}, {2}, 1);
    const auto s = confusability_multigraph(phi).subspace;
    CHECK(subspace_contains(s, subspace_product(s, s)));
    CHECK(subspace_equals(subspace_adjoint(s), s));
  }
}

TEST_CASE("multigraph decomposes along output blocks") {
  auto rng = test::Rng(41);
  const auto phi = test::random_cptp(rng, {2}, {2, 2}, 1);
  const auto s = confusability_multigraph(phi);

  const std::size_t n_in = phi.in_alg().total_dim();
  const std::size_t n_out = phi.out_alg().total_dim();
  std::vector<ComplexMatrix> embedded;
  for (std::size_t b = 0; b < phi.out_alg().n_blocks(); ++b) {
    // Per-block channel: keep only the block-b Kraus operators.
    std::vector<KrausOperator> ops;
    for (const auto& op : phi.kraus())
      if (op.out_block == b) ops.push_back({0, op.in_block, op.matrix});
    const auto phib = make_channel(
        phi.in_alg(), BlockAlgebra({phi.out_alg().block_dim(b)}), ops);
    const auto sb = confusability_multigraph(phib);
    // Embed the block-b generators into the global conjugate-output space.
    const std::size_t mb = phi.out_alg().block_dim(b);
    const std::size_t off = phi.out_alg().offset(b);
    for (const auto& g : sb.subspace.basis()) {
      ComplexMatrix big(n_in * n_out, n_in * n_out);
      for (std::size_t i = 0; i < n_in; ++i)
        for (std::size_t q = 0; q < mb; ++q)
          for (std::size_t j = 0; j < n_in; ++j)
            for (std::size_t q2 = 0; q2 < mb; ++q2)
              big(i * n_out + off + q, j * n_out + off + q2) =
                  g(i * mb + q, j * mb + q2);
      embedded.push_back(std::move(big));
    }
  }
  const auto direct_sum = OperatorSubspace::from_spanning(
      n_in * n_out, n_in * n_out, embedded);
  CHECK(subspace_equals(direct_sum, s.subspace));
}
