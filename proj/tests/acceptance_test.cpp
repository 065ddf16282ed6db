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

// Acceptance suite: ten seeded end-to-end criteria at desk scale (tensor
// factors <= 4), each printed as a single pass/fail line.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmg/commands.hpp"
#include "qmg/decomposable.hpp"
#include "qmg/fixtures.hpp"

using namespace qmg;

namespace {

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

struct Shape {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
  std::size_t env;
};

// 50 channel shapes; 14 of them have multi-block input AND output.
std::vector<Shape> channel_shapes() {
  std::vector<Shape> shapes;
  const std::vector<Shape> cycle{
      {{2}, {2}, 2},     {{3}, {2}, 1},     {{2, 1}, {2, 1}, 1},
      {{4}, {3}, 1},     {{2, 2}, {3, 1}, 1}, {{2}, {2, 2}, 1},
      {{1, 1}, {1, 1}, 1}, {{2, 1}, {1, 2}, 1}, {{3, 1}, {2, 2}, 1},
      {{2}, {4}, 1},
  };
  for (std::size_t k = 0; k < 50; ++k) shapes.push_back(cycle[k % cycle.size()]);
  return shapes;
}

ChannelMap transpose_free_channel(FixtureRng& rng, const Shape& s,
                                  const Tolerances& tol) {
  return random_isometry_channel(rng, s.in, s.out, s.env, tol);
}

}  // namespace

TEST_CASE("criterion 1: CP characterization") {
  const Tolerances tol;
  FixtureRng rng(1001);
  bool pass = true;
  double worst = 0.0;
  for (const auto& shape : channel_shapes()) {
    const auto phi = transpose_free_channel(rng, shape, tol);
    const auto rep = is_cp(phi, tol);
    worst = std::min(worst, rep.min_choi_eig);
    if (!rep.cp || rep.min_choi_eig < -1e-9) pass = false;
  }

  const BlockAlgebra m2({2});
  UnitImageMap transpose{m2, m2, {}};
  for (const auto& u : m2.units())
    transpose.images.push_back(m2.matrix_unit(0, u.j, u.i));
  const auto trep = is_cp(transpose, tol);
  if (trep.cp || std::abs(trep.min_choi_eig + 1.0) > 1e-9) pass = false;

  report(1, pass,
         "50 Kraus channels CP with min Choi eig >= -1e-9 (worst " +
             jnum(worst) + "); transpose map eig " + jnum(trep.min_choi_eig));
  CHECK(pass);
}

TEST_CASE("criterion 2: counting identity") {
  const Tolerances tol;
  FixtureRng rng(1002);
  bool pass = true;
  double worst = 0.0;
  std::size_t multiblock = 0;
  for (const auto& shape : channel_shapes()) {
    const auto phi = transpose_free_channel(rng, shape, tol);
    if (phi.in_alg().n_blocks() > 1 && phi.out_alg().n_blocks() > 1)
      ++multiblock;
    const auto s = confusability_multigraph(phi, tol);
    const auto g = confusability_graph(phi, tol);
    const double d = projector_distance(count_edges(s, tol), g.subspace);
    worst = std::max(worst, d);
    if (d >= 1e-8) pass = false;
  }
  if (multiblock < 10) pass = false;
  report(2, pass,
         "count_edges equals the Kraus-product graph on 50 channels (worst "
         "distance " + jnum(worst) + ", " + std::to_string(multiblock) +
             " with multi-block input and output)");
  CHECK(pass);
}

TEST_CASE("criterion 3: Kraus independence") {
  const Tolerances tol;
  FixtureRng rng(1003);
  bool pass = true;
  double worst = 0.0;
  for (int round = 0; round < 20; ++round) {
    const auto shape = channel_shapes()[static_cast<std::size_t>(round) % 10];
    const auto phi = transpose_free_channel(rng, shape, tol);
    const auto s = confusability_multigraph(phi, tol);
    for (int rep_round = 0; rep_round < 3; ++rep_round) {
      std::vector<KrausOperator> reparam;
      for (std::size_t b = 0; b < phi.out_alg().n_blocks(); ++b)
        for (std::size_t a = 0; a < phi.in_alg().n_blocks(); ++a) {
          std::vector<std::size_t> group;
          for (std::size_t k = 0; k < phi.kraus().size(); ++k)
            if (phi.kraus()[k].out_block == b && phi.kraus()[k].in_block == a)
              group.push_back(k);
          if (group.empty()) continue;
          const auto u =
              random_isometry(rng, group.size() + 1 + rng.below(2),
                              group.size());
          for (std::size_t j = 0; j < u.rows(); ++j) {
            ComplexMatrix e(phi.out_alg().block_dim(b),
                            phi.in_alg().total_dim());
            for (std::size_t k = 0; k < group.size(); ++k)
              e += u(j, k) * phi.kraus()[group[k]].matrix;
            reparam.push_back({b, a, std::move(e)});
          }
        }
      const auto phi2 = make_channel(phi.in_alg(), phi.out_alg(), reparam, tol);
      const double d = projector_distance(
          s.subspace, confusability_multigraph(phi2, tol).subspace);
      worst = std::max(worst, d);
      if (d >= 1e-8) pass = false;
    }
  }
  report(3, pass,
         "multigraph invariant under 3 environment isometries on 20 channels "
         "(worst distance " + jnum(worst) + ")");
  CHECK(pass);
}

TEST_CASE("criterion 4: dimension law") {
  const Tolerances tol;
  FixtureRng rng(1004);
  bool pass = true;
  for (int round = 0; round < 20; ++round) {
    const std::size_t r = 1 + (static_cast<std::size_t>(round) % 3);
    const std::size_t n = 3 + rng.below(2);  // 3 or 4
    const auto phi = random_cp_map(rng, {n}, {n}, r, tol);
    const auto dim = confusability_multigraph(phi, tol).subspace.dim();
    if (dim != r * r || multigraph_expected_dim(phi, tol) != r * r)
      pass = false;
  }
  report(4, pass,
         "20 purely-quantum channels with Kraus dimension r in {1,2,3} have "
         "multigraph dimension exactly r^2");
  CHECK(pass);
}

TEST_CASE("criterion 5: classical bijection") {
  const Tolerances tol;
  FixtureRng rng(1005);
  bool pass = true;
  for (int round = 0; round < 100; ++round) {
    const std::size_t nx = 2 + rng.below(3);
    const std::size_t ny = 1 + rng.below(4);
    const auto r = random_classical_relation(rng, nx, ny, 0.35);
    const auto q = from_classical(r, tol);
    if (!(to_classical(q, tol) == r)) pass = false;
    if (!verify_multirelation(q.m_alg, q.n_alg, q.subspace, tol).valid)
      pass = false;
  }
  for (int round = 0; round < 20; ++round) {
    const std::size_t nx = 2 + rng.below(3);
    const std::size_t ny = 2 + rng.below(3);
    const auto p = random_stochastic(rng, nx, ny);
    const auto quantum = to_classical(
        multigraph_as_relation(
            confusability_multigraph(classical_channel(p, false, tol), tol)),
        tol);
    if (!(quantum == classical_confusability_multigraph(p, tol))) pass = false;
  }
  report(5, pass,
         "100 classical round trips exact; 20 channel multigraphs match the "
         "p(y|x1) p(y|x2) != 0 triple sets");
  CHECK(pass);
}

namespace {

std::vector<QuantumMultiRelation> relation_family(const Tolerances& tol) {
  FixtureRng rng(1006);
  const std::vector<std::pair<std::vector<std::size_t>,
                              std::vector<std::size_t>>> shapes{
      {{2}, {2}},    {{2, 1}, {2}},    {{2}, {2, 1}},
      {{1, 1}, {1, 1, 1}}, {{3}, {2}},  {{2, 2}, {2}},
  };
  std::vector<QuantumMultiRelation> family;
  for (int round = 0; round < 30; ++round) {
    const auto& s = shapes[static_cast<std::size_t>(round) % shapes.size()];
    family.push_back(
        random_multirelation(rng, s.first, s.second, 1 + rng.below(2), tol));
  }
  return family;
}

}  // namespace

TEST_CASE("criterion 6: indicator suite") {
  const Tolerances tol;
  bool pass = true;
  double worst_proj = 0.0, worst_range = 0.0;
  for (const auto& v : relation_family(tol)) {
    const auto p = multi_edge_indicator(v, tol);
    const double idem = distance(p * p, p);
    worst_proj = std::max(worst_proj, idem);
    if (idem >= 1e-10) pass = false;
    if (!weaver_membership_ok(p, v.m_alg, v.n_alg, tol)) pass = false;

    const auto s = weighted_edge_indicator(v, tol);
    const auto eig = hermitian_eig(s, tol);
    if (!eig.values.empty() && eig.values.back() < -1e-9) pass = false;
    std::vector<ComplexMatrix> range;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= tol.rank * std::max(eig.values.front(), 1e-300))
        break;
      CVector col(s.rows());
      for (std::size_t t = 0; t < s.rows(); ++t) col[t] = eig.vectors(t, k);
      range.push_back(mat(col, v.dim_h(), v.dim_h()));
    }
    const double d = projector_distance(
        OperatorSubspace::from_spanning(v.dim_h(), v.dim_h(), range, tol),
        underlying_graph(v, tol).subspace);
    worst_range = std::max(worst_range, d);
    if (d >= 1e-8) pass = false;
  }
  report(6, pass,
         "30 relations: P_V projector (worst ||P^2-P|| " + jnum(worst_proj) +
             "), Weaver membership, S_V PSD with range vec(underlying) "
             "(worst distance " + jnum(worst_range) + ")");
  CHECK(pass);
}

TEST_CASE("criterion 7: adjacency suite") {
  const Tolerances tol;
  bool pass = true;
  for (const auto& v : relation_family(tol)) {
    const auto multi = adjacency_multi(v, tol);
    const auto weighted = adjacency_weighted(v, tol);
    const auto under = adjacency_underlying(v, tol);
    if (!adjacency_is_cp(multi, tol).cp) pass = false;
    if (!adjacency_is_cp(weighted, tol).cp) pass = false;
    if (!adjacency_is_cp(under, tol).cp) pass = false;
    if (!schur_idempotent_check(multi, tol)) pass = false;
    if (!schur_idempotent_check(under, tol)) pass = false;
    const std::size_t dm = v.m_alg.unit_count();
    const std::size_t dn = v.n_alg.unit_count();
    const auto traced =
        partial_trace(multi.l2_matrix, LegShape{dm, dn}, 1);
    if (distance(traced, weighted.l2_matrix) >= 1e-8) pass = false;
  }

  // The classical counting fixture has exact integer edge counts.
  ClassicalMultiRelation r{2, 2, {}};
  r.insert(0, 1, 0);
  r.insert(0, 1, 1);
  r.insert(0, 0, 0);
  const auto weighted = adjacency_weighted(from_classical(r), tol);
  if (std::abs(weighted.l2_matrix(1, 0) - Complex(2.0, 0.0)) > 1e-12)
    pass = false;
  if (std::abs(weighted.l2_matrix(0, 0) - Complex(1.0, 0.0)) > 1e-12)
    pass = false;
  if (std::abs(weighted.l2_matrix(0, 1)) > 1e-12) pass = false;
  report(7, pass,
         "30 relations: adjacencies CP, multi/underlying Schur idempotent, "
         "trace relation within 1e-8; classical counts exact");
  CHECK(pass);
}

namespace {

std::vector<QuantumMultiRelation> decomposable_family(const Tolerances& tol) {
  FixtureRng rng(1008);
  const std::vector<std::pair<std::vector<std::size_t>,
                              std::vector<std::size_t>>> shapes{
      {{2}, {2}}, {{2}, {3}}, {{2, 1}, {2}}, {{2, 1}, {2, 1}}, {{3}, {2, 2}},
  };
  std::vector<QuantumMultiRelation> family;
  for (int round = 0; round < 20; ++round) {
    const auto& s = shapes[static_cast<std::size_t>(round) % shapes.size()];
    family.push_back(random_symmetric_decomposable(rng, s.first, s.second,
                                                   1 + rng.below(2), tol));
  }
  return family;
}

}  // namespace

TEST_CASE("criterion 8: decomposable suite") {
  const Tolerances tol;
  bool pass = true;
  for (const auto& v : decomposable_family(tol)) {
    const auto d = try_decompose(v, tol);
    if (!d.decomposable) {
      pass = false;
      continue;
    }
    const bool sym_components = is_symmetric_decomposition(d, tol);
    const bool sym_subspace =
        subspace_equals(subspace_adjoint(v.subspace, tol), v.subspace, tol);
    if (sym_components != sym_subspace || !sym_subspace) pass = false;
    if (!transitivity_check(v, tol)) pass = false;
    try {
      if (component_indicators(d, tol).worst_factorization_error >= 1e-8)
        pass = false;
    } catch (const Error&) {
      pass = false;
    }
    if (!adjacency_composition_check(v, d, tol)) pass = false;
  }
  report(8, pass,
         "20 symmetric decomposable relations: V1 = V2* matches V* = V, "
         "V^2 in V, sigma' factorization and adjacency composition within "
         "1e-8");
  CHECK(pass);
}

TEST_CASE("criterion 9: synthesis round trip") {
  const Tolerances tol;
  bool pass = true;
  double worst = 0.0;
  for (const auto& v : decomposable_family(tol)) {
    const auto rt = roundtrip_verify(v, tol);
    worst = std::max(worst, rt.projector_distance);
    if (!rt.pass || rt.projector_distance >= 1e-8) pass = false;
  }
  FixtureRng rng(1009);
  for (int round = 0; round < 10; ++round) {
    const auto shape = channel_shapes()[static_cast<std::size_t>(round)];
    const auto phi = random_isometry_channel(rng, shape.in, shape.out,
                                             shape.env, tol);
    const auto v = multigraph_as_relation(confusability_multigraph(phi, tol));
    const auto rt = roundtrip_verify(v, tol);
    worst = std::max(worst, rt.projector_distance);
    if (!rt.pass || rt.projector_distance >= 1e-8) pass = false;
  }
  report(9, pass,
         "20 relations and 10 channel multigraphs synthesize back with "
         "projector distance < 1e-8 (worst " + jnum(worst) + ")");
  CHECK(pass);
}

TEST_CASE("criterion 10: determinism") {
  const Tolerances tol;
  bool pass = true;
  for (const std::uint64_t seed : {0ULL, 42ULL}) {
    const auto a = cmd_selftest(seed, tol);
    const auto b = cmd_selftest(seed, tol);
    if (a.exit_code != 0 || b.exit_code != 0) pass = false;
    if (a.output != b.output) pass = false;
  }
  report(10, pass,
         "selftest passes at seeds 0 and 42 with byte-identical reports on "
         "repeated runs");
  CHECK(pass);
}
