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

// Seeded invariant campaign over every module, at desk scale (tensor factor
// dimensions <= 4). The CLI selftest command runs this and reports per
// suite; the first counterexample of each failing suite is carried in the
// report.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "qmg/decomposable.hpp"
#include "qmg/fixtures.hpp"
#include "qmg/io.hpp"

namespace qmg {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double millis = 0.0;
  bool pass() const { return failures == 0; }
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool pass() const {
    for (const auto& s : suites)
      if (!s.pass()) return false;
    return true;
  }
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(SuiteResult& result) : result_(result) {}
  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = what;
      ++result_.failures;
    }
  }

 private:
  SuiteResult& result_;
};

inline void suite_tensor_core(FixtureRng& rng, const Tolerances& tol,
                              Recorder& rec) {
  for (int round = 0; round < 4; ++round) {
    const auto a = random_gaussian_matrix(rng, 3, 3);
    const auto b = random_gaussian_matrix(rng, 4, 4);
    const auto x = random_gaussian_matrix(rng, 3, 4);
    const auto lhs = mat(vec(a * x * b.transpose()), 12, 1);
    const auto rhs = kron(a, b) * mat(vec(x), 12, 1);
    rec.check(distance(lhs, rhs) < 1e-12 * (1.0 + rhs.frobenius_norm()),
              "vec(AXB^t) = (A kron B) vec X at round " +
                  std::to_string(round));

    const auto t = random_gaussian_matrix(rng, 12, 12);
    const auto pt = partial_transpose(t, LegShape{3, 4}, 1);
    rec.check(distance(partial_trace(pt, LegShape{3, 4}, 1),
                       partial_trace(t, LegShape{3, 4}, 1)) < 1e-12,
              "partial trace is transpose invariant on the traced leg");

    const auto perm = std::vector<std::size_t>{1, 0};
    const auto moved = reorder_legs(t, LegShape{3, 4}, perm);
    rec.check(std::abs(moved.frobenius_norm() - t.frobenius_norm()) < 1e-12,
              "reorder_legs preserves the HS norm");
  }
  for (int round = 0; round < 2; ++round) {
    std::vector<ComplexMatrix> gens;
    for (int g = 0; g < 5; ++g) gens.push_back(random_gaussian_matrix(rng, 3, 3));
    const auto s = OperatorSubspace::from_spanning(3, 3, gens, tol);
    const auto rebuilt = OperatorSubspace::from_spanning(3, 3, s.basis(), tol);
    rec.check(subspace_equals(s, rebuilt, tol),
              "subspace_from_spanning is idempotent");
  }
  for (std::size_t n : {4, 16}) {
    auto a = random_gaussian_matrix(rng, n, n);
    a = Complex(0.5, 0.0) * (a + a.adjoint());
    const auto eig = hermitian_eig(a, tol);
    ComplexMatrix rec_mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      CVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, k);
      rec_mat += eig.values[k] * outer(v, v);
    }
    rec.check(distance(rec_mat, a) < 1e-9 * a.frobenius_norm(),
              "hermitian_eig reconstruction at dim " + std::to_string(n));
  }
}

inline void suite_algebra(FixtureRng& rng, const Tolerances& tol,
                          Recorder& rec) {
  (void)rng;
  for (const auto& dims :
       std::vector<std::vector<std::size_t>>{{2}, {2, 1}, {1, 1, 1}, {2, 2}}) {
    const BlockAlgebra alg(dims);
    rec.check(subspace_equals(alg.center(), alg.commutant(), tol),
              "center equals commutant");
    rec.check(alg.commutant().dim() == alg.n_blocks(),
              "commutant dimension equals block count");
    const auto us = alg.units();
    bool ortho = true;
    for (std::size_t p = 0; p < us.size(); ++p)
      for (std::size_t q = 0; q < us.size(); ++q) {
        const auto ip =
            hs_inner(alg.matrix_unit(us[p].block, us[p].i, us[p].j),
                     alg.matrix_unit(us[q].block, us[q].i, us[q].j));
        if (std::abs(ip - (p == q ? 1.0 : 0.0)) > 1e-12) ortho = false;
      }
    rec.check(ortho, "matrix units are HS orthonormal");
  }
  for (int round = 0; round < 3; ++round) {
    const auto x = random_gaussian_matrix(rng, 3, 3);
    const auto y = random_gaussian_matrix(rng, 3, 3);
    rec.check(distance(op_rep(x * y), op_rep(y) * op_rep(x)) < 1e-12,
              "op_rep reverses multiplication");
  }
}

inline void suite_channel(FixtureRng& rng, const Tolerances& tol,
                          Recorder& rec) {
  for (int round = 0; round < 5; ++round) {
    const auto phi = (round % 2 == 0)
                         ? random_isometry_channel(rng, {2}, {2}, 2, tol)
                         : random_isometry_channel(rng, {2, 1}, {2, 1}, 1, tol);
    const auto rep = is_cp(phi, tol);
    rec.check(rep.cp, "random Kraus channel is CP (round " +
                          std::to_string(round) + ", min eig " +
                          jnum(rep.min_choi_eig) + ")");

    const auto adj = adjoint_map(phi);
    bool ok = true;
    for (const auto& u : phi.in_alg().units()) {
      const auto x = phi.in_alg().matrix_unit(u.block, u.i, u.j);
      for (const auto& v : phi.out_alg().units()) {
        const auto y = phi.out_alg().matrix_unit(v.block, v.i, v.j);
        if (std::abs(hs_inner(adj.apply(y), x) - hs_inner(y, phi.apply(x))) >
            1e-10)
          ok = false;
      }
    }
    rec.check(ok, "HS adjoint identity on matrix units");

    const auto rebuilt = make_channel(phi.in_alg(), phi.out_alg(),
                                      kraus_from_choi(choi(phi), tol), tol);
    bool same = true;
    for (std::size_t k = 0; k < rebuilt.unit_images().images.size(); ++k)
      if (distance(rebuilt.unit_images().images[k],
                   phi.unit_images().images[k]) > 1e-8)
        same = false;
    rec.check(same, "kraus_from_choi round trip");
  }

  // Transpose on M2 is the canonical non-CP *-map.
  const BlockAlgebra m2({2});
  UnitImageMap transpose{m2, m2, {}};
  for (const auto& u : m2.units())
    transpose.images.push_back(m2.matrix_unit(0, u.j, u.i));
  const auto rep = is_cp(transpose, tol);
  rec.check(!rep.cp && std::abs(rep.min_choi_eig + 1.0) < 1e-9,
            "transpose map has Choi eigenvalue -1");
}

inline void suite_confusability(FixtureRng& rng, const Tolerances& tol,
                                Recorder& rec) {
  for (int round = 0; round < 4; ++round) {
    const auto phi = (round % 2 == 0)
                         ? random_isometry_channel(rng, {2, 2}, {2, 1}, 1, tol)
                         : random_isometry_channel(rng, {2}, {2, 2}, 1, tol);
    const auto s = confusability_multigraph(phi, tol);
    const auto g = confusability_graph(phi, tol);
    rec.check(projector_distance(count_edges(s, tol), g.subspace) < 1e-8,
              "counting identity at round " + std::to_string(round));
    rec.check(subspace_contains(s.subspace,
                                subspace_product(s.subspace, s.subspace, tol),
                                tol) &&
                  subspace_equals(subspace_adjoint(s.subspace, tol),
                                  s.subspace, tol),
              "multigraph algebra structure");

    // Kraus independence within each (in block, out block) group.
    std::vector<KrausOperator> reparam;
    for (std::size_t b = 0; b < phi.out_alg().n_blocks(); ++b)
      for (std::size_t a = 0; a < phi.in_alg().n_blocks(); ++a) {
        std::vector<std::size_t> group;
        for (std::size_t k = 0; k < phi.kraus().size(); ++k)
          if (phi.kraus()[k].out_block == b && phi.kraus()[k].in_block == a)
            group.push_back(k);
        if (group.empty()) continue;
        const auto u = random_isometry(rng, group.size() + 1, group.size());
        for (std::size_t jrow = 0; jrow < group.size() + 1; ++jrow) {
          ComplexMatrix e(phi.out_alg().block_dim(b), phi.in_alg().total_dim());
          for (std::size_t k = 0; k < group.size(); ++k)
            e += u(jrow, k) * phi.kraus()[group[k]].matrix;
          reparam.push_back({b, a, std::move(e)});
        }
      }
    const auto phi2 = make_channel(phi.in_alg(), phi.out_alg(), reparam, tol);
    rec.check(projector_distance(s.subspace,
                                 confusability_multigraph(phi2, tol).subspace) <
                  1e-8,
              "Kraus independence");
  }

  for (std::size_t r = 1; r <= 3; ++r) {
    const auto phi = random_cp_map(rng, {3}, {3}, r, tol);
    rec.check(confusability_multigraph(phi, tol).subspace.dim() == r * r &&
                  multigraph_expected_dim(phi, tol) == r * r,
              "dimension law r^2 at r = " + std::to_string(r));
  }

  const auto p = random_stochastic(rng, 3, 3);
  rec.check(to_classical(multigraph_as_relation(
                confusability_multigraph(classical_channel(p, false, tol), tol)),
                         tol) == classical_confusability_multigraph(p, tol),
            "classical consistency of the quantum multigraph");
}

inline void suite_multirelation(FixtureRng& rng, const Tolerances& tol,
                                Recorder& rec) {
  for (int round = 0; round < 3; ++round) {
    const auto r = random_classical_relation(rng, 2 + rng.below(3),
                                             1 + rng.below(3));
    const auto v = from_classical(r, tol);
    rec.check(verify_multirelation(v.m_alg, v.n_alg, v.subspace, tol).valid,
              "from_classical output passes the axioms");
    rec.check(to_classical(v, tol) == r, "classical bijection");
  }

  for (int round = 0; round < 3; ++round) {
    const auto v = (round == 2)
                       ? random_multirelation(rng, {2, 1}, {2}, 2, tol)
                       : random_multirelation(rng, {2}, {2}, 2, tol);
    const auto p = multi_edge_indicator(v, tol);
    rec.check(distance(p * p, p) < 1e-10, "P_V is idempotent");
    rec.check(weaver_membership_ok(p, v.m_alg, v.n_alg, tol),
              "P_V commutes with the commutant superoperators");

    const auto s = weighted_edge_indicator(v, tol);
    const auto eig = hermitian_eig(s, tol);
    rec.check(eig.values.empty() || eig.values.back() > -1e-9,
              "S_V is positive semidefinite");
    std::vector<ComplexMatrix> range;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= tol.rank * std::max(eig.values.front(), 1e-300))
        break;
      CVector col(s.rows());
      for (std::size_t t = 0; t < s.rows(); ++t) col[t] = eig.vectors(t, k);
      range.push_back(mat(col, v.dim_h(), v.dim_h()));
    }
    const auto range_space =
        OperatorSubspace::from_spanning(v.dim_h(), v.dim_h(), range, tol);
    rec.check(projector_distance(range_space,
                                 underlying_graph(v, tol).subspace) < 1e-8,
              "range of S_V is vec of the underlying graph");

    const auto multi = adjacency_multi(v, tol);
    const auto weighted = adjacency_weighted(v, tol);
    const auto under = adjacency_underlying(v, tol);
    rec.check(adjacency_is_cp(multi, tol).cp, "multi-adjacency is CP");
    rec.check(adjacency_is_cp(weighted, tol).cp, "weighted adjacency is CP");
    rec.check(adjacency_is_cp(under, tol).cp, "underlying adjacency is CP");
    rec.check(schur_idempotent_check(multi, tol),
              "multi-adjacency is Schur idempotent");
    rec.check(schur_idempotent_check(under, tol),
              "underlying adjacency is Schur idempotent");
    rec.check(adjacency_trace_relation(v, tol),
              "partial trace of the multi-adjacency is the weighted one");
  }

  const auto phi = random_isometry_channel(rng, {2, 1}, {2, 1}, 1, tol);
  const auto v = multigraph_as_relation(confusability_multigraph(phi, tol));
  rec.check(verify_multirelation(v.m_alg, v.n_alg, v.subspace, tol).valid,
            "confusability multigraphs satisfy the relation axioms");
}

inline void suite_decomposable(FixtureRng& rng, const Tolerances& tol,
                               Recorder& rec) {
  for (int round = 0; round < 3; ++round) {
    const auto v = (round == 2)
                       ? random_symmetric_decomposable(rng, {2, 1}, {2, 1}, 1, tol)
                       : random_symmetric_decomposable(rng, {2}, {2}, 1, tol);
    const auto d = try_decompose(v, tol);
    rec.check(d.decomposable, "seeded relation is decomposable");
    if (!d.decomposable) continue;
    rec.check(is_symmetric_decomposition(d, tol) ==
                  subspace_equals(subspace_adjoint(v.subspace, tol),
                                  v.subspace, tol),
              "symmetry matches V1 = V2*");
    rec.check(transitivity_check(v, tol), "symmetric decomposable is transitive");
    bool factor_ok = true;
    try {
      component_indicators(d, tol);
    } catch (const Error&) {
      factor_ok = false;
    }
    rec.check(factor_ok, "sigma' factorization of the indicators");
    rec.check(adjacency_composition_check(v, d, tol),
              "weighted adjacency composes from the components");
    const auto rt = roundtrip_verify(v, tol);
    rec.check(rt.pass, "synthesis round trip (distance " +
                           jnum(rt.projector_distance) + ")");
  }

  const auto phi = random_isometry_channel(rng, {2}, {2, 1}, 1, tol);
  const auto v = multigraph_as_relation(confusability_multigraph(phi, tol));
  const auto rt = roundtrip_verify(v, tol);
  rec.check(rt.pass, "channel multigraph synthesis round trip");
}

}  // namespace detail

inline SelftestReport run_selftest(std::uint64_t seed,
                                   const Tolerances& tol = {}) {
  using Suite = std::function<void(FixtureRng&, const Tolerances&,
                                   detail::Recorder&)>;
  const std::vector<std::pair<std::string, Suite>> suites{
      {"tensor_core", detail::suite_tensor_core},
      {"algebra", detail::suite_algebra},
      {"channel", detail::suite_channel},
      {"confusability", detail::suite_confusability},
      {"multirelation", detail::suite_multirelation},
      {"decomposable", detail::suite_decomposable},
  };

  SelftestReport report;
  report.seed = seed;
  for (std::size_t k = 0; k < suites.size(); ++k) {
    SuiteResult result;
    result.name = suites[k].first;
    detail::Recorder rec(result);
    FixtureRng rng(seed * 1000003ULL + k);
    const auto start = std::chrono::steady_clock::now();
    try {
      suites[k].second(rng, tol, rec);
    } catch (const Error& e) {
      rec.check(false, std::string("exception: ") + e.what());
    }
    result.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    report.suites.push_back(std::move(result));
  }
  return report;
}

/// Deterministic JSON rendering of the campaign (no timings; those go to the
/// timing sink so repeated runs stay byte-identical).
inline std::string selftest_to_json(const SelftestReport& report) {
  std::string out = "{\"seed\":" + jint(report.seed) +
                    ",\"pass\":" + jbool(report.pass()) + ",\"suites\":[";
  for (std::size_t k = 0; k < report.suites.size(); ++k) {
    const auto& s = report.suites[k];
    if (k) out += ",";
    out += "{\"name\":" + jstr(s.name) + ",\"pass\":" + jbool(s.pass()) +
           ",\"checks\":" + jint(s.checks) +
           ",\"failures\":" + jint(s.failures) + ",\"first_failure\":" +
           (s.failures ? jstr(s.first_failure) : "null") + "}";
  }
  out += "]}";
  return out;
}

inline std::string selftest_timing_lines(const SelftestReport& report) {
  std::string out;
  for (const auto& s : report.suites)
    out += "suite " + s.name + ": " + (s.pass() ? "pass" : "FAIL") + " (" +
           std::to_string(s.checks) + " checks, " + jnum(s.millis) + " ms)\n";
  return out;
}

}  // namespace qmg
