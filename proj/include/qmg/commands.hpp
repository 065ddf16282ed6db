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

// Command layer shared by the CLI binary and the test suite. Every command
// produces a deterministic report string; identical inputs, seeds and
// tolerance overrides give byte-identical output.

#include <string>

#include "qmg/decomposable.hpp"
#include "qmg/io.hpp"
#include "qmg/selftest.hpp"

namespace qmg {

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// Trace preservation for maps only known through their unit images:
/// tr(Phi(e^a_{ij})) = delta_{ij} on every input matrix unit.
inline bool images_trace_preserving(const UnitImageMap& phi,
                                    const Tolerances& tol = {}) {
  for (const auto& u : phi.in_alg.units()) {
    const Complex t = phi.image(u.block, u.i, u.j).trace();
    const Complex expect = (u.i == u.j) ? 1.0 : 0.0;
    if (std::abs(t - expect) > tol.axiom * phi.in_alg.total_dim())
      return false;
  }
  return true;
}

inline CommandResult cmd_check_cp(const nlohmann::json& input,
                                  const Tolerances& tol = {}) {
  const auto in = parse_channel_json(input, tol);
  const auto rep = is_cp(in.images, tol);
  const bool tp = in.channel ? is_trace_preserving(*in.channel, tol)
                             : images_trace_preserving(in.images, tol);
  std::string out = "{\"cp\":" + jbool(rep.cp) +
                    ",\"trace_preserving\":" + jbool(tp) +
                    ",\"min_choi_eig\":" + jnum(rep.min_choi_eig) +
                    ",\"star_preserving\":" + jbool(rep.star_preserving) + "}";
  return {0, out};
}

inline CommandResult cmd_multigraph(const nlohmann::json& input,
                                    const Tolerances& tol = {}) {
  auto in = parse_channel_json(input, tol);
  if (!in.channel) {
    // Unit-image inputs need a Kraus form first; extract one from the Choi
    // operator (fails on non-CP maps).
    in.channel = make_channel(in.images.in_alg, in.images.out_alg,
                              kraus_from_choi(choi(in.images), tol), tol);
  }
  const auto& phi = *in.channel;
  const auto s = confusability_multigraph(phi, tol);
  const auto graph = confusability_graph(phi, tol);
  const bool counting =
      projector_distance(count_edges(s, tol), graph.subspace) <
      tol.eq * graph.subspace.ambient_scale();

  std::string out = "{\"dim\":" + jint(s.subspace.dim()) + ",\"ambient\":[" +
                    jint(phi.in_alg().total_dim()) + "," +
                    jint(phi.out_alg().total_dim()) + "],\"basis\":[";
  for (std::size_t k = 0; k < s.subspace.dim(); ++k) {
    if (k) out += ",";
    out += jmatrix(s.subspace.basis()[k]);
  }
  out += "],\"single_edged_dim\":" + jint(graph.subspace.dim()) +
         ",\"counting_matches_single_edged\":" + jbool(counting);
  if (phi.in_alg().is_diagonal() && phi.out_alg().is_diagonal()) {
    const auto triples = to_classical(multigraph_as_relation(s), tol);
    out += ",\"classical_triples\":" + jtriples(triples);
  }
  out += "}";
  return {0, out};
}

inline CommandResult cmd_classical(const nlohmann::json& input,
                                   const std::string& format,
                                   const Tolerances& tol = {}) {
  const auto in = parse_channel_json(input, tol);
  if (!in.classical_p)
    throw ArgumentError("classical command expects the classical schema");
  const auto r = classical_confusability_multigraph(*in.classical_p, tol);
  if (format == "dot") return {0, classical_to_dot(r)};
  std::string out = "{\"inputs\":" + jint(r.x_size) +
                    ",\"outputs\":" + jint(r.y_size) +
                    ",\"edge_count\":" + jint(r.triples.size()) +
                    ",\"triples\":" + jtriples(r) + "}";
  return {0, out};
}

inline CommandResult cmd_relation_check(const nlohmann::json& input,
                                        const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto rep = verify_multirelation(in.m_alg, in.n_alg, in.subspace, tol);
  std::string out =
      "{\"valid\":" + jbool(rep.valid) + ",\"failed_axiom\":" +
      (rep.valid ? "null" : jstr(rep.failed_axiom)) +
      ",\"dim\":" + jint(rep.dim);
  if (!rep.valid) out += ",\"witness\":" + jstr(rep.witness);
  out += "}";
  return {0, out};
}

namespace detail {

inline QuantumMultiRelation checked_relation(const RelationInput& in,
                                             const Tolerances& tol) {
  const auto rep = verify_multirelation(in.m_alg, in.n_alg, in.subspace, tol);
  if (!rep.valid)
    throw ValidationError(rep.failed_axiom,
                          "not a quantum multi-relation: " + rep.witness);
  return in.as_relation();
}

}  // namespace detail

inline CommandResult cmd_relation_indicator(const nlohmann::json& input,
                                            const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto rep = verify_multirelation(in.m_alg, in.n_alg, in.subspace, tol);
  if (!rep.valid) {
    return {0, "{\"valid\":false,\"failed_axiom\":" + jstr(rep.failed_axiom) +
                   ",\"dim\":" + jint(rep.dim) + "}"};
  }
  const auto v = in.as_relation();
  const auto ind = indicators(v, tol);
  const auto und = underlying_graph(v, tol);
  const auto eig = hermitian_eig(ind.s_v, tol);
  const double min_eig = eig.values.empty() ? 0.0 : eig.values.back();
  const double max_eig = eig.values.empty() ? 0.0 : eig.values.front();

  std::vector<ComplexMatrix> range;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= tol.rank * std::max(max_eig, 1e-300)) break;
    CVector col(ind.s_v.rows());
    for (std::size_t t = 0; t < ind.s_v.rows(); ++t)
      col[t] = eig.vectors(t, k);
    range.push_back(mat(col, v.dim_h(), v.dim_h()));
  }
  const auto range_space =
      OperatorSubspace::from_spanning(v.dim_h(), v.dim_h(), range, tol);
  const bool range_ok =
      projector_distance(range_space, und.subspace) < tol.eq * v.dim_h();

  std::string out =
      "{\"valid\":true,\"dim\":" + jint(v.subspace.dim()) +
      ",\"p_v\":{\"rank\":" + jint(v.subspace.dim()) +
      ",\"weaver_member\":" +
      jbool(weaver_membership_ok(ind.p_v, v.m_alg, v.n_alg, tol)) + "}" +
      ",\"underlying\":{\"dim\":" + jint(und.subspace.dim()) + "}" +
      ",\"s_v\":{\"min_eig\":" + jnum(min_eig) + ",\"max_eig\":" +
      jnum(max_eig) + ",\"psd\":" + jbool(min_eig > -tol.psd * std::max(max_eig, 1.0)) +
      ",\"range_matches_underlying\":" + jbool(range_ok) + "}}";
  return {0, out};
}

inline CommandResult cmd_relation_adjacency(const nlohmann::json& input,
                                            const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto rep = verify_multirelation(in.m_alg, in.n_alg, in.subspace, tol);
  if (!rep.valid) {
    return {0, "{\"valid\":false,\"failed_axiom\":" + jstr(rep.failed_axiom) +
                   ",\"dim\":" + jint(rep.dim) + "}"};
  }
  const auto v = in.as_relation();
  const auto multi = adjacency_multi(v, tol);
  const auto weighted = adjacency_weighted(v, tol);
  const auto under = adjacency_underlying(v, tol);

  auto section = [&](const AdjacencyOperator& adj) {
    return std::string("{\"matrix\":") + jmatrix(adj.l2_matrix) +
           ",\"cp\":" + jbool(adjacency_is_cp(adj, tol).cp) +
           ",\"schur_idempotent\":" + jbool(schur_idempotent_check(adj, tol)) +
           "}";
  };
  std::string out = "{\"valid\":true,\"multi\":" + section(multi) +
                    ",\"weighted\":" + section(weighted) +
                    ",\"underlying\":" + section(under) +
                    ",\"trace_relation\":" +
                    jbool(adjacency_trace_relation(v, tol)) + "}";
  return {0, out};
}

inline std::string decomposition_report(const QuantumMultiRelation& v,
                                        const Decomposition& d,
                                        bool with_roundtrip,
                                        const Tolerances& tol) {
  const bool symmetric =
      subspace_equals(subspace_adjoint(v.subspace, tol), v.subspace, tol);
  std::string out = "{\"decomposable\":" + jbool(d.decomposable) +
                    ",\"symmetric\":" + jbool(symmetric) +
                    ",\"transitive\":" + jbool(transitivity_check(v, tol)) +
                    ",\"per_block\":[";
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    if (k) out += ",";
    out += "{\"dim_v\":" + jint(d.blocks[k].v_b.dim()) +
           ",\"dim_v1\":" + jint(d.blocks[k].v1.dim()) +
           ",\"dim_v2\":" + jint(d.blocks[k].v2.dim()) + "}";
  }
  out += "]";
  if (!d.decomposable && !d.failure.empty())
    out += ",\"failure\":" + jstr(d.failure);
  if (with_roundtrip) {
    if (d.decomposable && symmetric) {
      const auto rt = roundtrip_verify(v, tol);
      out += ",\"roundtrip\":{\"pass\":" + jbool(rt.pass) +
             ",\"projector_distance\":" + jnum(rt.projector_distance) +
             ",\"dim_multigraph\":" + jint(rt.dim_multigraph) + "}";
    } else {
      out +=
          ",\"roundtrip\":{\"pass\":false,\"error\":\"relation must be "
          "symmetric and decomposable\"}";
    }
  }
  out += "}";
  return out;
}

inline CommandResult cmd_decompose(const nlohmann::json& input,
                                   const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto v = detail::checked_relation(in, tol);
  const auto d = try_decompose(v, tol);
  return {0, decomposition_report(v, d, false, tol)};
}

inline CommandResult cmd_synthesize(const nlohmann::json& input,
                                    const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto v = detail::checked_relation(in, tol);
  const auto d = try_decompose(v, tol);
  const bool symmetric =
      subspace_equals(subspace_adjoint(v.subspace, tol), v.subspace, tol);
  if (!d.decomposable || !symmetric) {
    return {0, "{\"synthesized\":false,\"symmetric\":" + jbool(symmetric) +
                   ",\"decomposable\":" + jbool(d.decomposable) + "}"};
  }
  const auto phi = synthesize_channel(v, tol);
  return {0, "{\"synthesized\":true,\"channel\":" + channel_to_json(phi) +
                 "}"};
}

inline CommandResult cmd_roundtrip(const nlohmann::json& input,
                                   const Tolerances& tol = {}) {
  const auto in = parse_relation_json(input, tol);
  const auto v = detail::checked_relation(in, tol);
  const auto d = try_decompose(v, tol);
  return {0, decomposition_report(v, d, true, tol)};
}

inline CommandResult cmd_selftest(std::uint64_t seed, const Tolerances& tol,
                                  std::string* timing_sink = nullptr) {
  const auto report = run_selftest(seed, tol);
  if (timing_sink) *timing_sink = selftest_timing_lines(report);
  return {report.pass() ? 0 : 1, selftest_to_json(report)};
}

}  // namespace qmg
