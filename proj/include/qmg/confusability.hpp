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

#include <cstddef>
#include <utility>
#include <vector>

#include "qmg/channel.hpp"
#include "qmg/classical.hpp"
#include "qmg/matrix.hpp"
#include "qmg/subspace.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// The single-edged confusability graph S of a CP map: the operator system
/// K*K spanned by products of adjoint Kraus pairs inside B(H_in).
struct ConfusabilityGraph {
  OperatorSubspace subspace;  // within B(H_in)
  ChannelMap channel_ref;
};

/// The confusability multigraph in the conjugate-output picture: a subspace
/// of B(H_in kron conj(H_out)) retaining through which outputs inputs get
/// confused. Spanned by |vec(E_bk^dag)><vec(E_bl^dag)| over Kraus pairs
/// within each output block.
struct ConfusabilityMultigraph {
  OperatorSubspace subspace;  // within B(H_in kron conj(H_out))
  BlockAlgebra in_alg;
  BlockAlgebra out_alg;
};

inline ConfusabilityGraph confusability_graph(const ChannelMap& phi,
                                              const Tolerances& tol = {}) {
  const auto ks = kraus_space(phi, tol);
  return ConfusabilityGraph{subspace_product(subspace_adjoint(ks, tol), ks, tol),
                            phi};
}

/// Generator vectors vec((j_b E_bk)^dag), grouped by output block, in the
/// stored Kraus order.
inline std::vector<std::vector<CVector>> multigraph_generator_vectors(
    const ChannelMap& phi) {
  std::vector<std::vector<CVector>> per_block(phi.out_alg().n_blocks());
  for (std::size_t k = 0; k < phi.kraus().size(); ++k)
    per_block[phi.kraus()[k].out_block].push_back(
        vec(phi.embedded_kraus(k).adjoint()));
  return per_block;
}

/// Builds the multigraph span from per-output-block generator vectors
/// w_bk = vec((j_b E_bk)^dag): outer products are taken within each block
/// only (cross-block rank-one terms vanish identically).
inline OperatorSubspace multigraph_span_from_vectors(
    const BlockAlgebra& in_alg, const BlockAlgebra& out_alg,
    const std::vector<std::vector<CVector>>& per_block,
    const Tolerances& tol = {}) {
  if (per_block.size() != out_alg.n_blocks())
    throw ArgumentError("vector groups do not match output blocks");
  const std::size_t ambient = in_alg.total_dim() * out_alg.total_dim();
  std::vector<ComplexMatrix> gens;
  for (const auto& block : per_block)
    for (const auto& wk : block)
      for (const auto& wl : block) gens.push_back(outer(wk, wl));
  return OperatorSubspace::from_spanning(ambient, ambient, gens, tol);
}

inline ConfusabilityMultigraph confusability_multigraph(
    const ChannelMap& phi, const Tolerances& tol = {}) {
  return ConfusabilityMultigraph{
      multigraph_span_from_vectors(phi.in_alg(), phi.out_alg(),
                                   multigraph_generator_vectors(phi), tol),
      phi.in_alg(), phi.out_alg()};
}

/// Counting edges: tracing out the conjugate-output leg of the multigraph
/// recovers the single-edged graph.
inline OperatorSubspace count_edges(const ConfusabilityMultigraph& s,
                                    const Tolerances& tol = {}) {
  const std::size_t n_in = s.in_alg.total_dim();
  const std::size_t n_out = s.out_alg.total_dim();
  const LegShape shape{n_in, n_out};
  std::vector<ComplexMatrix> traced;
  traced.reserve(s.subspace.dim());
  for (const auto& b : s.subspace.basis())
    traced.push_back(partial_trace(b, shape, 1));
  return OperatorSubspace::from_spanning(n_in, n_in, traced, tol);
}

/// Classical confusability multigraph of a transition matrix p[y][x]: one
/// edge (x1, x2, y) whenever p(y|x1) p(y|x2) is nonzero.
inline ClassicalMultiRelation classical_confusability_multigraph(
    const std::vector<std::vector<double>>& p, const Tolerances& tol = {}) {
  if (p.empty() || p[0].empty())
    throw ArgumentError("empty transition matrix");
  const std::size_t n_y = p.size();
  const std::size_t n_x = p[0].size();
  ClassicalMultiRelation r{n_x, n_y, {}};
  for (std::size_t y = 0; y < n_y; ++y) {
    if (p[y].size() != n_x) throw ArgumentError("ragged transition matrix");
    for (std::size_t x1 = 0; x1 < n_x; ++x1)
      for (std::size_t x2 = 0; x2 < n_x; ++x2)
        if (p[y][x1] * p[y][x2] > tol.edge) r.insert(x1, x2, y);
  }
  return r;
}

/// For a channel into a full matrix algebra the multigraph dimension equals
/// the squared rank of the Choi operator (equivalently the squared Kraus
/// space dimension).
inline std::size_t multigraph_expected_dim(const ChannelMap& phi,
                                           const Tolerances& tol = {}) {
  if (phi.out_alg().n_blocks() != 1)
    throw UnsupportedError(
        "multigraph_expected_dim: defined per full output algebra only");
  const auto c = choi(phi);
  if (c.matrix.frobenius_norm() == 0.0) return 0;
  const auto eig = hermitian_eig(c.matrix, tol);
  const double top = std::abs(eig.values.front());
  std::size_t rank = 0;
  for (double v : eig.values)
    if (v > tol.rank * top) ++rank;
  return rank * rank;
}

}  // namespace qmg
