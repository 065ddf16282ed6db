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
#include <string>
#include <utility>
#include <vector>

#include "qmg/channel.hpp"
#include "qmg/confusability.hpp"
#include "qmg/matrix.hpp"
#include "qmg/multirelation.hpp"
#include "qmg/subspace.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// The flip sigma : B(conj K, H) kron B(H, conj K) -> B(H kron K) on a pair
/// of factors, written entrywise: sigma(T1 kron T2)[(i,p),(j,q)] =
/// T1[i,p] T2[q,j]. On rank-one pairs this is
/// sigma(theta_{xi, conj eta} kron theta_{conj eta', xi'}) =
/// theta_{xi, xi'} kron theta_{eta, eta'}.
inline ComplexMatrix sigma_pair(const ComplexMatrix& t1,
                                const ComplexMatrix& t2) {
  const std::size_t dim_h = t1.rows();
  const std::size_t dim_k = t1.cols();
  if (t2.rows() != dim_k || t2.cols() != dim_h)
    throw DimensionError("sigma_pair: component shapes are incompatible");
  ComplexMatrix out(dim_h * dim_k, dim_h * dim_k);
  for (std::size_t i = 0; i < dim_h; ++i)
    for (std::size_t p = 0; p < dim_k; ++p) {
      const Complex left = t1(i, p);
      if (left == Complex{0.0, 0.0}) continue;
      for (std::size_t q = 0; q < dim_k; ++q)
        for (std::size_t j = 0; j < dim_h; ++j)
          out(i * dim_k + p, j * dim_k + q) = left * t2(q, j);
    }
  return out;
}

/// sigma applied to a product of subspaces: the span of all sigma(T1 kron T2)
/// over basis pairs.
inline OperatorSubspace sigma_embed(const OperatorSubspace& v1,
                                    const OperatorSubspace& v2,
                                    const Tolerances& tol = {}) {
  if (v1.rows() != v2.cols() || v1.cols() != v2.rows())
    throw DimensionError("sigma_embed: component ambients are incompatible");
  const std::size_t d = v1.rows() * v1.cols();
  std::vector<ComplexMatrix> gens;
  gens.reserve(v1.dim() * v2.dim());
  for (const auto& t1 : v1.basis())
    for (const auto& t2 : v2.basis()) gens.push_back(sigma_pair(t1, t2));
  return OperatorSubspace::from_spanning(d, d, gens, tol);
}

/// Compression of a relation subspace to label block b: elements on
/// H kron K_b.
inline std::vector<ComplexMatrix> relation_block_compress(
    const QuantumMultiRelation& v, std::size_t b) {
  const std::size_t dim_h = v.dim_h();
  const std::size_t dim_k = v.dim_k();
  const std::size_t mb = v.n_alg.block_dim(b);
  const std::size_t off = v.n_alg.offset(b);
  std::vector<ComplexMatrix> out;
  out.reserve(v.subspace.dim());
  for (const auto& g : v.subspace.basis()) {
    ComplexMatrix c(dim_h * mb, dim_h * mb);
    for (std::size_t i = 0; i < dim_h; ++i)
      for (std::size_t p = 0; p < mb; ++p)
        for (std::size_t j = 0; j < dim_h; ++j)
          for (std::size_t q = 0; q < mb; ++q)
            c(i * mb + p, j * mb + q) =
                g(i * dim_k + off + p, j * dim_k + off + q);
    if (c.frobenius_norm() > 0.0) out.push_back(std::move(c));
  }
  return out;
}

/// Embeds an operator on H kron K_b back at label block b of H kron K.
inline ComplexMatrix embed_label_block(const ComplexMatrix& small,
                                       std::size_t dim_h,
                                       const BlockAlgebra& n_alg,
                                       std::size_t b) {
  const std::size_t dim_k = n_alg.total_dim();
  const std::size_t mb = n_alg.block_dim(b);
  const std::size_t off = n_alg.offset(b);
  ComplexMatrix big(dim_h * dim_k, dim_h * dim_k);
  for (std::size_t i = 0; i < dim_h; ++i)
    for (std::size_t p = 0; p < mb; ++p)
      for (std::size_t j = 0; j < dim_h; ++j)
        for (std::size_t q = 0; q < mb; ++q)
          big(i * dim_k + off + p, j * dim_k + off + q) =
              small(i * mb + p, j * mb + q);
  return big;
}

/// Decomposition data of one label block: V_b = sigma(V1 kron V2).
struct BlockDecomposition {
  std::size_t out_block = 0;
  OperatorSubspace v_b;  // compressed relation piece on H kron K_b
  OperatorSubspace v1;   // within B(conj K_b, H): dim_h x m_b matrices
  OperatorSubspace v2;   // within B(H, conj K_b): m_b x dim_h matrices
};

struct Decomposition {
  bool decomposable = true;
  std::vector<BlockDecomposition> blocks;
  std::string failure;  // set when not decomposable
};

/// Tries to factor each label-block piece of the relation as
/// sigma(V1 kron V2) by comparing its dimension with the product of the
/// marginal dimensions. Never throws on a negative answer.
inline Decomposition try_decompose(const QuantumMultiRelation& v,
                                   const Tolerances& tol = {}) {
  const std::size_t dim_h = v.dim_h();
  Decomposition out;
  for (std::size_t b = 0; b < v.n_alg.n_blocks(); ++b) {
    const std::size_t mb = v.n_alg.block_dim(b);
    BlockDecomposition blk;
    blk.out_block = b;
    blk.v_b = OperatorSubspace::from_spanning(
        dim_h * mb, dim_h * mb, relation_block_compress(v, b), tol);

    // Reshape each basis element G[(i,p),(j,q)] into R[(i,p),(q,j)] and take
    // the two single-leg marginals.
    std::vector<CVector> columns;
    std::vector<CVector> rows;
    for (const auto& g : blk.v_b.basis()) {
      for (std::size_t q = 0; q < mb; ++q)
        for (std::size_t j = 0; j < dim_h; ++j) {
          CVector col(dim_h * mb);
          for (std::size_t i = 0; i < dim_h; ++i)
            for (std::size_t p = 0; p < mb; ++p)
              col[i * mb + p] = g(i * mb + p, j * mb + q);
          columns.push_back(std::move(col));
        }
      for (std::size_t i = 0; i < dim_h; ++i)
        for (std::size_t p = 0; p < mb; ++p) {
          CVector row(mb * dim_h);
          for (std::size_t q = 0; q < mb; ++q)
            for (std::size_t j = 0; j < dim_h; ++j)
              row[q * dim_h + j] = g(i * mb + p, j * mb + q);
          rows.push_back(std::move(row));
        }
    }
    const auto w1 = orthonormal_span(columns, dim_h * mb, tol);
    const auto w2 = orthonormal_span(rows, mb * dim_h, tol);

    std::vector<ComplexMatrix> v1_mats, v2_mats;
    for (const auto& w : w1.basis) v1_mats.push_back(mat(w, dim_h, mb));
    for (const auto& w : w2.basis) v2_mats.push_back(mat(w, mb, dim_h));
    blk.v1 = OperatorSubspace::from_spanning(dim_h, mb, v1_mats, tol);
    blk.v2 = OperatorSubspace::from_spanning(mb, dim_h, v2_mats, tol);

    if (blk.v_b.dim() != blk.v1.dim() * blk.v2.dim()) {
      out.decomposable = false;
      out.failure = "block " + std::to_string(b) + ": dim " +
                    std::to_string(blk.v_b.dim()) + " != " +
                    std::to_string(blk.v1.dim()) + " * " +
                    std::to_string(blk.v2.dim());
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

/// Symmetry of a decomposition: V1 = V2* per block; equivalent to V* = V.
inline bool is_symmetric_decomposition(const Decomposition& d,
                                       const Tolerances& tol = {}) {
  for (const auto& blk : d.blocks)
    if (!subspace_equals(blk.v1, subspace_adjoint(blk.v2, tol), tol))
      return false;
  return true;
}

/// V^2 subset of V for the relation subspace.
inline bool transitivity_check(const QuantumMultiRelation& v,
                               const Tolerances& tol = {}) {
  return subspace_contains(v.subspace,
                           subspace_product(v.subspace, v.subspace, tol), tol);
}

/// Component indicators: the projectors onto vec(V1) and vec(V2), together
/// with the check that their leg-permuted Kronecker product reproduces the
/// indicator of V_b. A failure signals a convention bug, not a mathematical
/// property of the input.
struct ComponentIndicators {
  std::vector<ComplexMatrix> p_v1;  // per block
  std::vector<ComplexMatrix> p_v2;  // per block
  double worst_factorization_error = 0.0;
};

inline ComponentIndicators component_indicators(const Decomposition& d,
                                                const Tolerances& tol = {}) {
  if (!d.decomposable)
    throw PreconditionError("component_indicators: relation not decomposable");
  ComponentIndicators out;
  for (const auto& blk : d.blocks) {
    const std::size_t dim_h = blk.v1.rows();
    const std::size_t mb = blk.v1.cols();
    const auto& p1 = blk.v1.projector();
    const auto& p2 = blk.v2.projector();
    // sigma' as a permutation of the four vec legs (h, k, k2, h2) ->
    // (h, k, h2, k2).
    const auto swapped = reorder_legs(kron(p1, p2),
                                      LegShape{dim_h, mb, mb, dim_h},
                                      {0, 1, 3, 2});
    const double err = distance(swapped, blk.v_b.projector());
    out.worst_factorization_error =
        std::max(out.worst_factorization_error, err);
    out.p_v1.push_back(p1);
    out.p_v2.push_back(p2);
  }
  if (out.worst_factorization_error >
      tol.eq * static_cast<double>(d.blocks.size()))
    throw ConsistencyError(
        "component_indicators: sigma' factorization failed with error " +
        std::to_string(out.worst_factorization_error));
  return out;
}

namespace detail {

/// tr over the first leg of Pi (x kron 1), for Pi on legs [d1, d2]:
/// result[beta, delta] = sum_{t, gamma} Pi[(t, beta), (gamma, delta)]
/// x[gamma, t].
inline ComplexMatrix contract_first_leg(const ComplexMatrix& pi,
                                        std::size_t d1, std::size_t d2,
                                        const ComplexMatrix& x) {
  ComplexMatrix out(d2, d2);
  for (std::size_t beta = 0; beta < d2; ++beta)
    for (std::size_t delta = 0; delta < d2; ++delta) {
      Complex s{0.0, 0.0};
      for (std::size_t t = 0; t < d1; ++t)
        for (std::size_t gamma = 0; gamma < d1; ++gamma)
          s += pi(t * d2 + beta, gamma * d2 + delta) * x(gamma, t);
      out(beta, delta) = s;
    }
  return out;
}

}  // namespace detail

/// The weighted adjacency of a decomposable relation is the composition of
/// the two component adjacencies, summed over label blocks:
/// A_{S_V} = sum_b A_{P_{V2,b}} o A_{P_{V1,b}}.
inline bool adjacency_composition_check(const QuantumMultiRelation& v,
                                        const Decomposition& d,
                                        const Tolerances& tol = {}) {
  if (!d.decomposable)
    throw PreconditionError(
        "adjacency_composition_check: relation not decomposable");
  const std::size_t dim_h = v.dim_h();
  const auto m_units = v.m_alg.units();
  const std::size_t dm = m_units.size();
  ComplexMatrix composed(dm, dm);
  for (const auto& blk : d.blocks) {
    const std::size_t mb = blk.v1.cols();
    const auto& p1 = blk.v1.projector();  // legs [dim_h, mb]
    const auto& p2 = blk.v2.projector();  // legs [mb, dim_h]
    for (std::size_t col = 0; col < dm; ++col) {
      const auto g = v.m_alg.matrix_unit(m_units[col].block, m_units[col].i,
                                         m_units[col].j);
      // The intermediate element lives in N^op; hand it to the second
      // contraction through the conjugate representation (transpose), and
      // undo the representation on the way out.
      const auto mid = detail::contract_first_leg(p1, dim_h, mb, g);
      const auto res =
          detail::contract_first_leg(p2, mb, dim_h, mid.transpose())
              .transpose();
      for (std::size_t row = 0; row < dm; ++row) {
        const std::size_t ri =
            v.m_alg.offset(m_units[row].block) + m_units[row].i;
        const std::size_t rj =
            v.m_alg.offset(m_units[row].block) + m_units[row].j;
        composed(row, col) += res(ri, rj);
      }
    }
  }
  const auto weighted = adjacency_weighted(v, tol);
  return distance(composed, weighted.l2_matrix) <=
         tol.eq * std::max(1.0, weighted.l2_matrix.frobenius_norm());
}

/// Synthesizes a CP map whose confusability multigraph is the given
/// symmetric decomposable relation. Per label block, the Kraus operators
/// are an orthonormal basis of the recovered component space, split along
/// the input blocks.
inline ChannelMap synthesize_channel(const QuantumMultiRelation& v,
                                     const Tolerances& tol = {}) {
  if (!subspace_equals(subspace_adjoint(v.subspace, tol), v.subspace, tol))
    throw PreconditionError("synthesize_channel: relation is not symmetric");
  const auto d = try_decompose(v, tol);
  if (!d.decomposable)
    throw PreconditionError("synthesize_channel: not decomposable (" +
                            d.failure + ")");

  const std::size_t dim_h = v.dim_h();
  std::vector<KrausOperator> kraus;
  for (const auto& blk : d.blocks) {
    if (blk.v_b.dim() == 0) continue;
    const std::size_t mb = v.n_alg.block_dim(blk.out_block);
    // Range of sum_a G_a G_a^dag over the block basis recovers the span of
    // the vectors vec(F^dag).
    ComplexMatrix acc(dim_h * mb, dim_h * mb);
    for (const auto& g : blk.v_b.basis()) acc += g * g.adjoint();
    const auto eig = hermitian_eig(acc, tol);
    const double top = eig.values.empty() ? 0.0 : eig.values.front();
    std::vector<CVector> u_vectors;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= tol.rank * top) break;
      CVector u(dim_h * mb);
      for (std::size_t t = 0; t < dim_h * mb; ++t) u[t] = eig.vectors(t, k);
      u_vectors.push_back(std::move(u));
    }

    // Split along input blocks; the bimodule axiom grades the recovered
    // space, so the dimensions must add up.
    std::size_t split_dim = 0;
    for (std::size_t a = 0; a < v.m_alg.n_blocks(); ++a) {
      std::vector<CVector> masked;
      for (const auto& u : u_vectors) {
        CVector w(dim_h * mb, Complex{0.0, 0.0});
        double weight = 0.0;
        for (std::size_t i = 0; i < v.m_alg.block_dim(a); ++i)
          for (std::size_t p = 0; p < mb; ++p) {
            const std::size_t t = (v.m_alg.offset(a) + i) * mb + p;
            w[t] = u[t];
            weight += std::norm(u[t]);
          }
        if (std::sqrt(weight) > tol.rank) masked.push_back(std::move(w));
      }
      const auto span = orthonormal_span(masked, dim_h * mb, tol);
      split_dim += span.basis.size();
      for (const auto& u : span.basis) {
        // u = vec(F^dag) with F^dag of shape dim_h x mb; the Kraus operator
        // is its adjoint.
        kraus.push_back(
            {blk.out_block, a, mat(u, dim_h, mb).adjoint()});
      }
    }
    if (split_dim != u_vectors.size())
      throw ValidationError(
          "synthesis_block_form",
          "recovered Kraus space of block " + std::to_string(blk.out_block) +
              " does not split along the input blocks");
  }
  return make_channel(v.m_alg, BlockAlgebra(v.n_alg.block_dims()),
                      std::move(kraus), tol);
}

struct RoundtripReport {
  bool pass = false;
  double projector_distance = 0.0;
  std::size_t dim_relation = 0;
  std::size_t dim_multigraph = 0;
  std::vector<KrausOperator> kraus;
};

/// Synthesizes a channel from the relation and verifies that its
/// confusability multigraph reproduces the relation subspace.
inline RoundtripReport roundtrip_verify(const QuantumMultiRelation& v,
                                        const Tolerances& tol = {}) {
  const auto phi = synthesize_channel(v, tol);
  const auto s = confusability_multigraph(phi, tol);
  RoundtripReport report;
  report.dim_relation = v.subspace.dim();
  report.dim_multigraph = s.subspace.dim();
  report.projector_distance = projector_distance(s.subspace, v.subspace);
  report.pass = report.projector_distance < tol.eq;
  report.kraus = phi.kraus();
  return report;
}

}  // namespace qmg
