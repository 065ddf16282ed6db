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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmg/algebra.hpp"
#include "qmg/channel.hpp"
#include "qmg/classical.hpp"
#include "qmg/confusability.hpp"
#include "qmg/matrix.hpp"
#include "qmg/subspace.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// A quantum multi-relation (labeled multigraph) on a pair of block algebras
/// (M, N): a subspace V of B(H kron K) that lies in B(H) kron N, is an
/// (M' kron 1)-(M' kron 1) bimodule and is stable under the center of N.
struct QuantumMultiRelation {
  BlockAlgebra m_alg;  // vertices, minimally represented on H
  BlockAlgebra n_alg;  // labels, minimally represented on K
  OperatorSubspace subspace;

  std::size_t dim_h() const { return m_alg.total_dim(); }
  std::size_t dim_k() const { return n_alg.total_dim(); }
};

struct RelationReport {
  bool valid = true;
  std::string failed_axiom;  // "containment", "bimodule" or "center"
  std::string witness;
  std::size_t dim = 0;
};

namespace detail {

inline ComplexMatrix embed_left(const ComplexMatrix& c, std::size_t dim_k) {
  return kron(c, ComplexMatrix::identity(dim_k));
}

inline ComplexMatrix embed_right(std::size_t dim_h, const ComplexMatrix& z) {
  return kron(ComplexMatrix::identity(dim_h), z);
}

}  // namespace detail

/// Verifies the three multi-relation axioms for a given subspace; never
/// throws on a mathematical failure, only on shape mismatches.
inline RelationReport verify_multirelation(const BlockAlgebra& m_alg,
                                           const BlockAlgebra& n_alg,
                                           const OperatorSubspace& v,
                                           const Tolerances& tol = {}) {
  const std::size_t dim_h = m_alg.total_dim();
  const std::size_t dim_k = n_alg.total_dim();
  if (v.rows() != dim_h * dim_k || v.cols() != dim_h * dim_k)
    throw DimensionError("relation subspace does not act on H kron K");

  RelationReport report;
  report.dim = v.dim();

  // Containment: V inside B(H) kron N.
  std::vector<ComplexMatrix> amb;
  for (std::size_t i = 0; i < dim_h; ++i)
    for (std::size_t j = 0; j < dim_h; ++j)
      for (const auto& u : n_alg.units())
        amb.push_back(kron(ComplexMatrix::unit(dim_h, dim_h, i, j),
                           n_alg.matrix_unit(u.block, u.i, u.j)));
  const auto host =
      OperatorSubspace::from_spanning(dim_h * dim_k, dim_h * dim_k, amb, tol);
  for (std::size_t g = 0; g < v.dim(); ++g) {
    if (!host.contains_matrix(v.basis()[g], tol.axiom)) {
      report.valid = false;
      report.failed_axiom = "containment";
      report.witness = "basis element " + std::to_string(g) +
                       " leaves B(H) kron N";
      return report;
    }
  }

  // Bimodule over M' kron 1: block projectors generate the commutant.
  for (std::size_t a = 0; a < m_alg.n_blocks(); ++a) {
    const auto ca = detail::embed_left(m_alg.block_projector(a), dim_k);
    for (std::size_t a2 = 0; a2 < m_alg.n_blocks(); ++a2) {
      const auto ca2 = detail::embed_left(m_alg.block_projector(a2), dim_k);
      for (std::size_t g = 0; g < v.dim(); ++g) {
        const auto w = ca * v.basis()[g] * ca2;
        if (w.frobenius_norm() <= tol.axiom) continue;
        if (!v.contains_matrix(w, tol.axiom)) {
          report.valid = false;
          report.failed_axiom = "bimodule";
          report.witness = "(1_" + std::to_string(a) + " kron 1) V (1_" +
                           std::to_string(a2) + " kron 1) leaves V at basis " +
                           std::to_string(g);
          return report;
        }
      }
    }
  }

  // Stability under the center of N.
  for (std::size_t b = 0; b < n_alg.n_blocks(); ++b) {
    const auto zb = detail::embed_right(dim_h, n_alg.block_projector(b));
    for (std::size_t g = 0; g < v.dim(); ++g) {
      const auto w = zb * v.basis()[g];
      if (w.frobenius_norm() <= tol.axiom) continue;
      if (!v.contains_matrix(w, tol.axiom)) {
        report.valid = false;
        report.failed_axiom = "center";
        report.witness = "(1 kron z_" + std::to_string(b) +
                         ") V leaves V at basis " + std::to_string(g);
        return report;
      }
    }
  }
  return report;
}

/// Checked constructor: orthonormalizes the spanning family and verifies the
/// axioms, throwing a ValidationError naming the failed axiom otherwise.
inline QuantumMultiRelation make_multirelation(
    const BlockAlgebra& m_alg, const BlockAlgebra& n_alg,
    const std::vector<ComplexMatrix>& spanning, const Tolerances& tol = {}) {
  const std::size_t d = m_alg.total_dim() * n_alg.total_dim();
  auto v = OperatorSubspace::from_spanning(d, d, spanning, tol);
  const auto report = verify_multirelation(m_alg, n_alg, v, tol);
  if (!report.valid)
    throw ValidationError(report.failed_axiom,
                          "not a quantum multi-relation: " + report.witness);
  return QuantumMultiRelation{m_alg, n_alg, std::move(v)};
}

/// V_R = span{ e_{x1 x2} kron e_{yy} : (x1, x2, y) in R } over diagonal
/// algebras.
inline QuantumMultiRelation from_classical(const ClassicalMultiRelation& r,
                                           const Tolerances& tol = {}) {
  const BlockAlgebra m_alg(std::vector<std::size_t>(r.x_size, 1));
  const BlockAlgebra n_alg(std::vector<std::size_t>(r.y_size, 1));
  std::vector<ComplexMatrix> gens;
  gens.reserve(r.triples.size());
  for (const auto& t : r.triples)
    gens.push_back(kron(ComplexMatrix::unit(r.x_size, r.x_size, t[0], t[1]),
                        ComplexMatrix::unit(r.y_size, r.y_size, t[2], t[2])));
  const std::size_t d = r.x_size * r.y_size;
  return QuantumMultiRelation{
      m_alg, n_alg, OperatorSubspace::from_spanning(d, d, gens, tol)};
}

/// R_V = { (x1, x2, y) : some T in V has a nonzero ((x1,y),(x2,y)) entry }.
/// Requires both algebras diagonal; inverse of from_classical on valid
/// relations.
inline ClassicalMultiRelation to_classical(const QuantumMultiRelation& v,
                                           const Tolerances& tol = {}) {
  if (!v.m_alg.is_diagonal() || !v.n_alg.is_diagonal())
    throw UnsupportedError(
        "to_classical: requires diagonal vertex and label algebras");
  const std::size_t n_x = v.m_alg.n_blocks();
  const std::size_t n_y = v.n_alg.n_blocks();
  ClassicalMultiRelation r{n_x, n_y, {}};
  for (const auto& t : v.subspace.basis())
    for (std::size_t x1 = 0; x1 < n_x; ++x1)
      for (std::size_t x2 = 0; x2 < n_x; ++x2)
        for (std::size_t y = 0; y < n_y; ++y)
          if (std::abs(t(x1 * n_y + y, x2 * n_y + y)) > tol.entry)
            r.insert(x1, x2, y);
  return r;
}

/// Reinterprets a confusability multigraph as a multi-relation over
/// (in_alg, out-dims algebra on the conjugate output coordinates).
inline QuantumMultiRelation multigraph_as_relation(
    const ConfusabilityMultigraph& s) {
  return QuantumMultiRelation{s.in_alg, BlockAlgebra(s.out_alg.block_dims()),
                              s.subspace};
}

/// True when the matrix commutes with left and right multiplication by every
/// product of block projectors of the two algebras. By the bicommutant this
/// certifies membership of the matrix, viewed as a superoperator, in the
/// Weaver image of M kron M^op kron N kron N^op.
inline bool weaver_membership_ok(const ComplexMatrix& p,
                                 const BlockAlgebra& m_alg,
                                 const BlockAlgebra& n_alg,
                                 const Tolerances& tol = {}) {
  const std::size_t dim_h = m_alg.total_dim();
  const std::size_t dim_k = n_alg.total_dim();
  const std::size_t d = dim_h * dim_k;
  if (p.rows() != d * d || p.cols() != d * d) return false;
  const double scale = std::max(1.0, p.frobenius_norm());

  // Commutant generators 1_a kron 1_b are diagonal 0/1 matrices, and so are
  // their left/right multiplication superoperators; commutation reduces to
  // scanning entries that straddle the masks.
  for (std::size_t a = 0; a < m_alg.n_blocks(); ++a)
    for (std::size_t b = 0; b < n_alg.n_blocks(); ++b) {
      std::vector<char> mask(d, 0);
      for (std::size_t i = 0; i < m_alg.block_dim(a); ++i)
        for (std::size_t k = 0; k < n_alg.block_dim(b); ++k)
          mask[(m_alg.offset(a) + i) * dim_k + n_alg.offset(b) + k] = 1;
      double worst = 0.0;
      for (std::size_t r = 0; r < d * d; ++r) {
        const char lr = mask[r / d];
        const char rr = mask[r % d];
        for (std::size_t c = 0; c < d * d; ++c) {
          const char lc = mask[c / d];
          const char rc = mask[c % d];
          if (lr != lc || rr != rc)
            worst = std::max(worst, std::abs(p(r, c)));
        }
      }
      if (worst > tol.axiom * scale) return false;
    }
  return true;
}

/// The quantum multi-edge indicator: the orthogonal projection onto vec(V),
/// certified to lie in the Weaver image of M kron M^op kron N kron N^op.
inline ComplexMatrix multi_edge_indicator(const QuantumMultiRelation& v,
                                          const Tolerances& tol = {}) {
  const ComplexMatrix& p = v.subspace.projector();
  if (!weaver_membership_ok(p, v.m_alg, v.n_alg, tol))
    throw ConsistencyError(
        "multi_edge_indicator: projector escapes the Weaver algebra; the "
        "subspace is not a valid multi-relation");
  return p;
}

struct UnderlyingGraph {
  OperatorSubspace subspace;  // within B(H)
  ComplexMatrix projector;    // on vec(B(H))
};

/// The underlying single-edged graph: trace out the label leg of every basis
/// element and re-span. The result is checked to be an M'-M' bimodule in
/// B(H).
inline UnderlyingGraph underlying_graph(const QuantumMultiRelation& v,
                                        const Tolerances& tol = {}) {
  const std::size_t dim_h = v.dim_h();
  const LegShape shape{dim_h, v.dim_k()};
  std::vector<ComplexMatrix> traced;
  traced.reserve(v.subspace.dim());
  for (const auto& b : v.subspace.basis())
    traced.push_back(partial_trace(b, shape, 1));
  auto sub = OperatorSubspace::from_spanning(dim_h, dim_h, traced, tol);
  for (std::size_t a = 0; a < v.m_alg.n_blocks(); ++a)
    for (std::size_t a2 = 0; a2 < v.m_alg.n_blocks(); ++a2)
      for (const auto& b : sub.basis()) {
        const auto w =
            v.m_alg.block_projector(a) * b * v.m_alg.block_projector(a2);
        if (w.frobenius_norm() > tol.axiom &&
            !sub.contains_matrix(w, tol.axiom))
          throw ConsistencyError(
              "underlying_graph: trace image is not an M'-M' bimodule");
      }
  auto proj = sub.projector();
  return UnderlyingGraph{std::move(sub), std::move(proj)};
}

/// Weaver matrix of the weighted edge indicator on vec(B(H)). With {G_a} an
/// orthonormal basis of V and t_a = (id kron tr_K)(G_a), the superoperator
/// X -> (id kron tr_K)(Proj_V(X kron 1)) has matrix sum_a |vec t_a><vec t_a|,
/// manifestly positive with range vec of the underlying graph.
inline ComplexMatrix weighted_edge_indicator(const QuantumMultiRelation& v,
                                             const Tolerances& tol = {}) {
  (void)tol;
  const std::size_t dim_h = v.dim_h();
  const LegShape shape{dim_h, v.dim_k()};
  ComplexMatrix s(dim_h * dim_h, dim_h * dim_h);
  for (const auto& g : v.subspace.basis()) {
    const auto t = vec(partial_trace(g, shape, 1));
    s += outer(t, t);
  }
  return s;
}

/// The three indicators of a multi-relation.
struct IndicatorSet {
  ComplexMatrix p_v;           // projector on vec(B(H kron K))
  ComplexMatrix p_underlying;  // projector on vec(B(H))
  ComplexMatrix s_v;           // Weaver matrix of the weighted indicator
};

inline IndicatorSet indicators(const QuantumMultiRelation& v,
                               const Tolerances& tol = {}) {
  return IndicatorSet{multi_edge_indicator(v, tol),
                      underlying_graph(v, tol).projector,
                      weighted_edge_indicator(v, tol)};
}

/// A quantum adjacency operator, stored as the images of the matrix units of
/// its domain algebra (M, or M kron N for the multi-adjacency) in the
/// concrete representation, together with its matrix on L2.
struct AdjacencyOperator {
  BlockAlgebra m_alg;
  std::optional<BlockAlgebra> n_alg;   // engaged for the multi-adjacency
  std::vector<ComplexMatrix> images;   // composite unit order (m-major)
  ComplexMatrix l2_matrix;

  std::size_t unit_count() const {
    return m_alg.unit_count() * (n_alg ? n_alg->unit_count() : 1);
  }
  const ComplexMatrix& image(std::size_t m_unit, std::size_t n_unit = 0) const {
    const std::size_t dn = n_alg ? n_alg->unit_count() : 1;
    return images.at(m_unit * dn + n_unit);
  }
};

namespace detail {

/// The adjacency contraction A(x) = [tr_1(Pi (x kron 1))]^t evaluated on a
/// matrix unit e_{IJ} of B(W) reduces to re-indexing Pi:
/// A(e_IJ)[d, b] = Pi[(J, b), (I, d)].
inline ComplexMatrix adjacency_image_of_unit(const ComplexMatrix& pi,
                                             std::size_t dim_w, std::size_t I,
                                             std::size_t J) {
  ComplexMatrix img(dim_w, dim_w);
  for (std::size_t d = 0; d < dim_w; ++d)
    for (std::size_t b = 0; b < dim_w; ++b)
      img(d, b) = pi(J * dim_w + b, I * dim_w + d);
  return img;
}

}  // namespace detail

/// The quantum multi-adjacency operator on M kron N, obtained by contracting
/// the multi-edge indicator.
inline AdjacencyOperator adjacency_multi(const QuantumMultiRelation& v,
                                         const Tolerances& tol = {}) {
  const ComplexMatrix p = multi_edge_indicator(v, tol);
  const std::size_t dim_h = v.dim_h();
  const std::size_t dim_k = v.dim_k();
  const std::size_t d = dim_h * dim_k;

  AdjacencyOperator adj;
  adj.m_alg = v.m_alg;
  adj.n_alg = v.n_alg;
  const auto m_units = v.m_alg.units();
  const auto n_units = v.n_alg.units();
  adj.images.reserve(m_units.size() * n_units.size());
  for (const auto& mu : m_units)
    for (const auto& nu : n_units) {
      const std::size_t gi = v.m_alg.offset(mu.block) + mu.i;
      const std::size_t gj = v.m_alg.offset(mu.block) + mu.j;
      const std::size_t gk = v.n_alg.offset(nu.block) + nu.i;
      const std::size_t gl = v.n_alg.offset(nu.block) + nu.j;
      adj.images.push_back(detail::adjacency_image_of_unit(
          p, d, gi * dim_k + gk, gj * dim_k + gl));
    }

  // Matrix on L2(M) kron L2(N) in the matrix-unit basis.
  const std::size_t dm = m_units.size();
  const std::size_t dn = n_units.size();
  adj.l2_matrix = ComplexMatrix(dm * dn, dm * dn);
  for (std::size_t col = 0; col < dm * dn; ++col) {
    const auto& img = adj.images[col];
    for (std::size_t rm = 0; rm < dm; ++rm)
      for (std::size_t rn = 0; rn < dn; ++rn) {
        const std::size_t ri = v.m_alg.offset(m_units[rm].block) + m_units[rm].i;
        const std::size_t rj = v.m_alg.offset(m_units[rm].block) + m_units[rm].j;
        const std::size_t rk = v.n_alg.offset(n_units[rn].block) + n_units[rn].i;
        const std::size_t rl = v.n_alg.offset(n_units[rn].block) + n_units[rn].j;
        adj.l2_matrix(rm * dn + rn, col) =
            img(ri * dim_k + rk, rj * dim_k + rl);
      }
  }
  return adj;
}

namespace detail {

/// Adjacency on M alone from an indicator matrix on vec(B(H)).
inline AdjacencyOperator adjacency_on_m(const BlockAlgebra& m_alg,
                                        const ComplexMatrix& pi) {
  const std::size_t dim_h = m_alg.total_dim();
  AdjacencyOperator adj;
  adj.m_alg = m_alg;
  const auto m_units = m_alg.units();
  adj.images.reserve(m_units.size());
  for (const auto& mu : m_units) {
    const std::size_t gi = m_alg.offset(mu.block) + mu.i;
    const std::size_t gj = m_alg.offset(mu.block) + mu.j;
    adj.images.push_back(adjacency_image_of_unit(pi, dim_h, gi, gj));
  }
  const std::size_t dm = m_units.size();
  adj.l2_matrix = ComplexMatrix(dm, dm);
  for (std::size_t col = 0; col < dm; ++col)
    for (std::size_t row = 0; row < dm; ++row) {
      const std::size_t ri = m_alg.offset(m_units[row].block) + m_units[row].i;
      const std::size_t rj = m_alg.offset(m_units[row].block) + m_units[row].j;
      adj.l2_matrix(row, col) = adj.images[col](ri, rj);
    }
  return adj;
}

}  // namespace detail

/// The weighted adjacency operator on M.
inline AdjacencyOperator adjacency_weighted(const QuantumMultiRelation& v,
                                            const Tolerances& tol = {}) {
  return detail::adjacency_on_m(v.m_alg, weighted_edge_indicator(v, tol));
}

/// The adjacency operator of the underlying single-edged graph on M.
inline AdjacencyOperator adjacency_underlying(const QuantumMultiRelation& v,
                                              const Tolerances& tol = {}) {
  return detail::adjacency_on_m(v.m_alg, underlying_graph(v, tol).projector);
}

/// Schur idempotence: A(e_ji) = sum_k A(e_jk) A(e_ki) on every matrix unit,
/// equivalently m (A kron A) m* = A.
inline bool schur_idempotent_check(const AdjacencyOperator& adj,
                                   const Tolerances& tol = {}) {
  // Composite blocks of M (or M kron N) with an accessor into the image
  // table by (block, row, col) local indices.
  struct Block {
    std::size_t dim;
    std::vector<std::size_t> image_index;  // dim*dim entries
  };
  std::vector<Block> blocks;
  const auto m_units = adj.m_alg.units();
  if (!adj.n_alg) {
    std::size_t base = 0;
    for (std::size_t a = 0; a < adj.m_alg.n_blocks(); ++a) {
      const std::size_t na = adj.m_alg.block_dim(a);
      Block blk{na, {}};
      blk.image_index.resize(na * na);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
          blk.image_index[i * na + j] = base + i * na + j;
      base += na * na;
      blocks.push_back(std::move(blk));
    }
  } else {
    const std::size_t dn = adj.n_alg->unit_count();
    for (std::size_t a = 0; a < adj.m_alg.n_blocks(); ++a)
      for (std::size_t b = 0; b < adj.n_alg->n_blocks(); ++b) {
        const std::size_t na = adj.m_alg.block_dim(a);
        const std::size_t mb = adj.n_alg->block_dim(b);
        Block blk{na * mb, {}};
        blk.image_index.resize(na * mb * na * mb);
        for (std::size_t i1 = 0; i1 < na; ++i1)
          for (std::size_t i2 = 0; i2 < mb; ++i2)
            for (std::size_t j1 = 0; j1 < na; ++j1)
              for (std::size_t j2 = 0; j2 < mb; ++j2) {
                const std::size_t m_unit =
                    adj.m_alg.unit_flat_index(a, i1, j1);
                const std::size_t n_unit =
                    adj.n_alg->unit_flat_index(b, i2, j2);
                blk.image_index[(i1 * mb + i2) * (na * mb) + (j1 * mb + j2)] =
                    m_unit * dn + n_unit;
              }
        blocks.push_back(std::move(blk));
      }
  }

  for (const auto& blk : blocks) {
    const std::size_t nd = blk.dim;
    for (std::size_t j = 0; j < nd; ++j)
      for (std::size_t i = 0; i < nd; ++i) {
        const auto& lhs = adj.images[blk.image_index[j * nd + i]];
        ComplexMatrix rhs(lhs.rows(), lhs.cols());
        for (std::size_t k = 0; k < nd; ++k)
          rhs += adj.images[blk.image_index[j * nd + k]] *
                 adj.images[blk.image_index[k * nd + i]];
        if (distance(lhs, rhs) >
            tol.eq * std::max(1.0, lhs.frobenius_norm()))
          return false;
      }
  }
  return true;
}

/// Partial trace of the multi-adjacency over L2(N) equals the weighted
/// adjacency.
inline bool adjacency_trace_relation(const QuantumMultiRelation& v,
                                     const Tolerances& tol = {}) {
  const auto multi = adjacency_multi(v, tol);
  const auto weighted = adjacency_weighted(v, tol);
  const std::size_t dm = v.m_alg.unit_count();
  const std::size_t dn = v.n_alg.unit_count();
  const auto traced = partial_trace(multi.l2_matrix, LegShape{dm, dn}, 1);
  return distance(traced, weighted.l2_matrix) <=
         tol.eq * std::max(1.0, weighted.l2_matrix.frobenius_norm());
}

/// The adjacency as a unit-image map on its (product) algebra, represented
/// minimally, for feeding the CP test. For the multi-adjacency the product
/// M kron N is re-represented on the direct sum of the blocks H_a kron K_b.
inline UnitImageMap adjacency_as_map(const AdjacencyOperator& adj) {
  if (!adj.n_alg) {
    UnitImageMap phi{adj.m_alg, adj.m_alg, adj.images};
    return phi;
  }
  const BlockAlgebra& m = adj.m_alg;
  const BlockAlgebra& n = *adj.n_alg;
  std::vector<std::size_t> prod_dims;
  for (std::size_t a = 0; a < m.n_blocks(); ++a)
    for (std::size_t b = 0; b < n.n_blocks(); ++b)
      prod_dims.push_back(m.block_dim(a) * n.block_dim(b));
  const BlockAlgebra prod(prod_dims);

  // Permutation between the product representation and H kron K.
  const std::size_t dim_k = n.total_dim();
  std::vector<std::size_t> to_global;
  to_global.reserve(prod.total_dim());
  for (std::size_t a = 0; a < m.n_blocks(); ++a)
    for (std::size_t b = 0; b < n.n_blocks(); ++b)
      for (std::size_t i = 0; i < m.block_dim(a); ++i)
        for (std::size_t k = 0; k < n.block_dim(b); ++k)
          to_global.push_back((m.offset(a) + i) * dim_k + n.offset(b) + k);

  const std::size_t dn = n.unit_count();
  UnitImageMap phi{prod, prod, {}};
  phi.images.reserve(prod.unit_count());
  std::size_t blk = 0;
  for (std::size_t a = 0; a < m.n_blocks(); ++a)
    for (std::size_t b = 0; b < n.n_blocks(); ++b, ++blk) {
      const std::size_t na = m.block_dim(a);
      const std::size_t mb = n.block_dim(b);
      for (std::size_t ii = 0; ii < na * mb; ++ii)
        for (std::size_t jj = 0; jj < na * mb; ++jj) {
          const std::size_t m_unit =
              m.unit_flat_index(a, ii / mb, jj / mb);
          const std::size_t n_unit =
              n.unit_flat_index(b, ii % mb, jj % mb);
          const auto& img = adj.images[m_unit * dn + n_unit];
          ComplexMatrix out(prod.total_dim(), prod.total_dim());
          for (std::size_t r = 0; r < prod.total_dim(); ++r)
            for (std::size_t c = 0; c < prod.total_dim(); ++c)
              out(r, c) = img(to_global[r], to_global[c]);
          phi.images.push_back(std::move(out));
        }
    }
  return phi;
}

inline CpReport adjacency_is_cp(const AdjacencyOperator& adj,
                                const Tolerances& tol = {}) {
  return is_cp(adjacency_as_map(adj), tol);
}

}  // namespace qmg
