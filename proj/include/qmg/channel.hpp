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
#include "qmg/eig.hpp"
#include "qmg/matrix.hpp"
#include "qmg/subspace.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// One Kraus operator E : H_in -> H_out^b of a map between block algebras.
/// The matrix has block_dim(out_block) rows and total input dimension
/// columns, and is supported on the columns of a single input block.
struct KrausOperator {
  std::size_t out_block = 0;
  std::size_t in_block = 0;
  ComplexMatrix matrix;
};

/// A linear map between block algebras given by the images of the input
/// matrix units, each an operator on the full output space. This is the
/// representation the Choi-type invariant and the CP test work with; maps
/// like the transpose that admit no Kraus form still fit here.
struct UnitImageMap {
  BlockAlgebra in_alg;
  BlockAlgebra out_alg;
  std::vector<ComplexMatrix> images;  // indexed by in_alg unit order

  const ComplexMatrix& image(std::size_t a, std::size_t i,
                             std::size_t j) const {
    return images.at(in_alg.unit_flat_index(a, i, j));
  }

  /// Evaluates the map on a block-diagonal input by expanding in units.
  ComplexMatrix apply(const ComplexMatrix& x) const {
    ComplexMatrix out(out_alg.total_dim(), out_alg.total_dim());
    const auto us = in_alg.units();
    for (std::size_t k = 0; k < us.size(); ++k) {
      const Complex c = x(in_alg.offset(us[k].block) + us[k].i,
                          in_alg.offset(us[k].block) + us[k].j);
      if (c != Complex{0.0, 0.0}) out += c * images[k];
    }
    return out;
  }
};

/// A completely positive map between block algebras carried by block-form
/// Kraus operators, with the unit images cached.
class ChannelMap {
 public:
  ChannelMap(BlockAlgebra in_alg, BlockAlgebra out_alg,
             std::vector<KrausOperator> kraus, std::vector<ComplexMatrix> images)
      : in_alg_(std::move(in_alg)),
        out_alg_(std::move(out_alg)),
        kraus_(std::move(kraus)),
        images_{in_alg_, out_alg_, std::move(images)} {}

  const BlockAlgebra& in_alg() const { return in_alg_; }
  const BlockAlgebra& out_alg() const { return out_alg_; }
  const std::vector<KrausOperator>& kraus() const { return kraus_; }
  const UnitImageMap& unit_images() const { return images_; }

  /// Kraus operator embedded as H_in -> H_out (rows placed at the block
  /// offset).
  ComplexMatrix embedded_kraus(std::size_t k) const {
    const auto& op = kraus_.at(k);
    ComplexMatrix e(out_alg_.total_dim(), in_alg_.total_dim());
    const std::size_t off = out_alg_.offset(op.out_block);
    for (std::size_t r = 0; r < op.matrix.rows(); ++r)
      for (std::size_t c = 0; c < op.matrix.cols(); ++c)
        e(off + r, c) = op.matrix(r, c);
    return e;
  }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    return images_.apply(x);
  }

 private:
  BlockAlgebra in_alg_;
  BlockAlgebra out_alg_;
  std::vector<KrausOperator> kraus_;
  UnitImageMap images_;
};

namespace detail {

/// Determines the single input block supporting the columns of a Kraus
/// matrix, or throws naming the offending operator.
inline std::size_t single_support_block(const BlockAlgebra& in_alg,
                                        const ComplexMatrix& e,
                                        std::size_t kraus_index,
                                        const Tolerances& tol) {
  const double scale = std::max(1.0, e.frobenius_norm());
  std::optional<std::size_t> found;
  for (std::size_t a = 0; a < in_alg.n_blocks(); ++a) {
    double w = 0.0;
    for (std::size_t r = 0; r < e.rows(); ++r)
      for (std::size_t c = 0; c < in_alg.block_dim(a); ++c)
        w += std::norm(e(r, in_alg.offset(a) + c));
    if (std::sqrt(w) > tol.axiom * scale) {
      if (found)
        throw ValidationError(
            "block_form", "Kraus operator " + std::to_string(kraus_index) +
                              " is supported on more than one input block");
      found = a;
    }
  }
  if (!found)
    throw ValidationError("block_form",
                          "Kraus operator " + std::to_string(kraus_index) +
                              " is numerically zero");
  return *found;
}

inline std::vector<ComplexMatrix> unit_images_from_kraus(
    const BlockAlgebra& in_alg, const BlockAlgebra& out_alg,
    const std::vector<KrausOperator>& kraus) {
  const std::size_t n_out = out_alg.total_dim();
  std::vector<ComplexMatrix> images;
  images.reserve(in_alg.unit_count());
  for (const auto& u : in_alg.units()) {
    ComplexMatrix img(n_out, n_out);
    for (const auto& op : kraus) {
      if (op.in_block != u.block) continue;
      // (j_b E) e^a_{ij} (j_b E)^dag = |E e_i><E e_j| placed at block b.
      const std::size_t gi = in_alg.offset(u.block) + u.i;
      const std::size_t gj = in_alg.offset(u.block) + u.j;
      const std::size_t off = out_alg.offset(op.out_block);
      for (std::size_t r = 0; r < op.matrix.rows(); ++r) {
        const Complex left = op.matrix(r, gi);
        if (left == Complex{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < op.matrix.rows(); ++c)
          img(off + r, off + c) += left * std::conj(op.matrix(c, gj));
      }
    }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace detail

/// Builds a CP map from block-labeled Kraus operators. Operators that are
/// numerically zero are dropped; every kept operator must be supported on a
/// single input block.
inline ChannelMap make_channel(const BlockAlgebra& in_alg,
                               const BlockAlgebra& out_alg,
                               std::vector<KrausOperator> kraus,
                               const Tolerances& tol = {}) {
  std::vector<KrausOperator> kept;
  kept.reserve(kraus.size());
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    auto& op = kraus[k];
    if (op.out_block >= out_alg.n_blocks())
      throw ArgumentError("Kraus operator " + std::to_string(k) +
                          ": out_block out of range");
    if (op.matrix.rows() != out_alg.block_dim(op.out_block) ||
        op.matrix.cols() != in_alg.total_dim())
      throw DimensionError("Kraus operator " + std::to_string(k) +
                           ": shape does not match declared algebras");
    if (op.matrix.max_abs() < tol.kraus_drop) continue;
    op.in_block = detail::single_support_block(in_alg, op.matrix, k, tol);
    kept.push_back(std::move(op));
  }
  auto images = detail::unit_images_from_kraus(in_alg, out_alg, kept);
  return ChannelMap(in_alg, out_alg, std::move(kept), std::move(images));
}

/// Builds the channel of a classical information channel with transition
/// matrix p[y][x] = p(y|x). Columns must sum to one unless sub-stochastic
/// inputs are explicitly allowed (the map is then CP but not trace
/// preserving).
inline ChannelMap classical_channel(const std::vector<std::vector<double>>& p,
                                    bool allow_substochastic = false,
                                    const Tolerances& tol = {}) {
  if (p.empty() || p[0].empty())
    throw ArgumentError("classical_channel: empty transition matrix");
  const std::size_t n_y = p.size();
  const std::size_t n_x = p[0].size();
  for (const auto& row : p) {
    if (row.size() != n_x)
      throw ArgumentError("classical_channel: ragged transition matrix");
    for (double v : row)
      if (v < 0.0)
        throw ValidationError("stochastic",
                              "negative transition probability");
  }
  if (!allow_substochastic) {
    for (std::size_t x = 0; x < n_x; ++x) {
      double s = 0.0;
      for (std::size_t y = 0; y < n_y; ++y) s += p[y][x];
      if (std::abs(s - 1.0) > 1e-9)
        throw ValidationError("stochastic",
                              "column " + std::to_string(x) +
                                  " does not sum to 1");
    }
  }
  const BlockAlgebra in_alg(std::vector<std::size_t>(n_x, 1));
  const BlockAlgebra out_alg(std::vector<std::size_t>(n_y, 1));
  std::vector<KrausOperator> kraus;
  for (std::size_t x = 0; x < n_x; ++x)
    for (std::size_t y = 0; y < n_y; ++y) {
      if (p[y][x] <= 0.0) continue;
      ComplexMatrix e(1, n_x);
      e(0, x) = std::sqrt(p[y][x]);
      kraus.push_back({y, x, std::move(e)});
    }
  return make_channel(in_alg, out_alg, std::move(kraus), tol);
}

/// The Choi-type invariant in the conjugate-output picture: the matrix of
/// sum_{a,i,j} e^a_{ij} kron op_rep(Phi(e^a_{ji})) on H_in kron conj(H_out).
/// Positive semidefinite exactly when the map is completely positive.
struct ChoiOperator {
  ComplexMatrix matrix;
  BlockAlgebra in_alg;
  BlockAlgebra out_alg;
};

inline ChoiOperator choi(const UnitImageMap& phi) {
  const std::size_t n_in = phi.in_alg.total_dim();
  const std::size_t n_out = phi.out_alg.total_dim();
  if (phi.images.size() != phi.in_alg.unit_count())
    throw ArgumentError("choi: image table incomplete");
  ComplexMatrix c(n_in * n_out, n_in * n_out);
  for (const auto& u : phi.in_alg.units())
    c += kron(phi.in_alg.matrix_unit(u.block, u.i, u.j),
              op_rep(phi.image(u.block, u.j, u.i)));
  return ChoiOperator{std::move(c), phi.in_alg, phi.out_alg};
}

inline ChoiOperator choi(const ChannelMap& phi) {
  return choi(phi.unit_images());
}

struct CpReport {
  bool cp = false;
  bool star_preserving = false;
  double min_choi_eig = 0.0;
};

/// Complete positivity via the spectrum of the Choi-type invariant. A
/// non-Hermitian invariant means the map is not *-preserving; the report
/// then carries cp = false.
inline CpReport is_cp(const UnitImageMap& phi, const Tolerances& tol = {}) {
  const ChoiOperator c = choi(phi);
  CpReport report;
  const double scale = std::max(1.0, c.matrix.frobenius_norm());
  if ((c.matrix - c.matrix.adjoint()).frobenius_norm() >
      tol.hermitian * scale) {
    report.star_preserving = false;
    report.cp = false;
    return report;
  }
  report.star_preserving = true;
  const auto eig = hermitian_eig(c.matrix, tol);
  const double lo = eig.values.empty() ? 0.0 : eig.values.back();
  const double hi = eig.values.empty() ? 0.0 : std::abs(eig.values.front());
  report.min_choi_eig = lo;
  report.cp = lo >= -tol.psd * std::max(hi, 1.0);
  return report;
}

inline CpReport is_cp(const ChannelMap& phi, const Tolerances& tol = {}) {
  return is_cp(phi.unit_images(), tol);
}

/// True iff sum_k E_k^dag E_k = 1 on the input space.
inline bool is_trace_preserving(const ChannelMap& phi,
                                const Tolerances& tol = {}) {
  const std::size_t n = phi.in_alg().total_dim();
  ComplexMatrix s(n, n);
  for (const auto& op : phi.kraus()) s += op.matrix.adjoint() * op.matrix;
  return distance(s, ComplexMatrix::identity(n)) <=
         tol.axiom * std::sqrt(static_cast<double>(n));
}

/// Hilbert-Schmidt adjoint Phi*: O -> I, via
/// Phi*(x) = sum_{a,i,j} e^a_{ij} tr(Phi(e^a_{ji}) x).
inline UnitImageMap adjoint_map(const UnitImageMap& phi) {
  UnitImageMap adj;
  adj.in_alg = phi.out_alg;
  adj.out_alg = phi.in_alg;
  const std::size_t n_in = phi.in_alg.total_dim();
  for (const auto& v : phi.out_alg.units()) {
    const auto y = phi.out_alg.matrix_unit(v.block, v.i, v.j);
    ComplexMatrix img(n_in, n_in);
    for (const auto& u : phi.in_alg.units())
      img += (phi.image(u.block, u.j, u.i) * y).trace() *
             phi.in_alg.matrix_unit(u.block, u.i, u.j);
    adj.images.push_back(std::move(img));
  }
  return adj;
}

inline UnitImageMap adjoint_map(const ChannelMap& phi) {
  return adjoint_map(phi.unit_images());
}

/// Extracts block-form Kraus operators from a PSD Choi-type invariant. Each
/// output block is eigendecomposed separately and each eigen-Kraus is split
/// along input blocks; the split leaves the action on the input algebra
/// unchanged.
inline std::vector<KrausOperator> kraus_from_choi(const ChoiOperator& c,
                                                  const Tolerances& tol = {}) {
  const std::size_t n_in = c.in_alg.total_dim();
  const std::size_t n_out = c.out_alg.total_dim();
  if (c.matrix.rows() != n_in * n_out)
    throw DimensionError("kraus_from_choi: matrix does not match algebras");

  const double global_scale = c.matrix.frobenius_norm();
  std::vector<KrausOperator> kraus;
  for (std::size_t b = 0; b < c.out_alg.n_blocks(); ++b) {
    const std::size_t mb = c.out_alg.block_dim(b);
    const std::size_t off = c.out_alg.offset(b);
    // Compress the conjugate-output leg to block b.
    ComplexMatrix cb(n_in * mb, n_in * mb);
    for (std::size_t i = 0; i < n_in; ++i)
      for (std::size_t p = 0; p < mb; ++p)
        for (std::size_t j = 0; j < n_in; ++j)
          for (std::size_t q = 0; q < mb; ++q)
            cb(i * mb + p, j * mb + q) =
                c.matrix(i * n_out + off + p, j * n_out + off + q);
    if (cb.frobenius_norm() == 0.0) continue;
    const auto eig = hermitian_eig(cb, tol);
    const double top = std::abs(eig.values.front());
    if (eig.values.back() < -tol.psd * std::max(top, 1.0))
      throw NotCpError("kraus_from_choi: Choi operator has eigenvalue " +
                       std::to_string(eig.values.back()));
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= tol.rank * top) break;
      const double w = std::sqrt(eig.values[k]);
      // Gamma = sqrt(lambda) v lives in H_in kron conj(H_out^b); the Kraus
      // operator is mat(Gamma)^dag restricted per input block.
      for (std::size_t a = 0; a < c.in_alg.n_blocks(); ++a) {
        ComplexMatrix e(mb, n_in);
        double weight = 0.0;
        for (std::size_t p = 0; p < mb; ++p)
          for (std::size_t col = 0; col < c.in_alg.block_dim(a); ++col) {
            const std::size_t i = c.in_alg.offset(a) + col;
            const Complex v = std::conj(eig.vectors(i * mb + p, k)) * w;
            e(p, i) = v;
            weight += std::norm(v);
          }
        if (std::sqrt(weight) <= tol.kraus_drop * std::max(1.0, global_scale))
          continue;
        kraus.push_back({b, a, std::move(e)});
      }
    }
  }
  return kraus;
}

/// The Kraus space: the span of the embedded Kraus operators inside the
/// rectangular operator space B(H_in, H_out).
inline OperatorSubspace kraus_space(const ChannelMap& phi,
                                    const Tolerances& tol = {}) {
  std::vector<ComplexMatrix> gens;
  gens.reserve(phi.kraus().size());
  for (std::size_t k = 0; k < phi.kraus().size(); ++k)
    gens.push_back(phi.embedded_kraus(k));
  return OperatorSubspace::from_spanning(phi.out_alg().total_dim(),
                                         phi.in_alg().total_dim(), gens, tol);
}

}  // namespace qmg
