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

#include <cmath>
#include <cstddef>
#include <numeric>
#include <tuple>
#include <vector>

#include "qmg/matrix.hpp"
#include "qmg/subspace.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// Index of one matrix unit e^a_{ij} of a block algebra.
struct UnitIndex {
  std::size_t block;
  std::size_t i;
  std::size_t j;
};

/// A finite direct sum of full matrix algebras in its minimal
/// (multiplicity-one) representation on the direct sum of the block spaces.
/// Blocks keep their input order; global indices are block-offset based.
class BlockAlgebra {
 public:
  BlockAlgebra() = default;
  explicit BlockAlgebra(std::vector<std::size_t> block_dims)
      : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw ArgumentError("block algebra needs >= 1 block");
    offsets_.reserve(dims_.size());
    std::size_t off = 0;
    for (auto d : dims_) {
      if (d == 0) throw ArgumentError("zero-dimensional block");
      offsets_.push_back(off);
      off += d;
    }
    total_ = off;
  }

  std::size_t n_blocks() const { return dims_.size(); }
  std::size_t block_dim(std::size_t a) const { return dims_.at(a); }
  std::size_t offset(std::size_t a) const { return offsets_.at(a); }
  std::size_t total_dim() const { return total_; }
  const std::vector<std::size_t>& block_dims() const { return dims_; }
  bool is_diagonal() const {
    for (auto d : dims_)
      if (d != 1) return false;
    return true;
  }

  bool operator==(const BlockAlgebra& o) const { return dims_ == o.dims_; }

  /// Number of matrix units, i.e. the linear dimension sum_a n_a^2.
  std::size_t unit_count() const {
    std::size_t c = 0;
    for (auto d : dims_) c += d * d;
    return c;
  }

  /// Units enumerated lexicographically by (block, i, j).
  std::vector<UnitIndex> units() const {
    std::vector<UnitIndex> out;
    out.reserve(unit_count());
    for (std::size_t a = 0; a < dims_.size(); ++a)
      for (std::size_t i = 0; i < dims_[a]; ++i)
        for (std::size_t j = 0; j < dims_[a]; ++j) out.push_back({a, i, j});
    return out;
  }

  std::size_t unit_flat_index(std::size_t a, std::size_t i,
                              std::size_t j) const {
    check_unit(a, i, j);
    std::size_t base = 0;
    for (std::size_t b = 0; b < a; ++b) base += dims_[b] * dims_[b];
    return base + i * dims_[a] + j;
  }

  /// The matrix unit e^a_{ij} embedded in B(sum_a H_a).
  ComplexMatrix matrix_unit(std::size_t a, std::size_t i,
                            std::size_t j) const {
    check_unit(a, i, j);
    return ComplexMatrix::unit(total_, total_, offsets_[a] + i,
                               offsets_[a] + j);
  }

  /// The identity 1_a of block a, embedded.
  ComplexMatrix block_projector(std::size_t a) const {
    if (a >= dims_.size()) throw ArgumentError("block index out of range");
    ComplexMatrix p(total_, total_);
    for (std::size_t i = 0; i < dims_[a]; ++i)
      p(offsets_[a] + i, offsets_[a] + i) = 1.0;
    return p;
  }

  ComplexMatrix identity() const { return ComplexMatrix::identity(total_); }

  /// Commutant of the algebra in B(sum_a H_a). In the minimal representation
  /// this is spanned by the block identities, and equals the center.
  OperatorSubspace commutant() const {
    std::vector<ComplexMatrix> gens;
    gens.reserve(n_blocks());
    for (std::size_t a = 0; a < n_blocks(); ++a)
      gens.push_back(block_projector(a));
    return OperatorSubspace::from_spanning(total_, total_, gens);
  }

  OperatorSubspace center() const { return commutant(); }

  /// The algebra itself as a subspace of B(sum_a H_a).
  OperatorSubspace algebra_subspace() const {
    std::vector<ComplexMatrix> gens;
    gens.reserve(unit_count());
    for (const auto& u : units())
      gens.push_back(matrix_unit(u.block, u.i, u.j));
    return OperatorSubspace::from_spanning(total_, total_, gens);
  }

  /// True when the matrix is supported on the diagonal blocks.
  bool is_member(const ComplexMatrix& x, double tol) const {
    if (x.rows() != total_ || x.cols() != total_) return false;
    double off = 0.0;
    for (std::size_t r = 0; r < total_; ++r)
      for (std::size_t c = 0; c < total_; ++c)
        if (block_of(r) != block_of(c)) off += std::norm(x(r, c));
    return std::sqrt(off) <= tol * std::max(1.0, x.frobenius_norm());
  }

  std::size_t block_of(std::size_t global_index) const {
    for (std::size_t a = 0; a < dims_.size(); ++a)
      if (global_index < offsets_[a] + dims_[a]) return a;
    throw ArgumentError("global index out of range");
  }

  /// Comultiplication on a matrix unit, as a concrete operator on H kron H:
  /// m*(e^a_{ij}) = sum_k e^a_{ik} kron e^a_{kj}.
  ComplexMatrix comult_unit(std::size_t a, std::size_t i,
                            std::size_t j) const {
    check_unit(a, i, j);
    ComplexMatrix out(total_ * total_, total_ * total_);
    for (std::size_t k = 0; k < dims_[a]; ++k)
      out += kron(matrix_unit(a, i, k), matrix_unit(a, k, j));
    return out;
  }

  /// Multiplication applied to an element of the algebraic tensor square,
  /// given as a concrete operator on H kron H supported on span{x kron y}.
  ComplexMatrix mult_apply(const ComplexMatrix& t) const {
    if (t.rows() != total_ * total_ || t.cols() != total_ * total_)
      throw DimensionError("mult_apply: operand not on H kron H");
    ComplexMatrix out(total_, total_);
    const auto us = units();
    for (const auto& p : us) {
      const auto up = matrix_unit(p.block, p.i, p.j);
      for (const auto& q : us) {
        const auto uq = matrix_unit(q.block, q.i, q.j);
        const Complex coeff = hs_inner(kron(up, uq), t);
        if (coeff == Complex{0.0, 0.0}) continue;
        out += coeff * (up * uq);
      }
    }
    return out;
  }

 private:
  void check_unit(std::size_t a, std::size_t i, std::size_t j) const {
    if (a >= dims_.size() || i >= dims_[a] || j >= dims_[a])
      throw ArgumentError("matrix unit index out of range");
  }

  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// An element of a block algebra: a block-diagonal matrix on the total space.
struct AlgebraElement {
  BlockAlgebra parent;
  ComplexMatrix matrix;

  static AlgebraElement make(const BlockAlgebra& alg, ComplexMatrix m,
                             const Tolerances& tol = {}) {
    if (!alg.is_member(m, tol.axiom))
      throw ValidationError("block_form",
                            "matrix has weight outside the diagonal blocks");
    return AlgebraElement{alg, std::move(m)};
  }
};

/// Faithful representation of the opposite algebra on the conjugate space:
/// op_rep(x) = x^t, so op_rep(xy) = op_rep(y) op_rep(x).
inline ComplexMatrix op_rep(const ComplexMatrix& x) { return x.transpose(); }

}  // namespace qmg
