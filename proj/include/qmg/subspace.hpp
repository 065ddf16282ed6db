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
#include <utility>
#include <vector>

#include "qmg/eig.hpp"
#include "qmg/matrix.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

/// A linear subspace of the rows x cols matrices, stored as an orthonormal
/// (Hilbert-Schmidt) basis together with the orthogonal projector on the vec
/// space. Square ambients model subspaces of B(H); rectangular ambients model
/// spaces of maps between different Hilbert spaces (Kraus spaces,
/// decomposition components).
class OperatorSubspace {
 public:
  OperatorSubspace() = default;

  static OperatorSubspace zero(std::size_t rows, std::size_t cols) {
    OperatorSubspace s;
    s.rows_ = rows;
    s.cols_ = cols;
    s.projector_ = ComplexMatrix::zero(rows * cols, rows * cols);
    return s;
  }

  /// Orthonormalizes a spanning family; singular values at or below
  /// tol.rank * sigma_max are discarded.
  static OperatorSubspace from_spanning(std::size_t rows, std::size_t cols,
                                        const std::vector<ComplexMatrix>& mats,
                                        const Tolerances& tol = {}) {
    std::vector<CVector> columns;
    columns.reserve(mats.size());
    for (const auto& m : mats) {
      if (m.rows() != rows || m.cols() != cols)
        throw DimensionError("from_spanning: ambient shape mismatch");
      columns.push_back(vec(m));
    }
    SvdSpan span = orthonormal_span(columns, rows * cols, tol);
    OperatorSubspace s = zero(rows, cols);
    for (auto& v : span.basis) {
      s.projector_ += outer(v, v);
      s.basis_.push_back(mat(std::move(v), rows, cols));
    }
    return s;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& projector() const { return projector_; }

  /// Scale used for projector comparisons, per the ambient space the
  /// operators act on.
  double ambient_scale() const {
    return static_cast<double>(std::max(rows_, cols_));
  }

  /// Orthogonal projection of an ambient matrix onto the subspace.
  ComplexMatrix project(const ComplexMatrix& x) const {
    if (x.rows() != rows_ || x.cols() != cols_)
      throw DimensionError("project: ambient shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (const auto& b : basis_) out += hs_inner(b, x) * b;
    return out;
  }

  /// Residual distance of x from the subspace.
  double membership_residual(const ComplexMatrix& x) const {
    return distance(x, project(x));
  }

  bool contains_matrix(const ComplexMatrix& x, double rel_tol) const {
    const double nx = x.frobenius_norm();
    return membership_residual(x) <= rel_tol * std::max(1.0, nx);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ComplexMatrix> basis_;
  ComplexMatrix projector_;
};

inline void require_same_ambient(const OperatorSubspace& u,
                                 const OperatorSubspace& w) {
  if (u.rows() != w.rows() || u.cols() != w.cols())
    throw ArgumentError("operator subspaces live in different ambients");
}

inline double projector_distance(const OperatorSubspace& u,
                                 const OperatorSubspace& w) {
  require_same_ambient(u, w);
  return distance(u.projector(), w.projector());
}

inline bool subspace_equals(const OperatorSubspace& u,
                            const OperatorSubspace& w,
                            const Tolerances& tol = {}) {
  require_same_ambient(u, w);
  return projector_distance(u, w) < tol.eq * u.ambient_scale();
}

inline bool subspace_contains(const OperatorSubspace& u,
                              const OperatorSubspace& w,
                              const Tolerances& tol = {}) {
  require_same_ambient(u, w);
  return distance(u.projector() * w.projector(), w.projector()) <
         tol.eq * u.ambient_scale();
}

/// Span of all pairwise products u * w.
inline OperatorSubspace subspace_product(const OperatorSubspace& u,
                                         const OperatorSubspace& w,
                                         const Tolerances& tol = {}) {
  if (u.cols() != w.rows())
    throw ArgumentError("subspace_product: inner ambient dimensions differ");
  std::vector<ComplexMatrix> prods;
  prods.reserve(u.dim() * w.dim());
  for (const auto& a : u.basis())
    for (const auto& b : w.basis()) prods.push_back(a * b);
  return OperatorSubspace::from_spanning(u.rows(), w.cols(), prods, tol);
}

/// Span of elementwise adjoints.
inline OperatorSubspace subspace_adjoint(const OperatorSubspace& u,
                                         const Tolerances& tol = {}) {
  std::vector<ComplexMatrix> adj;
  adj.reserve(u.dim());
  for (const auto& b : u.basis()) adj.push_back(b.adjoint());
  return OperatorSubspace::from_spanning(u.cols(), u.rows(), adj, tol);
}

inline OperatorSubspace subspace_sum(const OperatorSubspace& u,
                                     const OperatorSubspace& w,
                                     const Tolerances& tol = {}) {
  require_same_ambient(u, w);
  std::vector<ComplexMatrix> all = u.basis();
  all.insert(all.end(), w.basis().begin(), w.basis().end());
  return OperatorSubspace::from_spanning(u.rows(), u.cols(), all, tol);
}

}  // namespace qmg
