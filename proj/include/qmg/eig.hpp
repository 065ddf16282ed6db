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

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "qmg/matrix.hpp"
#include "qmg/tolerances.hpp"

namespace qmg {

namespace detail {

using EigenCMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline EigenCMat to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenCMat>(m.data().data(),
                                     static_cast<Eigen::Index>(m.rows()),
                                     static_cast<Eigen::Index>(m.cols()));
}

inline ComplexMatrix from_eigen(const EigenCMat& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()),
                  static_cast<std::size_t>(e.cols()));
  Eigen::Map<EigenCMat>(m.data().data(), e.rows(), e.cols()) = e;
  return m;
}

}  // namespace detail

struct EigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, vectors.col(k) <-> values[k]
};

/// Spectral decomposition of a Hermitian matrix; A = sum_k values[k] v_k v_k^dag.
/// Eigenvalues are reported in descending order.
inline EigResult hermitian_eig(const ComplexMatrix& a,
                               const Tolerances& tol = {}) {
  if (!a.is_square()) throw DimensionError("hermitian_eig: non-square input");
  const double scale = a.frobenius_norm();
  if ((a - a.adjoint()).frobenius_norm() > tol.hermitian * std::max(1.0, scale))
    throw PreconditionError("hermitian_eig: input is not Hermitian");

  // Symmetrize to kill roundoff-level asymmetry before handing off.
  detail::EigenCMat m = detail::to_eigen(a);
  m = Complex(0.5, 0.0) * (m + m.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<detail::EigenCMat> solver(m);
  if (solver.info() != Eigen::Success)
    throw ConsistencyError("hermitian_eig: eigensolver failed to converge");

  const auto n = static_cast<std::size_t>(m.rows());
  EigResult out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  // Eigen reports ascending order; flip to descending.
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(n - 1 - k);
    out.values[k] = solver.eigenvalues()(src);
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i), src);
  }
  return out;
}

struct SvdSpan {
  std::vector<CVector> basis;        // orthonormal, spanning the column span
  std::vector<double> singular_values;  // descending, kept values only
};

/// Orthonormal basis of span{columns} via SVD; singular values at or below
/// rank_tol * sigma_max are discarded.
inline SvdSpan orthonormal_span(const std::vector<CVector>& columns,
                                std::size_t dim, const Tolerances& tol = {}) {
  SvdSpan out;
  if (columns.empty()) return out;
  detail::EigenCMat s(static_cast<Eigen::Index>(dim),
                      static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != dim)
      throw DimensionError("orthonormal_span: column length mismatch");
    for (std::size_t i = 0; i < dim; ++i)
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          columns[j][i];
  }
  Eigen::JacobiSVD<detail::EigenCMat> svd(s, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return out;
  const double cutoff = tol.rank * sv(0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= cutoff || sv(k) == 0.0) break;
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v[i] = svd.matrixU()(static_cast<Eigen::Index>(i), k);
    out.basis.push_back(std::move(v));
    out.singular_values.push_back(sv(k));
  }
  return out;
}

}  // namespace qmg
