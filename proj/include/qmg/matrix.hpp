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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qmg/errors.hpp"

namespace qmg {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major. The universal value type of the library:
/// operators, Kraus blocks, projectors on vec spaces and plain vectors
/// (cols == 1) all use it.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, CVector entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("entry count does not match rows*cols");
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Elementary matrix with a single 1 at (i, j).
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                            std::size_t j) {
    if (i >= rows || j >= cols) throw ArgumentError("unit index out of range");
    ComplexMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
  }

  static ComplexMatrix diag(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  const CVector& data() const { return data_; }
  CVector& data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix c(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      c.data_[k] = std::conj(data_[k]);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        a(j, i) = std::conj((*this)(i, j));
    return a;
  }

  Complex trace() const {
    if (!is_square()) throw DimensionError("trace of non-square matrix");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol) const {
    if (!is_square()) return false;
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        worst = std::max(worst,
                         std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst <= tol * std::max(1.0, frobenius_norm());
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector data_;
};

inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return distance(a, b) <= tol;
}

/// Hilbert-Schmidt inner product trace(A^dag B), conjugate-linear in the
/// first argument.
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: shapes differ");
  Complex s{0.0, 0.0};
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) s += std::conj(ad[k]) * bd[k];
  return s;
}

/// Kronecker product. Row-major vec convention: vec(A X B^t) = (A kron B) vec(X).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

/// Row-major stacking of a matrix into a vector; ||vec(A)||_2 = ||A||_HS.
inline CVector vec(const ComplexMatrix& a) { return a.data(); }

/// Inverse of vec.
inline ComplexMatrix mat(CVector v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw DimensionError("mat: vector length does not match rows*cols");
  return ComplexMatrix(rows, cols, std::move(v));
}

inline Complex inner(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) throw DimensionError("inner: lengths differ");
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}

inline double norm(const CVector& u) {
  double s = 0.0;
  for (const auto& z : u) s += std::norm(z);
  return std::sqrt(s);
}

/// Rank-one |u><v| as a matrix.
inline ComplexMatrix outer(const CVector& u, const CVector& v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == Complex{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      m(i, j) = u[i] * std::conj(v[j]);
  }
  return m;
}

/// An ordered factorization of an index range into tensor legs.
struct LegShape {
  std::vector<std::size_t> dims;

  LegShape() = default;
  LegShape(std::initializer_list<std::size_t> d) : dims(d) { validate(); }
  explicit LegShape(std::vector<std::size_t> d) : dims(std::move(d)) {
    validate();
  }

  std::size_t total() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<>());
  }
  std::size_t n_legs() const { return dims.size(); }

  /// Strides for row-major composite indices.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;)
      s[k - 1] = s[k] * dims[k];
    return s;
  }

 private:
  void validate() const {
    for (auto d : dims)
      if (d == 0) throw ArgumentError("LegShape: zero-dimensional leg");
  }
};

namespace detail {

inline void require_operator_shape(const ComplexMatrix& t,
                                   const LegShape& shape) {
  if (!t.is_square() || t.rows() != shape.total())
    throw DimensionError("operator does not match leg shape");
}

inline std::vector<std::size_t> decompose_index(std::size_t idx,
                                                const LegShape& shape) {
  std::vector<std::size_t> parts(shape.n_legs());
  for (std::size_t k = shape.n_legs(); k-- > 0;) {
    parts[k] = idx % shape.dims[k];
    idx /= shape.dims[k];
  }
  return parts;
}

inline std::size_t compose_index(const std::vector<std::size_t>& parts,
                                 const LegShape& shape) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < shape.n_legs(); ++k)
    idx = idx * shape.dims[k] + parts[k];
  return idx;
}

}  // namespace detail

/// Traces out tensor factor `which` (0-based) of a square operator on the
/// tensor product described by `shape`. Preserves the total trace.
inline ComplexMatrix partial_trace(const ComplexMatrix& t,
                                   const LegShape& shape, std::size_t which) {
  detail::require_operator_shape(t, shape);
  if (which >= shape.n_legs())
    throw ArgumentError("partial_trace: leg index out of range");
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < shape.n_legs(); ++k)
    if (k != which) rest.push_back(shape.dims[k]);
  LegShape out_shape(rest.empty() ? std::vector<std::size_t>{1} : rest);
  const std::size_t out_n = out_shape.total();
  ComplexMatrix out(out_n, out_n);

  const std::size_t n = shape.total();
  for (std::size_t r = 0; r < n; ++r) {
    auto rp = detail::decompose_index(r, shape);
    for (std::size_t c = 0; c < n; ++c) {
      auto cp = detail::decompose_index(c, shape);
      if (rp[which] != cp[which]) continue;
      std::vector<std::size_t> ro, co;
      for (std::size_t k = 0; k < shape.n_legs(); ++k) {
        if (k == which) continue;
        ro.push_back(rp[k]);
        co.push_back(cp[k]);
      }
      out(detail::compose_index(ro, out_shape),
          detail::compose_index(co, out_shape)) += t(r, c);
    }
  }
  return out;
}

/// Transposes the indices of tensor factor `which` (0-based); an involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix& t,
                                       const LegShape& shape,
                                       std::size_t which) {
  detail::require_operator_shape(t, shape);
  if (which >= shape.n_legs())
    throw ArgumentError("partial_transpose: leg index out of range");
  const std::size_t n = shape.total();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    auto rp = detail::decompose_index(r, shape);
    for (std::size_t c = 0; c < n; ++c) {
      auto cp = detail::decompose_index(c, shape);
      std::swap(rp[which], cp[which]);
      out(detail::compose_index(rp, shape),
          detail::compose_index(cp, shape)) = t(r, c);
      std::swap(rp[which], cp[which]);
    }
  }
  return out;
}

inline void require_permutation(const std::vector<std::size_t>& perm,
                                std::size_t n) {
  if (perm.size() != n)
    throw ArgumentError("permutation length does not match leg count");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw ArgumentError("not a permutation");
    seen[p] = true;
  }
}

inline std::vector<std::size_t> inverse_permutation(
    const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  return inv;
}

/// Relabels tensor legs: output leg k is input leg perm[k]. Works on square
/// operators (both row and column indices are permuted) and on vectors
/// (cols == 1). Composing with the inverse permutation restores the input.
inline ComplexMatrix reorder_legs(const ComplexMatrix& t, const LegShape& shape,
                                  const std::vector<std::size_t>& perm) {
  require_permutation(perm, shape.n_legs());
  std::vector<std::size_t> out_dims(shape.n_legs());
  for (std::size_t k = 0; k < shape.n_legs(); ++k)
    out_dims[k] = shape.dims[perm[k]];
  LegShape out_shape(out_dims);
  const std::size_t n = shape.total();

  auto permute = [&](std::size_t idx) {
    auto parts = detail::decompose_index(idx, shape);
    std::vector<std::size_t> outp(shape.n_legs());
    for (std::size_t k = 0; k < shape.n_legs(); ++k) outp[k] = parts[perm[k]];
    return detail::compose_index(outp, out_shape);
  };

  if (t.cols() == 1) {
    if (t.rows() != n) throw DimensionError("vector does not match leg shape");
    ComplexMatrix out(n, 1);
    for (std::size_t r = 0; r < n; ++r) out(permute(r), 0) = t(r, 0);
    return out;
  }
  detail::require_operator_shape(t, shape);
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t pr = permute(r);
    for (std::size_t c = 0; c < n; ++c) out(pr, permute(c)) = t(r, c);
  }
  return out;
}

}  // namespace qmg
