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

// Seeded fixture generators for the self-test campaign and the CLI. The
// generator is hand-rolled (Box-Muller over a fixed-output engine) so a seed
// produces the same fixtures on every run.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "qmg/channel.hpp"
#include "qmg/classical.hpp"
#include "qmg/decomposable.hpp"
#include "qmg/eig.hpp"
#include "qmg/matrix.hpp"
#include "qmg/multirelation.hpp"

namespace qmg {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    constexpr double two_pi = 6.283185307179586477;
    spare_ = r * std::sin(two_pi * v);
    has_spare_ = true;
    return r * std::cos(two_pi * v);
  }

  Complex cgaussian() { return {gaussian(), gaussian()}; }

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(eng_() % n);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline ComplexMatrix random_gaussian_matrix(FixtureRng& rng, std::size_t rows,
                                            std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
  return m;
}

/// Thin Q factor of a Gaussian matrix; requires rows >= cols.
inline ComplexMatrix random_isometry(FixtureRng& rng, std::size_t rows,
                                     std::size_t cols) {
  if (rows < cols) throw ArgumentError("random_isometry: rows < cols");
  const auto g = detail::to_eigen(random_gaussian_matrix(rng, rows, cols));
  Eigen::HouseholderQR<detail::EigenCMat> qr(g);
  detail::EigenCMat q = qr.householderQ() *
                        detail::EigenCMat::Identity(
                            static_cast<Eigen::Index>(rows),
                            static_cast<Eigen::Index>(cols));
  return detail::from_eigen(q);
}

/// Random CPTP channel between block algebras: per input block, the thin QR
/// isometry of a Gaussian matrix into `env` copies of the output space,
/// sliced into block-form Kraus operators.
inline ChannelMap random_isometry_channel(FixtureRng& rng,
                                          const std::vector<std::size_t>& in,
                                          const std::vector<std::size_t>& out,
                                          std::size_t env = 1,
                                          const Tolerances& tol = {}) {
  const BlockAlgebra in_alg(in);
  const BlockAlgebra out_alg(out);
  std::size_t rows = 0;
  for (auto m : out) rows += env * m;
  std::vector<KrausOperator> kraus;
  for (std::size_t a = 0; a < in_alg.n_blocks(); ++a) {
    const std::size_t na = in_alg.block_dim(a);
    const auto q = random_isometry(rng, std::max(rows, na), na);
    std::size_t row = 0;
    for (std::size_t b = 0; b < out_alg.n_blocks(); ++b)
      for (std::size_t k = 0; k < env; ++k) {
        ComplexMatrix e(out_alg.block_dim(b), in_alg.total_dim());
        for (std::size_t r = 0; r < out_alg.block_dim(b); ++r)
          for (std::size_t c = 0; c < na; ++c)
            e(r, in_alg.offset(a) + c) = q(row + r, c);
        row += out_alg.block_dim(b);
        kraus.push_back({b, a, std::move(e)});
      }
  }
  return make_channel(in_alg, out_alg, std::move(kraus), tol);
}

/// Random CP (not necessarily trace-preserving) map with `count` Gaussian
/// Kraus operators per (input block, output block) pair.
inline ChannelMap random_cp_map(FixtureRng& rng,
                                const std::vector<std::size_t>& in,
                                const std::vector<std::size_t>& out,
                                std::size_t count = 1,
                                const Tolerances& tol = {}) {
  const BlockAlgebra in_alg(in);
  const BlockAlgebra out_alg(out);
  std::vector<KrausOperator> kraus;
  for (std::size_t a = 0; a < in_alg.n_blocks(); ++a)
    for (std::size_t b = 0; b < out_alg.n_blocks(); ++b)
      for (std::size_t k = 0; k < count; ++k) {
        ComplexMatrix e(out_alg.block_dim(b), in_alg.total_dim());
        for (std::size_t r = 0; r < out_alg.block_dim(b); ++r)
          for (std::size_t c = 0; c < in_alg.block_dim(a); ++c)
            e(r, in_alg.offset(a) + c) = rng.cgaussian();
        kraus.push_back({b, a, std::move(e)});
      }
  return make_channel(in_alg, out_alg, std::move(kraus), tol);
}

/// Column-stochastic transition matrix p[y][x] from normalized squared
/// Gaussians.
inline std::vector<std::vector<double>> random_stochastic(FixtureRng& rng,
                                                          std::size_t n_x,
                                                          std::size_t n_y) {
  std::vector<std::vector<double>> p(n_y, std::vector<double>(n_x, 0.0));
  for (std::size_t x = 0; x < n_x; ++x) {
    double total = 0.0;
    for (std::size_t y = 0; y < n_y; ++y) {
      const double g = rng.gaussian();
      p[y][x] = g * g;
      total += p[y][x];
    }
    for (std::size_t y = 0; y < n_y; ++y) p[y][x] /= total;
  }
  return p;
}

inline ClassicalMultiRelation random_classical_relation(FixtureRng& rng,
                                                        std::size_t n_x,
                                                        std::size_t n_y,
                                                        double density = 0.4) {
  ClassicalMultiRelation r{n_x, n_y, {}};
  for (std::size_t x1 = 0; x1 < n_x; ++x1)
    for (std::size_t x2 = 0; x2 < n_x; ++x2)
      for (std::size_t y = 0; y < n_y; ++y)
        if (rng.uniform() < density) r.insert(x1, x2, y);
  return r;
}

/// Random valid multi-relation: Gaussian elements of B(H) kron N closed
/// under the commutant bimodule action and the center action.
inline QuantumMultiRelation random_multirelation(
    FixtureRng& rng, const std::vector<std::size_t>& m_dims,
    const std::vector<std::size_t>& n_dims, std::size_t generators = 2,
    const Tolerances& tol = {}) {
  const BlockAlgebra m_alg(m_dims);
  const BlockAlgebra n_alg(n_dims);
  const std::size_t dim_h = m_alg.total_dim();
  const std::size_t dim_k = n_alg.total_dim();
  std::vector<ComplexMatrix> closure;
  for (std::size_t g = 0; g < generators; ++g) {
    ComplexMatrix t(dim_h * dim_k, dim_h * dim_k);
    for (std::size_t i = 0; i < dim_h; ++i)
      for (std::size_t j = 0; j < dim_h; ++j)
        for (const auto& u : n_alg.units())
          t += rng.cgaussian() *
               kron(ComplexMatrix::unit(dim_h, dim_h, i, j),
                    n_alg.matrix_unit(u.block, u.i, u.j));
    for (std::size_t a = 0; a < m_alg.n_blocks(); ++a)
      for (std::size_t a2 = 0; a2 < m_alg.n_blocks(); ++a2)
        for (std::size_t b = 0; b < n_alg.n_blocks(); ++b) {
          const auto w = kron(m_alg.block_projector(a),
                              n_alg.block_projector(b)) *
                         t *
                         kron(m_alg.block_projector(a2),
                              ComplexMatrix::identity(dim_k));
          if (w.frobenius_norm() > 1e-12) closure.push_back(w);
        }
  }
  return make_multirelation(m_alg, n_alg, closure, tol);
}

/// Random symmetric decomposable multi-relation: per label block an
/// input-block graded Gaussian component space W, with the block piece
/// spanned by |w><w'| over all pairs.
inline QuantumMultiRelation random_symmetric_decomposable(
    FixtureRng& rng, const std::vector<std::size_t>& m_dims,
    const std::vector<std::size_t>& n_dims, std::size_t per_input_block = 1,
    const Tolerances& tol = {}) {
  const BlockAlgebra m_alg(m_dims);
  const BlockAlgebra n_alg(n_dims);
  const std::size_t dim_h = m_alg.total_dim();
  std::vector<ComplexMatrix> gens;
  for (std::size_t b = 0; b < n_alg.n_blocks(); ++b) {
    const std::size_t mb = n_alg.block_dim(b);
    std::vector<CVector> ws;
    for (std::size_t a = 0; a < m_alg.n_blocks(); ++a)
      for (std::size_t t = 0; t < per_input_block; ++t) {
        CVector w(dim_h * mb, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < m_alg.block_dim(a); ++i)
          for (std::size_t p = 0; p < mb; ++p)
            w[(m_alg.offset(a) + i) * mb + p] = rng.cgaussian();
        ws.push_back(std::move(w));
      }
    for (const auto& w : ws)
      for (const auto& w2 : ws)
        gens.push_back(embed_label_block(outer(w, w2), dim_h, n_alg, b));
  }
  return make_multirelation(m_alg, n_alg, gens, tol);
}

}  // namespace qmg
