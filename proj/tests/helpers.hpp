// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared test utilities: seeded generators and independent oracles. The
// least-squares oracle uses Householder reflections so it shares no code path
// with the library's plane-rotation solvers.

#ifndef FLEXKRYLOV_TESTS_HELPERS_HPP
#define FLEXKRYLOV_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "flexkrylov/csr_matrix.hpp"
#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/types.hpp"

namespace testing_support {

using flexkrylov::Complex;
using flexkrylov::CsrMatrix;
using flexkrylov::DenseMatrix;
using flexkrylov::Vector;

inline Vector random_vector(std::mt19937_64 &rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (Complex &c : v) c = Complex{dist(rng), dist(rng)};
  return v;
}

inline DenseMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows,
                                 std::size_t cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  DenseMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = Complex{dist(rng), dist(rng)};
  return a;
}

/// Random square matrix with a diagonal shift keeping it comfortably
/// nonsingular.
inline DenseMatrix random_well_conditioned(std::mt19937_64 &rng, std::size_t n,
                                           double shift = 4.0) {
  DenseMatrix a = random_matrix(rng, n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += Complex{shift, 0.0};
  return a;
}

inline CsrMatrix random_sparse(std::mt19937_64 &rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<flexkrylov::Triplet> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j || coin(rng) < density)
        entries.push_back({i, j, Complex{dist(rng), dist(rng)}});
  return CsrMatrix::from_triplets(n, std::move(entries));
}

struct LsqOracle {
  std::vector<Complex> y;
  double resnorm = 0.0;
};

/// min_y ||rhs - A y|| for a tall matrix via Householder reflections.
inline LsqOracle householder_lsq(DenseMatrix a, Vector rhs) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  for (std::size_t k = 0; k < cols; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k; i < rows; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = a(k, k);
    const Complex phase =
        std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    const Complex alpha = -phase * xnorm;
    // reflector v = x - alpha e1, normalized
    std::vector<Complex> v(rows - k);
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) v[i - k] = a(i, k);
    double vnorm = 0.0;
    for (const Complex &c : v) vnorm += std::norm(c);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (Complex &c : v) c /= vnorm;
    for (std::size_t j = k; j < cols; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t i = k; i < rows; ++i) s += std::conj(v[i - k]) * a(i, j);
      s *= 2.0;
      for (std::size_t i = k; i < rows; ++i) a(i, j) -= s * v[i - k];
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = k; i < rows; ++i) s += std::conj(v[i - k]) * rhs[i];
    s *= 2.0;
    for (std::size_t i = k; i < rows; ++i) rhs[i] -= s * v[i - k];
  }

  LsqOracle out;
  out.y.assign(cols, Complex{0.0, 0.0});
  for (std::size_t jj = cols; jj-- > 0;) {
    Complex s = rhs[jj];
    for (std::size_t l = jj + 1; l < cols; ++l) s -= a(jj, l) * out.y[l];
    out.y[jj] = s / a(jj, jj);
  }
  double tail = 0.0;
  for (std::size_t i = cols; i < rows; ++i) tail += std::norm(rhs[i]);
  out.resnorm = std::sqrt(tail);
  return out;
}

/// Brute-force minimum of ||b - (A Z) y|| over y given the recorded columns.
inline double brute_force_min_residual(const DenseMatrix &az_columns, const Vector &b) {
  return householder_lsq(az_columns, b).resnorm;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support

#endif  // FLEXKRYLOV_TESTS_HELPERS_HPP
