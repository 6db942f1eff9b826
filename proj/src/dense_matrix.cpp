// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "flexkrylov/errors.hpp"

namespace flexkrylov {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = Complex{1.0, 0.0};
  return a;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector> &cols) {
  if (cols.empty()) return DenseMatrix(0, 0);
  DenseMatrix a(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) a.set_col(j, cols[j]);
  return a;
}

void DenseMatrix::set_col(std::size_t j, const Vector &v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col: length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(j * rows_));
}

void DenseMatrix::append_col(const Vector &v) {
  if (cols_ == 0 && rows_ == 0) rows_ = v.size();
  if (v.size() != rows_) throw std::invalid_argument("append_col: length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++cols_;
}

Vector DenseMatrix::apply(const Vector &x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vector y = zeros(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const Complex xj = x[j];
    if (xj == Complex{0.0, 0.0}) continue;
    const Complex *cj = data_.data() + j * rows_;
    for (std::size_t i = 0; i < rows_; ++i) y[i] += xj * cj[i];
  }
  return y;
}

Vector DenseMatrix::apply_adjoint(const Vector &x) const {
  if (x.size() != rows_) throw std::invalid_argument("apply_adjoint: dimension mismatch");
  Vector y = zeros(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const Complex *cj = data_.data() + j * rows_;
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) s += std::conj(cj[i]) * x[i];
    y[j] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix &other) const {
  if (cols_ != other.rows()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix c(rows_, other.cols());
  for (std::size_t j = 0; j < other.cols(); ++j) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const Complex blj = other(l, j);
      if (blj == Complex{0.0, 0.0}) continue;
      const Complex *al = data_.data() + l * rows_;
      for (std::size_t i = 0; i < rows_; ++i) c(i, j) += al[i] * blj;
    }
  }
  return c;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix c(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) c(j, i) = std::conj((*this)(i, j));
  return c;
}

double DenseMatrix::max_abs_diff(const DenseMatrix &other) const {
  if (rows_ != other.rows() || cols_ != other.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k)
    m = std::max(m, std::abs(data_[k] - other.data_[k]));
  return m;
}

LuFactorization::LuFactorization(const DenseMatrix &a) : n_(a.rows()), lu_(a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("LuFactorization: matrix must be square");
  perm_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  double scale_max = 0.0;
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) scale_max = std::max(scale_max, std::abs(lu_(i, j)));
  const double tiny = scale_max * 1e-14 + 1e-300;

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double m = std::abs(lu_(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best <= tiny)
      throw NumericalError("dense solve: matrix is singular to working precision");
    if (piv != k) {
      std::swap(perm_[k], perm_[piv]);
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Complex lik = lu_(i, k) / pivot;
      lu_(i, k) = lik;
      if (lik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= lik * lu_(k, j);
    }
  }
}

Vector LuFactorization::solve(const Vector &rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("solve: dimension mismatch");
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = rhs[perm_[i]];
  // forward substitution (unit lower factor)
  for (std::size_t i = 1; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(i, j) * y[j];
  // back substitution
  for (std::size_t ii = n_; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n_; ++j) y[ii] -= lu_(ii, j) * y[j];
    y[ii] /= lu_(ii, ii);
  }
  return y;
}

Vector dense_solve(const DenseMatrix &a, const Vector &w) {
  return LuFactorization(a).solve(w);
}

}  // namespace flexkrylov
