// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_DENSE_MATRIX_HPP
#define FLEXKRYLOV_DENSE_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "flexkrylov/types.hpp"

namespace flexkrylov {

/// Dense complex matrix stored column-major (columns are contiguous, which
/// keeps basis-matrix products and column appends cheap).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static DenseMatrix identity(std::size_t n);
  /// Stack the given vectors as columns. All must share the same length.
  static DenseMatrix from_columns(const std::vector<Vector> &cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex &operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex &operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }

  std::span<Complex> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const Complex> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

  Vector col_vector(std::size_t j) const {
    return Vector(col(j).begin(), col(j).end());
  }
  void set_col(std::size_t j, const Vector &v);
  void append_col(const Vector &v);

  /// y = A x
  Vector apply(const Vector &x) const;
  /// y = A^* x
  Vector apply_adjoint(const Vector &x) const;

  DenseMatrix multiply(const DenseMatrix &other) const;
  DenseMatrix adjoint() const;

  /// max_ij |A_ij - B_ij|
  double max_abs_diff(const DenseMatrix &other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// LU factorization with partial pivoting, for repeated dense solves.
/// Throws NumericalError when the matrix is singular to working precision.
class LuFactorization {
 public:
  explicit LuFactorization(const DenseMatrix &a);

  Vector solve(const Vector &rhs) const;
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_ = 0;
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Solve A z = w by pivoted elimination. One-shot convenience around
/// LuFactorization.
Vector dense_solve(const DenseMatrix &a, const Vector &w);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_DENSE_MATRIX_HPP
