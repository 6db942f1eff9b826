// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_CSR_MATRIX_HPP
#define FLEXKRYLOV_CSR_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

/// One stored entry of a sparse matrix in coordinate form (0-based).
struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Square sparse matrix in compressed sparse row form.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Build from coordinate entries; duplicates are summed.
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);
  static CsrMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t> &row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t> &col_indices() const { return col_indices_; }
  const std::vector<Complex> &values() const { return values_; }

  Vector apply(const Vector &x) const;

  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  bool is_real() const;
  /// Entrywise A == A^T (exact comparison of stored values).
  bool is_symmetric() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_;  // size n+1, nondecreasing
  std::vector<std::size_t> col_indices_;  // within [0, n)
  std::vector<Complex> values_;
};

/// Sparse matrix-vector product.
Vector csr_matvec(const CsrMatrix &a, const Vector &x);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_CSR_MATRIX_HPP
