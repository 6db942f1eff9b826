// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/csr_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace flexkrylov {

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
  for (const Triplet &t : entries)
    if (t.row >= n || t.col >= n)
      throw std::invalid_argument("from_triplets: index out of range");
  std::sort(entries.begin(), entries.end(), [](const Triplet &a, const Triplet &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.n_ = n;
  m.row_offsets_.assign(n + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t k2 = k;
    Complex sum{0.0, 0.0};
    while (k2 < entries.size() && entries[k2].row == entries[k].row &&
           entries[k2].col == entries[k].col) {
      sum += entries[k2].value;
      ++k2;
    }
    m.col_indices_.push_back(entries[k].col);
    m.values_.push_back(sum);
    ++m.row_offsets_[entries[k].row + 1];
    k = k2;
  }
  for (std::size_t i = 0; i < n; ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];
  return m;
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<Triplet> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, Complex{1.0, 0.0}});
  return from_triplets(n, std::move(entries));
}

Vector CsrMatrix::apply(const Vector &x) const {
  if (x.size() != n_) throw std::invalid_argument("csr apply: dimension mismatch");
  Vector y = zeros(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[col_indices_[k]];
    y[i] = s;
  }
  return y;
}

std::vector<Triplet> CsrMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      out.push_back({i, col_indices_[k], values_[k]});
  return out;
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      d(i, col_indices_[k]) += values_[k];
  return d;
}

bool CsrMatrix::is_real() const {
  for (const Complex &v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

bool CsrMatrix::is_symmetric() const {
  DenseMatrix d = to_dense();
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (d(i, j) != d(j, i)) return false;
  return true;
}

Vector csr_matvec(const CsrMatrix &a, const Vector &x) { return a.apply(x); }

}  // namespace flexkrylov
