// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_LINEAR_OPERATOR_HPP
#define FLEXKRYLOV_LINEAR_OPERATOR_HPP

#include <memory>
#include <stdexcept>

#include "flexkrylov/csr_matrix.hpp"
#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

/// Action x -> A x with a declared dimension. Applications must be
/// deterministic and linear to floating-point accuracy; implementations hold
/// no mutable state.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t dim() const = 0;
  virtual Vector apply(const Vector &x) const = 0;

 protected:
  void check_dim(const Vector &x) const {
    if (x.size() != dim())
      throw std::invalid_argument("operator apply: dimension mismatch");
  }
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(DenseMatrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols())
      throw std::invalid_argument("DenseOperator: matrix must be square");
  }
  std::size_t dim() const override { return a_.rows(); }
  Vector apply(const Vector &x) const override {
    check_dim(x);
    return a_.apply(x);
  }
  const DenseMatrix &matrix() const { return a_; }

 private:
  DenseMatrix a_;
};

class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(CsrMatrix a) : a_(std::move(a)) {}
  std::size_t dim() const override { return a_.dim(); }
  Vector apply(const Vector &x) const override {
    check_dim(x);
    return a_.apply(x);
  }
  const CsrMatrix &matrix() const { return a_; }

 private:
  CsrMatrix a_;
};

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(std::size_t n) : n_(n) {}
  std::size_t dim() const override { return n_; }
  Vector apply(const Vector &x) const override {
    check_dim(x);
    return x;
  }

 private:
  std::size_t n_;
};

/// x -> A^{-1} x through a pivoted factorization; used for exact inner solves.
class DenseSolveOperator final : public LinearOperator {
 public:
  explicit DenseSolveOperator(const DenseMatrix &a) : lu_(a) {}
  std::size_t dim() const override { return lu_.dim(); }
  Vector apply(const Vector &x) const override {
    check_dim(x);
    return lu_.solve(x);
  }

 private:
  LuFactorization lu_;
};

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_LINEAR_OPERATOR_HPP
