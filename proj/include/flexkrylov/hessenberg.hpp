// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_HESSENBERG_HPP
#define FLEXKRYLOV_HESSENBERG_HPP

#include <optional>
#include <span>
#include <vector>

#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

/// Extended upper Hessenberg coefficient matrix of the flexible Arnoldi
/// process, (m+1) x m, stored by columns, together with beta = ||r_0||.
/// Column j (0-based) holds the j+2 coefficients h_{1,j+1}..h_{j+2,j+1};
/// subdiagonal entries are nonnegative reals by construction.
struct HessenbergFactor {
  std::vector<std::vector<Complex>> cols;
  double beta = 0.0;

  std::size_t size() const { return cols.size(); }
  Complex entry(std::size_t i, std::size_t j) const {
    return i < cols[j].size() ? cols[j][i] : Complex{0.0, 0.0};
  }
  double subdiag(std::size_t j) const { return cols[j][j + 1].real(); }
  DenseMatrix to_dense() const;        // (m+1) x m
  DenseMatrix square_block() const;    // m x m upper block
};

/// Incremental least-squares solver for min_y ||beta e_1 - H y|| via plane
/// rotations, one column at a time. The residual norm is available after
/// every push without forming y.
class HessenbergLsq {
 public:
  explicit HessenbergLsq(double beta);

  /// Append column j; h must hold the j+2 leading entries of the column.
  void push_column(std::span<const Complex> h);

  std::size_t size() const { return r_cols_.size(); }
  /// Current minimum of ||beta e_1 - H y||; valid while the triangular factor
  /// is nonsingular (callers fall back to a solvable prefix otherwise).
  double residual_norm() const;

  /// Minimizer y of the current least-squares problem. Empty optional when a
  /// rotated pivot vanished (rank-deficient factor).
  std::optional<std::vector<Complex>> solve() const;

  /// Ratio max|r_ii| / min|r_ii| of the triangular factor; large values flag
  /// ill conditioning.
  double diag_condition_estimate() const;

 private:
  struct Rotation {
    double c;
    Complex s;
  };
  std::vector<std::vector<Complex>> r_cols_;  // triangular factor, column j has j+1 entries
  std::vector<Rotation> rotations_;
  std::vector<Complex> g_;  // rotated right-hand side; back() carries the residual
};

struct HessenbergLsqSolution {
  std::vector<Complex> y;
  double resnorm = 0.0;
  bool singular = false;
};

/// One-shot min ||beta e_1 - H y|| over the full factor.
HessenbergLsqSolution hessenberg_lsq(const HessenbergFactor &h);

/// Solve the square system H_m y = beta e_1 on the m x m upper block by
/// rotating the subdiagonal away and back-substituting. Returns an empty
/// optional when the block is singular to working precision (estimated
/// condition above 1/(100 eps)).
std::optional<std::vector<Complex>> hessenberg_square_solve(const HessenbergFactor &h);
std::optional<std::vector<Complex>> hessenberg_square_solve(const DenseMatrix &square,
                                                            double beta);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_HESSENBERG_HPP
