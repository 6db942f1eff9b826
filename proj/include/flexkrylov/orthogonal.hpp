// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_ORTHOGONAL_HPP
#define FLEXKRYLOV_ORTHOGONAL_HPP

#include <span>
#include <vector>

#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

struct MgsResult {
  std::vector<Complex> h;  ///< projection coefficients h_i = v_i^* w
  Vector deflated;         ///< w' = w - sum h_i v_i, orthogonal to the basis
  double h_next;           ///< ||w'||; zero signals happy breakdown
};

/// Modified Gram-Schmidt against an orthonormal basis, with one conditional
/// reorthogonalization pass when the deflated norm drops below ||w||/sqrt(2).
/// The correction coefficients of the second pass are folded into h, so
/// w = sum h_i v_i + deflated always holds.
MgsResult mgs_orthogonalize(const Vector &w, std::span<const Vector> basis);

struct SpanSplit {
  Vector parallel;       ///< p = W W^* v, in span(W)
  Vector perpendicular;  ///< u = v - p, orthogonal to span(W)
};

/// Orthogonal decomposition v = p + u against an orthonormal column set W.
/// v = parallel + perpendicular holds exactly (p is computed as v - u).
SpanSplit split_against_span(const Vector &v, const DenseMatrix &w);
SpanSplit split_against_span(const Vector &v, std::span<const Vector> w);

/// First canonical basis vector with a significant component outside
/// span(frame U extra), orthogonalized (two passes) and normalized.
/// Candidates whose deflated norm falls below `threshold` are skipped.
/// Throws NumericalError when no direction is left.
Vector pick_orthogonal_direction(std::span<const Vector> frame,
                                 std::span<const Vector> extra, std::size_t n,
                                 double threshold = 1e-8);

/// max |V^* V - I| over an orthonormal-candidate column set; test hook for
/// basis quality.
double orthonormality_defect(std::span<const Vector> basis);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_ORTHOGONAL_HPP
