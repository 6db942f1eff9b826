// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_CONVDIFF_HPP
#define FLEXKRYLOV_CONVDIFF_HPP

#include "flexkrylov/csr_matrix.hpp"

namespace flexkrylov {

/// Five-point convection-diffusion stencil on an n x n grid (N = n^2),
/// Dirichlet boundary eliminated. The convection term is upwinded and scaled
/// by `peclet`:
///
///   diagonal 4 + 2 peclet, west/south -1 - peclet, east/north -1.
///
/// The matrix is symmetric for peclet = 0 and nonsymmetric otherwise. With
/// this convention interior rows sum to zero for every peclet (the upwind
/// difference moves mass from the diagonal to the upwind neighbor only).
CsrMatrix generate_convdiff(int n, double peclet);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_CONVDIFF_HPP
