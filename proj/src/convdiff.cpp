// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/convdiff.hpp"

#include <stdexcept>

namespace flexkrylov {

CsrMatrix generate_convdiff(int n, double peclet) {
  if (n < 2) throw std::invalid_argument("generate_convdiff: grid size must be >= 2");
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t dim = nn * nn;

  std::vector<Triplet> entries;
  entries.reserve(5 * dim);
  const Complex diag{4.0 + 2.0 * peclet, 0.0};
  const Complex upwind{-1.0 - peclet, 0.0};
  const Complex downwind{-1.0, 0.0};

  for (std::size_t iy = 0; iy < nn; ++iy) {
    for (std::size_t ix = 0; ix < nn; ++ix) {
      const std::size_t g = iy * nn + ix;
      entries.push_back({g, g, diag});
      if (ix > 0) entries.push_back({g, g - 1, upwind});        // west
      if (ix + 1 < nn) entries.push_back({g, g + 1, downwind}); // east
      if (iy > 0) entries.push_back({g, g - nn, upwind});       // south
      if (iy + 1 < nn) entries.push_back({g, g + nn, downwind});// north
    }
  }
  return CsrMatrix::from_triplets(dim, std::move(entries));
}

}  // namespace flexkrylov
