// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_TYPES_HPP
#define FLEXKRYLOV_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace flexkrylov {

/// All scalars are complex doubles; real inputs are promoted on entry.
using Complex = std::complex<double>;

/// Column vector of fixed length. The norm used everywhere is the Euclidean
/// norm.
using Vector = std::vector<Complex>;

/// Inner product x^* y (conjugate-linear in the first argument).
inline Complex dot(const Vector &x, const Vector &y) {
  Complex s{0.0, 0.0};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double norm(const Vector &x) {
  double s = 0.0;
  for (const Complex &xi : x) s += std::norm(xi);
  return std::sqrt(s);
}

/// y += a * x
inline void axpy(Complex a, const Vector &x, Vector &y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

inline void scale(Vector &x, Complex a) {
  for (Complex &xi : x) xi *= a;
}

inline Vector zeros(std::size_t n) { return Vector(n, Complex{0.0, 0.0}); }

/// Canonical basis vector e_{index} (0-based) of length n.
inline Vector unit_vector(std::size_t n, std::size_t index) {
  Vector e = zeros(n);
  e[index] = Complex{1.0, 0.0};
  return e;
}

inline bool all_finite(const Vector &x) {
  for (const Complex &xi : x)
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) return false;
  return true;
}

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_TYPES_HPP
