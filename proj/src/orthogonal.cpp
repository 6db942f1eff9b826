// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/orthogonal.hpp"

#include <cmath>

#include "flexkrylov/errors.hpp"

namespace flexkrylov {

namespace {
constexpr double kReorthTrigger = 0.70710678118654752;  // 1/sqrt(2)
}

MgsResult mgs_orthogonalize(const Vector &w, std::span<const Vector> basis) {
  MgsResult res;
  res.h.assign(basis.size(), Complex{0.0, 0.0});
  res.deflated = w;
  const double w_norm = norm(w);

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex hi = dot(basis[i], res.deflated);
    res.h[i] += hi;
    axpy(-hi, basis[i], res.deflated);
  }
  res.h_next = norm(res.deflated);

  if (!basis.empty() && res.h_next < kReorthTrigger * w_norm) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Complex hi = dot(basis[i], res.deflated);
      res.h[i] += hi;
      axpy(-hi, basis[i], res.deflated);
    }
    res.h_next = norm(res.deflated);
  }
  return res;
}

SpanSplit split_against_span(const Vector &v, std::span<const Vector> w) {
  SpanSplit s;
  s.perpendicular = v;
  // two plain passes; the coefficients themselves are not needed
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector &wi : w) {
      const Complex c = dot(wi, s.perpendicular);
      axpy(-c, wi, s.perpendicular);
    }
  }
  s.parallel = v;
  for (std::size_t i = 0; i < v.size(); ++i) s.parallel[i] -= s.perpendicular[i];
  return s;
}

SpanSplit split_against_span(const Vector &v, const DenseMatrix &w) {
  std::vector<Vector> cols;
  cols.reserve(w.cols());
  for (std::size_t j = 0; j < w.cols(); ++j) cols.push_back(w.col_vector(j));
  return split_against_span(v, cols);
}

Vector pick_orthogonal_direction(std::span<const Vector> frame,
                                 std::span<const Vector> extra, std::size_t n,
                                 double threshold) {
  for (std::size_t idx = 0; idx < n; ++idx) {
    Vector cand = unit_vector(n, idx);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector &f : frame) {
        const Complex c = dot(f, cand);
        if (c != Complex{0.0, 0.0}) axpy(-c, f, cand);
      }
      for (const Vector &f : extra) {
        const Complex c = dot(f, cand);
        if (c != Complex{0.0, 0.0}) axpy(-c, f, cand);
      }
    }
    const double r = norm(cand);
    if (r >= threshold) {
      scale(cand, Complex{1.0 / r, 0.0});
      return cand;
    }
  }
  throw NumericalError("pick_orthogonal_direction: no direction left in dimension " +
                       std::to_string(n));
}

double orthonormality_defect(std::span<const Vector> basis) {
  double defect = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex g = dot(basis[i], basis[j]);
      const double target = (i == j) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(g - Complex{target, 0.0}));
    }
  }
  return defect;
}

}  // namespace flexkrylov
