// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/hessenberg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flexkrylov {

namespace {

struct GivensTriple {
  double c;
  Complex s;
  Complex r;
};

// Unitary plane rotation [c s; -conj(s) c] with real c >= 0 mapping
// (f, g) to (r, 0).
GivensTriple make_givens(Complex f, Complex g) {
  if (g == Complex{0.0, 0.0}) return {1.0, Complex{0.0, 0.0}, f};
  if (f == Complex{0.0, 0.0}) {
    const double ag = std::abs(g);
    return {0.0, std::conj(g) / ag, Complex{ag, 0.0}};
  }
  const double af = std::abs(f);
  const double d = std::hypot(af, std::abs(g));
  const Complex phase = f / af;
  return {af / d, phase * std::conj(g) / d, phase * d};
}

std::optional<std::vector<Complex>> back_substitute(
    const std::vector<std::vector<Complex>> &r_cols, const std::vector<Complex> &rhs,
    double pivot_floor) {
  const std::size_t m = r_cols.size();
  std::vector<Complex> y(m);
  for (std::size_t jj = m; jj-- > 0;) {
    Complex s = rhs[jj];
    for (std::size_t l = jj + 1; l < m; ++l) s -= r_cols[l][jj] * y[l];
    const Complex piv = r_cols[jj][jj];
    if (std::abs(piv) <= pivot_floor) return std::nullopt;
    y[jj] = s / piv;
  }
  return y;
}

}  // namespace

DenseMatrix HessenbergFactor::to_dense() const {
  const std::size_t m = cols.size();
  DenseMatrix h(m + 1, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) h(i, j) = cols[j][i];
  return h;
}

DenseMatrix HessenbergFactor::square_block() const {
  const std::size_t m = cols.size();
  DenseMatrix h(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t len = std::min(cols[j].size(), m);
    for (std::size_t i = 0; i < len; ++i) h(i, j) = cols[j][i];
  }
  return h;
}

HessenbergLsq::HessenbergLsq(double beta) { g_.push_back(Complex{beta, 0.0}); }

void HessenbergLsq::push_column(std::span<const Complex> h) {
  const std::size_t m = r_cols_.size();
  if (h.size() != m + 2)
    throw std::invalid_argument("push_column: expected " + std::to_string(m + 2) +
                                " entries");
  std::vector<Complex> col(h.begin(), h.end());
  for (std::size_t i = 0; i < m; ++i) {
    const Complex top = col[i];
    const Complex bot = col[i + 1];
    col[i] = rotations_[i].c * top + rotations_[i].s * bot;
    col[i + 1] = -std::conj(rotations_[i].s) * top + rotations_[i].c * bot;
  }
  const GivensTriple g = make_givens(col[m], col[m + 1]);
  rotations_.push_back({g.c, g.s});
  col[m] = g.r;
  col.resize(m + 1);
  r_cols_.push_back(std::move(col));

  const Complex tail = g_.back();
  g_.back() = g.c * tail;
  g_.push_back(-std::conj(g.s) * tail);
}

double HessenbergLsq::residual_norm() const { return std::abs(g_.back()); }

std::optional<std::vector<Complex>> HessenbergLsq::solve() const {
  double rmax = 0.0;
  for (std::size_t j = 0; j < r_cols_.size(); ++j)
    rmax = std::max(rmax, std::abs(r_cols_[j][j]));
  const double floor = rmax * std::numeric_limits<double>::epsilon() * 64.0;
  return back_substitute(r_cols_, g_, floor);
}

double HessenbergLsq::diag_condition_estimate() const {
  double rmax = 0.0;
  double rmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r_cols_.size(); ++j) {
    const double d = std::abs(r_cols_[j][j]);
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
  }
  if (rmin == 0.0) return std::numeric_limits<double>::infinity();
  return rmax / rmin;
}

HessenbergLsqSolution hessenberg_lsq(const HessenbergFactor &h) {
  HessenbergLsq lsq(h.beta);
  for (const auto &col : h.cols) lsq.push_column(col);
  HessenbergLsqSolution sol;
  sol.resnorm = lsq.residual_norm();
  if (auto y = lsq.solve()) {
    sol.y = std::move(*y);
  } else {
    sol.singular = true;
  }
  return sol;
}

std::optional<std::vector<Complex>> hessenberg_square_solve(const DenseMatrix &square,
                                                            double beta) {
  const std::size_t m = square.rows();
  if (m != square.cols())
    throw std::invalid_argument("hessenberg_square_solve: block must be square");
  if (m == 0) return std::vector<Complex>{};

  std::vector<std::vector<Complex>> cols(m);
  for (std::size_t j = 0; j < m; ++j) {
    cols[j].resize(m);
    for (std::size_t i = 0; i < m; ++i) cols[j][i] = square(i, j);
  }
  std::vector<Complex> rhs(m, Complex{0.0, 0.0});
  rhs[0] = Complex{beta, 0.0};

  // eliminate the subdiagonal in place
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const GivensTriple g = make_givens(cols[j][j], cols[j][j + 1]);
    for (std::size_t l = j; l < m; ++l) {
      const Complex top = cols[l][j];
      const Complex bot = cols[l][j + 1];
      cols[l][j] = g.c * top + g.s * bot;
      cols[l][j + 1] = -std::conj(g.s) * top + g.c * bot;
    }
    const Complex top = rhs[j];
    const Complex bot = rhs[j + 1];
    rhs[j] = g.c * top + g.s * bot;
    rhs[j + 1] = -std::conj(g.s) * top + g.c * bot;
  }

  double rmax = 0.0;
  double rmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const double d = std::abs(cols[j][j]);
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
  }
  constexpr double cond_limit = 1.0 / (100.0 * std::numeric_limits<double>::epsilon());
  if (rmin == 0.0 || rmax / rmin > cond_limit) return std::nullopt;

  // truncate columns to their upper-triangular parts for back substitution
  std::vector<std::vector<Complex>> r_cols(m);
  for (std::size_t j = 0; j < m; ++j)
    r_cols[j].assign(cols[j].begin(), cols[j].begin() + static_cast<std::ptrdiff_t>(j + 1));
  return back_substitute(r_cols, rhs, 0.0);
}

std::optional<std::vector<Complex>> hessenberg_square_solve(const HessenbergFactor &h) {
  return hessenberg_square_solve(h.square_block(), h.beta);
}

}  // namespace flexkrylov
