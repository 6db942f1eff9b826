// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_BOUNDS_HPP
#define FLEXKRYLOV_BOUNDS_HPP

#include <optional>
#include <span>
#include <vector>

namespace flexkrylov {

/// Per-step contraction sequence with a validity prefix. values[i] holds the
/// (i+1)-th term; terms whose predecessor reached 1 are NaN. valid_prefix is
/// the number of leading terms not exceeding 1 (within a 1e-14 slack), i.e.
/// the number of steps for which the cumulative bound still decreases.
struct RateSequence {
  std::vector<double> values;
  std::size_t valid_prefix = 0;
};

/// A priori contraction factors omega_j = mu / sqrt(1 - omega_{j-1}^2),
/// omega_0 = 0. For mu <= 1/2 the sequence stays within (0, 1/sqrt(2)].
RateSequence omega_sequence(double mu, int m);

/// A posteriori analog driven by measured preconditioner residual norms:
/// gamma_j = ||r_j^P|| / sqrt(1 - gamma_{j-1}^2), gamma_0 = 0. Measured norms
/// above 1 are accepted; the validity flags mark where the recursion loses
/// meaning.
RateSequence gamma_sequence(std::span<const double> rp_norms);

/// b_0 = b_1 = 1, b_j = b_{j-1} - mu^2 b_{j-2}. Satisfies
/// b_j = mu^j U_j(1/(2 mu)) with U_j the degree-j Chebyshev polynomial of the
/// second kind; evaluating the bound through b_j avoids the overflow of U_j
/// for small mu and needs no complex arithmetic for mu > 1/2.
std::vector<double> b_sequence(double mu, int m);

/// Residual bound mu^m / sqrt(b_m) relative to ||r_0||: the best guaranteed
/// reduction after m steps with preconditioner tolerance mu. Empty once any
/// omega_j with j <= m exceeds 1 (the bound stalls; only possible for
/// mu > 1/2).
std::optional<double> fgmres_bound(double mu, int m);

/// Companion bound for the Galerkin iterate: mu^m / sqrt(b_{m+1}). Requires
/// mu <= 1/2.
std::optional<double> ffom_bound(double mu, int m);

/// omega_m evaluated through the Chebyshev ratio sqrt(mu^2 b_{m-1} / b_m);
/// equals omega_sequence(mu, m).values[m-1]. Requires mu <= 1/2.
double local_rate(double mu, int m);

/// Limit rate nu = sin(arcsin(2 mu) / 2) = sqrt(r_-) for mu <= 1/2, and 1
/// (stagnation) for mu > 1/2.
double asymptotic_rate(double mu);

/// Largest tolerance for which the bound still decreases at step m:
/// mu_m = 1 / (2 cos(pi / (m + 2))). Decreases monotonically to 1/2.
double mu_threshold(int m);

/// Largest m with omega_j <= 1 for all j <= m, computed by running the
/// recursion. Empty optional means infinity (mu <= 1/2 never stalls).
std::optional<int> stalling_index(double mu);

/// Full evaluation of the bound machinery for one (mu, m) pair.
struct BoundSeries {
  double mu = 0.0;
  std::vector<double> omegas;     ///< omega_1..omega_m (NaN once undefined)
  std::vector<double> b_seq;      ///< b_0..b_{m+1} (one extra for the companion bound)
  std::vector<double> fg_bounds;  ///< index j: mu^j / sqrt(b_j); NaN once stalled
  std::vector<double> ff_bounds;  ///< index j: mu^j / sqrt(b_{j+1}); NaN once stalled
  std::optional<int> stall_index; ///< empty = never stalls
};

BoundSeries make_bound_series(double mu, int m);

/// The two convergence phases for one tolerance.
struct RateReport {
  double mu = 0.0;              ///< phase-1 rate
  double nu = 0.0;              ///< phase-2 rate (1 = stagnation)
  std::optional<int> stall_index;
  double bound_at_stall = 0.0;  ///< 0 when the bound never stalls
};

RateReport rate_report(double mu);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_BOUNDS_HPP
