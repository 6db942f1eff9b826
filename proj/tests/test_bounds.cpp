// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "flexkrylov/bounds.hpp"
#include "helpers.hpp"

using namespace flexkrylov;
using testing_support::rel_diff;

namespace {

// explicit characteristic-root evaluation of b_m, used as the independent
// route against the recurrence (valid for mu < 1/2 where the roots are real)
double b_explicit(double mu, int m) {
  const double disc = std::sqrt(1.0 - 4.0 * mu * mu);
  const double rp = (1.0 + disc) / 2.0;
  const double rm = (1.0 - disc) / 2.0;
  return (std::pow(rp, m + 1) - std::pow(rm, m + 1)) / (rp - rm);
}

double fg_bound_explicit(double mu, int m) {
  return std::pow(mu, m) / std::sqrt(b_explicit(mu, m));
}

double ff_bound_explicit(double mu, int m) {
  return std::pow(mu, m) / std::sqrt(b_explicit(mu, m + 1));
}

std::vector<double> grid_45_points() {
  std::vector<double> grid;
  for (int i = 1; i <= 45; ++i) grid.push_back(0.01 + i * (0.48 / 45.0));
  return grid;
}

}  // namespace

TEST_CASE("omega: first term equals mu, hand-checked second term") {
  for (const double mu : {0.05, 0.2, 0.5}) {
    const RateSequence seq = omega_sequence(mu, 3);
    CHECK(seq.values[0] == doctest::Approx(mu).epsilon(1e-15));
  }
  // omega_2 = 0.5 / sqrt(0.75) = 1/sqrt(3)
  const RateSequence seq = omega_sequence(0.5, 2);
  CHECK(seq.values[1] == doctest::Approx(0.5773502691896258).epsilon(1e-14));
}

TEST_CASE("omega: mu = 0.5 tends to 1/sqrt(2) and stays below it") {
  const int m = 20000;
  const RateSequence seq = omega_sequence(0.5, m);
  CHECK(seq.valid_prefix == static_cast<std::size_t>(m));
  const double nu = 0.707106781186547;
  CHECK(std::abs(seq.values.back() - nu) < 1e-4);
  for (int j : {10, 100, 1000, 19999})
    CHECK(seq.values[static_cast<std::size_t>(j)] <= 0.70710678118654752 + 1e-12);
}

TEST_CASE("gamma: constant inputs reproduce omega; measured pair examples") {
  const RateSequence omega = omega_sequence(0.37, 12);
  const std::vector<double> rp(12, 0.37);
  const RateSequence gamma = gamma_sequence(rp);
  for (std::size_t j = 0; j < 12; ++j)
    CHECK(gamma.values[j] == doctest::Approx(omega.values[j]).epsilon(1e-15));

  const std::vector<double> pair{0.5, 0.0};
  const RateSequence g2 = gamma_sequence(pair);
  CHECK(g2.values[0] == doctest::Approx(0.5));
  CHECK(g2.values[1] == doctest::Approx(0.0));
  CHECK(g2.valid_prefix == 2);
}

TEST_CASE("gamma: values above one are computed but flagged invalid") {
  const std::vector<double> rp{0.9, 0.9};
  const RateSequence gamma = gamma_sequence(rp);
  CHECK(gamma.values[0] == doctest::Approx(0.9));
  CHECK(gamma.values[1] == doctest::Approx(0.9 / std::sqrt(0.19)).epsilon(1e-13));
  CHECK(gamma.values[1] == doctest::Approx(2.0647416048350853).epsilon(1e-12));
  CHECK(gamma.valid_prefix == 1);
}

TEST_CASE("b sequence: hand recurrences, double root form, sign change past 1/2") {
  const std::vector<double> b_half = b_sequence(0.5, 6);
  CHECK(b_half[2] == doctest::Approx(0.75).epsilon(1e-15));
  // repeated-root closed form b_m = (m+1) / 2^m at mu = 1/2
  for (int m = 0; m <= 6; ++m)
    CHECK(b_half[static_cast<std::size_t>(m)] ==
          doctest::Approx((m + 1.0) / std::pow(2.0, m)).epsilon(1e-14));

  const std::vector<double> b8 = b_sequence(0.8, 3);
  CHECK(b8[2] == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(b8[3] == doctest::Approx(-0.28).epsilon(1e-14));  // negative: bound stalls
}

TEST_CASE("fgmres_bound: m = 1 equals mu; double-root value at mu = 1/2, m = 20") {
  for (const double mu : {0.05, 0.3, 0.5})
    CHECK(*fgmres_bound(mu, 1) == doctest::Approx(mu).epsilon(1e-14));

  // b_20 = 21 / 2^20 at the double root
  const double expected = std::pow(0.5, 20) / std::sqrt(21.0 / std::pow(2.0, 20));
  CHECK(*fgmres_bound(0.5, 20) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(2.1311e-4).epsilon(1e-3));
}

TEST_CASE("fgmres_bound: value at the stalling index for mu = 0.55") {
  const auto bound = fgmres_bound(0.55, 5);
  REQUIRE(bound.has_value());
  CHECK(*bound == doctest::Approx(0.198).epsilon(5e-3));
  CHECK_FALSE(fgmres_bound(0.55, 6).has_value());  // stalled past m*
}

TEST_CASE("ffom_bound: hand value, ratio identity, explicit-form cross-check") {
  CHECK(*ffom_bound(0.5, 1) == doctest::Approx(0.5 / std::sqrt(0.75)).epsilon(1e-14));

  // ffom/fgmres = 1 / sqrt(1 - omega_m^2) at every m
  for (const double mu : {0.1, 0.3, 0.5}) {
    const RateSequence omega = omega_sequence(mu, 12);
    for (int m = 1; m <= 12; ++m) {
      const double ratio = *ffom_bound(mu, m) / *fgmres_bound(mu, m);
      const double om = omega.values[static_cast<std::size_t>(m - 1)];
      CHECK(rel_diff(ratio, 1.0 / std::sqrt(1.0 - om * om)) <= 1e-12);
    }
  }

  CHECK(rel_diff(*ffom_bound(0.1, 3), ff_bound_explicit(0.1, 3)) <= 1e-12);
}

TEST_CASE("local_rate: equals the recursion and converges to the limit") {
  CHECK(local_rate(0.3, 1) == doctest::Approx(0.3).epsilon(1e-14));
  // mu = 0.5, m = 2: sqrt(mu^2 b_1 / b_2) = sqrt(0.25 / 0.75)
  CHECK(local_rate(0.5, 2) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));

  const double nu = 0.316227766016838;  // limit for mu = 0.3
  CHECK(std::abs(local_rate(0.3, 4000) - nu) < 1e-6);
}

TEST_CASE("asymptotic_rate: tabulated limits") {
  CHECK(std::abs(asymptotic_rate(0.01) - 0.010000500087521) < 1e-12);
  CHECK(std::abs(asymptotic_rate(0.1) - 0.100508962005208) < 1e-12);
  CHECK(std::abs(asymptotic_rate(0.2) - 0.204309643689220) < 1e-12);
  CHECK(std::abs(asymptotic_rate(0.3) - 0.316227766016838) < 1e-12);
  CHECK(std::abs(asymptotic_rate(0.4) - 0.447213595499958) < 1e-12);
  CHECK(std::abs(asymptotic_rate(0.5) - 0.707106781186547) < 1e-12);
  CHECK(asymptotic_rate(0.8) == 1.0);
  // nu = sqrt(r_-) route
  for (const double mu : {0.05, 0.2, 0.45}) {
    const double rm = (1.0 - std::sqrt(1.0 - 4.0 * mu * mu)) / 2.0;
    CHECK(rel_diff(asymptotic_rate(mu), std::sqrt(rm)) <= 1e-13);
  }
}

TEST_CASE("mu_threshold: exact small cases and the monotone limit") {
  CHECK(mu_threshold(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_threshold(2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  double prev = mu_threshold(1);
  for (int m = 2; m <= 200; ++m) {
    const double cur = mu_threshold(m);
    CHECK(cur < prev);
    CHECK(cur > 0.5);
    prev = cur;
  }
  CHECK(mu_threshold(20000) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("stalling_index: tabulated values and threshold-inversion cross-check") {
  CHECK_FALSE(stalling_index(0.5).has_value());
  CHECK(*stalling_index(0.501) == 47);
  CHECK(*stalling_index(0.51) == 13);
  CHECK(*stalling_index(0.55) == 5);
  CHECK(*stalling_index(0.6) == 3);
  CHECK(*stalling_index(0.8) == 1);

  for (const double mu : {0.501, 0.51, 0.55, 0.6, 0.66, 0.75, 0.8, 0.9, 0.99}) {
    const int mstar = *stalling_index(mu);
    // inversion of the threshold sequence: m* = max { m : mu <= mu_m }
    CHECK(mu <= mu_threshold(mstar) + 1e-14);
    CHECK(mu > mu_threshold(mstar + 1));
  }
}

TEST_CASE("monotonicity in m: omega strictly increases until machine saturation") {
  for (double mu_raw = 0.05; mu_raw <= 0.501; mu_raw += 0.05) {
    const double mu = std::min(mu_raw, 0.5);
    const double nu = asymptotic_rate(mu);
    const RateSequence seq = omega_sequence(mu, 60);
    for (std::size_t j = 1; j < seq.values.size(); ++j) {
      // the recursion hits its fixed point exactly in doubles for small mu
      const bool saturated = nu - seq.values[j - 1] <= 1e-12 * nu;
      if (saturated)
        CHECK(seq.values[j] >= seq.values[j - 1]);
      else
        CHECK(seq.values[j] > seq.values[j - 1]);
    }
  }
}

TEST_CASE("monotonicity in mu: omega_m(mu1) < omega_m(mu2) for mu1 < mu2") {
  std::vector<double> grid;
  for (double mu = 0.02; mu <= 0.5 + 1e-12; mu += 0.02) grid.push_back(std::min(mu, 0.5));
  for (const int m : {1, 2, 5, 10, 30, 60}) {
    for (std::size_t g = 1; g < grid.size(); ++g) {
      const double o1 = omega_sequence(grid[g - 1], m).values[static_cast<std::size_t>(m - 1)];
      const double o2 = omega_sequence(grid[g], m).values[static_cast<std::size_t>(m - 1)];
      CHECK(o1 < o2);
    }
  }
}

TEST_CASE("omega stays within (0, 1/sqrt(2)] for mu <= 1/2") {
  for (const double mu : {0.1, 0.25, 0.4, 0.5}) {
    const RateSequence seq = omega_sequence(mu, 60);
    for (const double o : seq.values) {
      CHECK(o > 0.0);
      CHECK(o <= 0.70710678118654752 + 1e-12);
    }
  }
}

TEST_CASE("identity omega_m^2 = mu^2 b_{m-1} / b_m on the grid") {
  for (double mu_raw = 0.05; mu_raw <= 0.5 + 1e-12; mu_raw += 0.05) {
    const double mu = std::min(mu_raw, 0.5);
    const RateSequence omega = omega_sequence(mu, 60);
    const std::vector<double> b = b_sequence(mu, 60);
    for (int m = 1; m <= 60; ++m) {
      const double lhs = omega.values[static_cast<std::size_t>(m - 1)];
      const double rhs = std::sqrt(mu * mu * b[static_cast<std::size_t>(m - 1)] /
                                   b[static_cast<std::size_t>(m)]);
      CHECK(rel_diff(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("bound telescopes: bound(m) = bound(m-1) * local_rate(m)") {
  for (const double mu : {0.1, 0.3, 0.5}) {
    for (int m = 1; m <= 40; ++m) {
      const double lhs = *fgmres_bound(mu, m);
      const double rhs = *fgmres_bound(mu, m - 1) * local_rate(mu, m);
      CHECK(rel_diff(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("recurrence equals the explicit root form on the 45-point grid") {
  for (const double mu : grid_45_points()) {
    const std::vector<double> b = b_sequence(mu, 60);
    for (int m = 1; m <= 60; ++m) {
      CHECK(rel_diff(b[static_cast<std::size_t>(m)], b_explicit(mu, m)) <= 1e-10);
      CHECK(rel_diff(*fgmres_bound(mu, m), fg_bound_explicit(mu, m)) <= 1e-10);
    }
    for (int m = 1; m <= 60; ++m)
      CHECK(rel_diff(local_rate(mu, m),
                     omega_sequence(mu, m).values[static_cast<std::size_t>(m - 1)]) <=
            1e-12);
  }
}

TEST_CASE("limit rate dominates and the cubic expansion holds for small mu") {
  for (double mu = 0.05; mu <= 0.3 + 1e-12; mu += 0.05) {
    const double nu = asymptotic_rate(mu);
    const RateSequence omega = omega_sequence(mu, 50);
    double prev_gap = nu - omega.values[0];
    CHECK(prev_gap > 0.0);
    for (std::size_t j = 1; j < omega.values.size(); ++j) {
      const double gap = nu - omega.values[j];
      if (prev_gap <= 1e-12 * nu) break;  // converged to machine precision
      CHECK(gap >= 0.0);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(std::abs(nu - (mu + 0.5 * mu * mu * mu)) <= 2.0 * std::pow(mu, 5));
  }
}

TEST_CASE("make_bound_series: consistent slices of the scalar operations") {
  const BoundSeries series = make_bound_series(0.55, 10);
  CHECK(series.stall_index.has_value());
  CHECK(*series.stall_index == 5);
  for (int j = 1; j <= 5; ++j)
    CHECK(rel_diff(series.fg_bounds[static_cast<std::size_t>(j)],
                   *fgmres_bound(0.55, j)) <= 1e-14);
  for (int j = 6; j <= 10; ++j)
    CHECK(std::isnan(series.fg_bounds[static_cast<std::size_t>(j)]));

  const BoundSeries fine = make_bound_series(0.3, 12);
  CHECK_FALSE(fine.stall_index.has_value());
  CHECK(fine.fg_bounds[0] == 1.0);
  for (int j = 1; j <= 12; ++j) {
    CHECK(rel_diff(fine.fg_bounds[static_cast<std::size_t>(j)], *fgmres_bound(0.3, j)) <=
          1e-14);
    CHECK(rel_diff(fine.ff_bounds[static_cast<std::size_t>(j)], *ffom_bound(0.3, j)) <=
          1e-14);
  }
}

TEST_CASE("rate_report: stall data matches the tables") {
  const RateReport r = rate_report(0.55);
  CHECK(r.nu == 1.0);
  REQUIRE(r.stall_index.has_value());
  CHECK(*r.stall_index == 5);
  CHECK(r.bound_at_stall == doctest::Approx(0.198).epsilon(5e-3));

  const RateReport fine = rate_report(0.5);
  CHECK_FALSE(fine.stall_index.has_value());
  CHECK(fine.bound_at_stall == 0.0);
}

TEST_CASE("domain errors are rejected") {
  CHECK_THROWS_AS(omega_sequence(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(omega_sequence(1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(local_rate(0.7, 5), std::invalid_argument);
  CHECK_THROWS_AS(mu_threshold(0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_sequence(std::vector<double>{-0.1}), std::invalid_argument);
}
