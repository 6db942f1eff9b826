// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flexkrylov {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
// floating-point slack on the omega <= 1 feasibility test
constexpr double kUnitSlack = 1e-14;

void require_mu_open(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("mu must lie in (0, 1)");
}

void require_mu_half(double mu) {
  if (!(mu > 0.0 && mu <= 0.5 + kUnitSlack))
    throw std::invalid_argument("mu must lie in (0, 1/2]");
}

RateSequence run_recursion(std::span<const double> factors) {
  RateSequence seq;
  seq.values.reserve(factors.size());
  double prev = 0.0;
  bool alive = true;
  bool valid = true;
  for (const double f : factors) {
    double value = kNan;
    if (alive) {
      const double denom = 1.0 - prev * prev;
      if (denom > 0.0) {
        value = f / std::sqrt(denom);
      } else {
        alive = false;
      }
    }
    seq.values.push_back(value);
    if (valid && !std::isnan(value) && value <= 1.0 + kUnitSlack) {
      ++seq.valid_prefix;
    } else {
      valid = false;
    }
    prev = value;
    if (std::isnan(value)) alive = false;
  }
  return seq;
}

}  // namespace

RateSequence omega_sequence(double mu, int m) {
  require_mu_open(mu);
  if (m < 0) throw std::invalid_argument("omega_sequence: m must be nonnegative");
  std::vector<double> factors(static_cast<std::size_t>(m), mu);
  return run_recursion(factors);
}

RateSequence gamma_sequence(std::span<const double> rp_norms) {
  for (const double r : rp_norms)
    if (!(r >= 0.0)) throw std::invalid_argument("gamma_sequence: norms must be >= 0");
  return run_recursion(rp_norms);
}

std::vector<double> b_sequence(double mu, int m) {
  if (!(mu > 0.0)) throw std::invalid_argument("b_sequence: mu must be positive");
  if (m < 0) throw std::invalid_argument("b_sequence: m must be nonnegative");
  std::vector<double> b(static_cast<std::size_t>(m) + 1);
  b[0] = 1.0;
  if (m >= 1) b[1] = 1.0;
  const double mu2 = mu * mu;
  for (int j = 2; j <= m; ++j)
    b[static_cast<std::size_t>(j)] =
        b[static_cast<std::size_t>(j - 1)] - mu2 * b[static_cast<std::size_t>(j - 2)];
  return b;
}

std::optional<double> fgmres_bound(double mu, int m) {
  require_mu_open(mu);
  if (m < 0) throw std::invalid_argument("fgmres_bound: m must be nonnegative");
  if (m == 0) return 1.0;
  if (mu > 0.5 + kUnitSlack) {
    const RateSequence omega = omega_sequence(mu, m);
    if (omega.valid_prefix < static_cast<std::size_t>(m)) return std::nullopt;
  }
  const std::vector<double> b = b_sequence(mu, m);
  return std::pow(mu, m) / std::sqrt(b.back());
}

std::optional<double> ffom_bound(double mu, int m) {
  require_mu_half(mu);
  if (m < 0) throw std::invalid_argument("ffom_bound: m must be nonnegative");
  const std::vector<double> b = b_sequence(mu, m + 1);
  return std::pow(mu, m) / std::sqrt(b.back());
}

double local_rate(double mu, int m) {
  require_mu_half(mu);
  if (m < 1) throw std::invalid_argument("local_rate: m must be positive");
  const std::vector<double> b = b_sequence(mu, m);
  return std::sqrt(mu * mu * b[static_cast<std::size_t>(m - 1)] /
                   b[static_cast<std::size_t>(m)]);
}

double asymptotic_rate(double mu) {
  require_mu_open(mu);
  if (mu > 0.5) return 1.0;
  return std::sin(0.5 * std::asin(2.0 * mu));
}

double mu_threshold(int m) {
  if (m < 1) throw std::invalid_argument("mu_threshold: m must be positive");
  return 1.0 / (2.0 * std::cos(M_PI / (m + 2)));
}

std::optional<int> stalling_index(double mu) {
  require_mu_open(mu);
  if (mu <= 0.5 + kUnitSlack) return std::nullopt;
  // omega crosses 1 in finitely many steps for any mu > 1/2
  double prev = 0.0;
  for (int j = 1;; ++j) {
    const double value = mu / std::sqrt(1.0 - prev * prev);
    if (value > 1.0 + kUnitSlack) return j - 1;
    prev = value;
  }
}

BoundSeries make_bound_series(double mu, int m) {
  require_mu_open(mu);
  if (m < 0) throw std::invalid_argument("make_bound_series: m must be nonnegative");
  BoundSeries series;
  series.mu = mu;
  series.b_seq = b_sequence(mu, m + 1);
  const RateSequence omega = omega_sequence(mu, m + 1);
  series.omegas.assign(omega.values.begin(),
                       omega.values.begin() + static_cast<std::ptrdiff_t>(m));
  series.stall_index = stalling_index(mu);

  const std::size_t fg_valid =
      series.stall_index ? std::min<std::size_t>(
                               static_cast<std::size_t>(*series.stall_index),
                               static_cast<std::size_t>(m))
                         : static_cast<std::size_t>(m);
  series.fg_bounds.assign(static_cast<std::size_t>(m) + 1, kNan);
  series.ff_bounds.assign(static_cast<std::size_t>(m) + 1, kNan);
  double mu_pow = 1.0;
  for (std::size_t j = 0; j <= static_cast<std::size_t>(m); ++j) {
    if (j > 0) mu_pow *= mu;
    if (j <= fg_valid && series.b_seq[j] > 0.0)
      series.fg_bounds[j] = mu_pow / std::sqrt(series.b_seq[j]);
    // the FFOM companion needs one more decreasing step
    if (mu <= 0.5 + kUnitSlack && series.b_seq[j + 1] > 0.0)
      series.ff_bounds[j] = mu_pow / std::sqrt(series.b_seq[j + 1]);
  }
  return series;
}

RateReport rate_report(double mu) {
  RateReport report;
  report.mu = mu;
  report.nu = asymptotic_rate(mu);
  report.stall_index = stalling_index(mu);
  if (report.stall_index) {
    const auto bound = fgmres_bound(mu, *report.stall_index);
    report.bound_at_stall = bound ? *bound : kNan;
  } else {
    report.bound_at_stall = 0.0;
  }
  return report;
}

}  // namespace flexkrylov
