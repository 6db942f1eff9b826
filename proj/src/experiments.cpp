// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "flexkrylov/adversarial.hpp"
#include "flexkrylov/bounds.hpp"
#include "flexkrylov/convdiff.hpp"
#include "flexkrylov/matrix_market.hpp"

namespace flexkrylov {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::vector<std::string> base_comments(const std::string &experiment,
                                       const ExperimentConfig &cfg) {
  std::vector<std::string> c;
  c.push_back("experiment: " + experiment);
  c.push_back("mu " + fmt("%.17g", cfg.mu) + "  outer " + std::to_string(cfg.outer) +
              "  inner " + std::to_string(cfg.inner) + "  n " + std::to_string(cfg.n) +
              "  seed " + std::to_string(cfg.seed));
  return c;
}

void maybe_write(const TraceRecord &rec, const std::string &path) {
  if (!path.empty()) write_trace_dat(rec, path);
}

void maybe_export_system(const AdversarialSystem &sys, const ExperimentConfig &cfg) {
  if (!cfg.export_matrix_path.empty())
    write_matrix_market(cfg.export_matrix_path, sys.to_csr());
  if (!cfg.dump_frames_path.empty()) write_frame_dump(sys, cfg.dump_frames_path);
}

std::vector<int> collect_inner_counts(const SolveTrace &trace) {
  std::vector<int> counts;
  counts.reserve(trace.steps.size());
  for (const TraceStep &s : trace.steps) counts.push_back(s.inner_iterations);
  return counts;
}

}  // namespace

ExperimentResult run_sharp(const ExperimentConfig &cfg) {
  if (!(cfg.mu > 0.0 && cfg.mu <= 0.5))
    throw std::invalid_argument("sharp: mu must lie in (0, 1/2]");
  if (cfg.n < 2) throw std::invalid_argument("sharp: dimension must be at least 2");

  const Vector b = unit_vector(cfg.n, 0);
  const AdversarialSystem sys =
      build_adversarial_operator(b, cfg.mu, cfg.outer, cfg.inner, cfg.n, cfg.seed);
  maybe_export_system(sys, cfg);

  const auto op = sys.make_operator();
  GmresPreconditioner precond(op, cfg.inner);  // exactly k iterations
  SolverConfig scfg;
  scfg.max_outer = sys.m;
  scfg.rel_tolerance = 0.0;  // run the full scripted length
  ExperimentResult res;
  FgmresResult run = fgmres(*op, b, precond, scfg);
  res.trace = std::move(run.trace);

  const BoundSeries series = make_bound_series(cfg.mu, sys.m);
  res.record = make_trace_record(res.trace, series.fg_bounds, base_comments("sharp", cfg));
  res.max_gap = verify_sharpness(res.trace, cfg.mu);
  res.bound_kind = "a priori (contraction recursion)";
  res.inner_counts = collect_inner_counts(res.trace);
  maybe_write(res.record, cfg.out_path);

  std::ostringstream sum;
  sum << "sharp: n " << cfg.n << ", inner k " << sys.k << ", outer m " << sys.m
      << ", mu " << cfg.mu << "\n";
  sum << "max relative gap between residuals and bound: " << fmt("%.3e", res.max_gap)
      << "\n";
  if (!res.trace.steps.empty())
    sum << "final relative residual " << fmt("%.6e", res.trace.steps.back().fg_resnorm /
                                                         res.trace.r0_norm)
        << " (" << to_string(res.trace.status) << ")\n";
  res.summary = sum.str();
  return res;
}

ExperimentResult run_stagnate(const ExperimentConfig &cfg) {
  if (!(cfg.mu > 0.5 && cfg.mu < 1.0))
    throw std::invalid_argument("stagnate: mu must lie in (1/2, 1)");
  if (cfg.n < 2) throw std::invalid_argument("stagnate: dimension must be at least 2");

  const Vector b = unit_vector(cfg.n, 0);
  const AdversarialSystem sys =
      build_stagnating_system(b, cfg.mu, cfg.outer, cfg.inner, cfg.n, cfg.seed);
  maybe_export_system(sys, cfg);

  const auto op = sys.make_operator();
  GmresPreconditioner precond(op, cfg.inner);
  SolverConfig scfg;
  scfg.max_outer = sys.m;
  scfg.rel_tolerance = 0.0;
  scfg.stop_on_stagnation = false;  // record the flat tail
  ExperimentResult res;
  FgmresResult run = fgmres(*op, b, precond, scfg);
  res.trace = std::move(run.trace);

  const BoundSeries series = make_bound_series(cfg.mu, sys.m);
  res.record =
      make_trace_record(res.trace, series.fg_bounds, base_comments("stagnate", cfg));
  res.stall_index = stalling_index(cfg.mu);
  res.inner_counts = collect_inner_counts(res.trace);
  res.bound_kind = "a priori (contraction recursion), stalled past m*";

  const int mstar = res.stall_index.value_or(sys.m);
  res.first_flat_iteration = mstar + 1;
  const bool stalled_in_run = static_cast<std::size_t>(mstar) < res.trace.steps.size();
  if (static_cast<std::size_t>(mstar) <= res.trace.steps.size() && mstar >= 1)
    res.residual_at_stall =
        res.trace.steps[static_cast<std::size_t>(mstar - 1)].fg_resnorm /
        res.trace.r0_norm;
  maybe_write(res.record, cfg.out_path);

  std::ostringstream sum;
  sum << "stagnate: n " << cfg.n << ", inner k " << sys.k << ", outer m " << sys.m
      << ", mu " << cfg.mu << "\n";
  sum << "bound decreases through index m* = " << mstar
      << "; first flat iteration is " << res.first_flat_iteration << "\n";
  if (stalled_in_run)
    sum << "relative residual at the stall: " << fmt("%.6e", res.residual_at_stall)
        << " (" << to_string(res.trace.status) << ")\n";
  else
    sum << "run ended before the stall (" << to_string(res.trace.status) << ")\n";
  res.summary = sum.str();
  return res;
}

ExperimentResult run_solve(const ExperimentConfig &cfg) {
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0))
    throw std::invalid_argument("solve: mu must lie in (0, 1)");

  CsrMatrix matrix;
  std::string source;
  if (!cfg.matrix_path.empty()) {
    matrix = read_matrix_market(cfg.matrix_path);
    source = "matrix file " + cfg.matrix_path;
  } else {
    matrix = generate_convdiff(static_cast<int>(cfg.n), cfg.peclet);
    source = "convection-diffusion grid " + std::to_string(cfg.n) + " (peclet " +
             fmt("%.3g", cfg.peclet) + ")";
  }
  const auto op = std::make_shared<CsrOperator>(std::move(matrix));
  const Vector b = unit_vector(op->dim(), 0);

  GmresPreconditioner precond(op, cfg.inner, cfg.mu);  // residual-target mode
  SolverConfig scfg;
  scfg.max_outer = cfg.outer;
  scfg.rel_tolerance = cfg.rel_tolerance;
  ExperimentResult res;
  FgmresResult run = fgmres(*op, b, precond, scfg);
  res.trace = std::move(run.trace);
  res.inner_counts = collect_inner_counts(res.trace);

  // the a priori bound applies only while every inner solve met the target;
  // otherwise fall back to the a posteriori recursion on measured residuals
  double max_rp = 0.0;
  std::vector<double> rp;
  for (const TraceStep &s : res.trace.steps) {
    max_rp = std::max(max_rp, s.p_resnorm);
    rp.push_back(s.p_resnorm);
  }
  const int m = static_cast<int>(res.trace.steps.size());
  std::vector<double> bound_column;
  if (max_rp <= cfg.mu * (1.0 + 1e-9) + 1e-12) {
    res.bound_kind = "a priori (contraction recursion)";
    bound_column = make_bound_series(cfg.mu, m).fg_bounds;
  } else {
    res.bound_kind = "a posteriori (measured preconditioner residuals)";
    const RateSequence gamma = gamma_sequence(rp);
    bound_column.assign(static_cast<std::size_t>(m) + 1, kNan);
    bound_column[0] = 1.0;
    double prod = 1.0;
    for (std::size_t j = 0; j < gamma.values.size(); ++j) {
      if (j >= gamma.valid_prefix) break;
      prod *= gamma.values[j];
      bound_column[j + 1] = prod;
    }
  }

  auto comments = base_comments("solve", cfg);
  comments.push_back("source: " + source);
  comments.push_back("bound column: " + res.bound_kind);
  res.record = make_trace_record(res.trace, bound_column, std::move(comments));
  maybe_write(res.record, cfg.out_path);

  std::ostringstream sum;
  sum << "solve: " << source << ", dimension " << op->dim() << ", inner target mu "
      << cfg.mu << " (cap " << cfg.inner << ")\n";
  sum << "outer iterations: " << m << ", status " << to_string(res.trace.status) << "\n";
  if (m > 0)
    sum << "final relative residual "
        << fmt("%.6e", res.trace.steps.back().fg_resnorm / res.trace.r0_norm) << "\n";
  sum << "inner iteration counts:";
  for (const int c : res.inner_counts) sum << " " << c;
  sum << "\n";
  sum << "bound column: " << res.bound_kind << "\n";
  res.summary = sum.str();
  return res;
}

std::string tables_text() {
  std::ostringstream os;
  os << "Two phases of convergence: initial rate mu, limit rate nu\n";
  os << "  mu (phase 1)   nu (phase 2)\n";
  for (const double mu : {0.01, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %-14.6g %.15f\n", mu, asymptotic_rate(mu));
    os << buf;
  }
  os << "  >0.5           1 (stagnation)\n\n";

  os << "Stalling index m* and residual bound at the stall\n";
  os << "  mu        m*     bound at m*\n";
  for (const double mu : {0.5, 0.501, 0.51, 0.55, 0.6, 0.8}) {
    const RateReport r = rate_report(mu);
    char buf[96];
    if (r.stall_index)
      std::snprintf(buf, sizeof(buf), "  %-9.6g %-6d %.2e\n", mu, *r.stall_index,
                    r.bound_at_stall);
    else
      std::snprintf(buf, sizeof(buf), "  %-9.6g inf    0\n", mu);
    os << buf;
  }
  return os.str();
}

std::string bound_table_text(double mu, int m) {
  const BoundSeries series = make_bound_series(mu, m);
  std::ostringstream os;
  os << "bound series for mu = " << fmt("%g", mu) << "\n";
  os << "limit rate nu = " << fmt("%.15f", asymptotic_rate(mu)) << ", stalling index ";
  if (series.stall_index)
    os << *series.stall_index;
  else
    os << "inf";
  os << "\n";
  os << "  j   omega_j            fg bound           ff bound\n";
  for (int j = 1; j <= m; ++j) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "  %-3d %-18.12g %-18.12g %-18.12g\n", j,
                  series.omegas[static_cast<std::size_t>(j - 1)],
                  series.fg_bounds[static_cast<std::size_t>(j)],
                  series.ff_bounds[static_cast<std::size_t>(j)]);
    os << buf;
  }
  return os.str();
}

}  // namespace flexkrylov
