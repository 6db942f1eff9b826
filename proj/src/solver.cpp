// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/solver.hpp"

#include <cmath>

#include "flexkrylov/errors.hpp"
#include "flexkrylov/orthogonal.hpp"

namespace flexkrylov {

namespace {

// ratio above which a step counts as non-decreasing
constexpr double kStagnationRatio = 1.0 - 1e-12;

Vector subtract(const Vector &a, const Vector &b) {
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

// ||r_j^FF|| = h_{j+1,j} |e_j^* y^FF|, from the Arnoldi relation
double ffom_resnorm_from(const HessenbergFactor &h, const std::vector<Complex> &y_ff) {
  return h.subdiag(h.size() - 1) * std::abs(y_ff.back());
}

DenseMatrix square_prefix(const HessenbergFactor &h, std::size_t m) {
  DenseMatrix s(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t len = std::min(h.cols[j].size(), m);
    for (std::size_t i = 0; i < len; ++i) s(i, j) = h.cols[j][i];
  }
  return s;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::happy_breakdown: return "happy_breakdown";
    case Termination::ffom_singular_noted: return "ffom_singular_noted";
    case Termination::stagnation_detected: return "stagnation_detected";
  }
  return "unknown";
}

FgmresResult fgmres(const LinearOperator &a, const Vector &b, const Vector &x0,
                    Preconditioner &m, const SolverConfig &cfg) {
  const std::size_t n = a.dim();
  if (b.size() != n || x0.size() != n)
    throw std::invalid_argument("fgmres: dimension mismatch");
  if (cfg.rel_tolerance < 0.0 || cfg.breakdown_tolerance <= 0.0)
    throw std::invalid_argument("fgmres: tolerances must be positive");

  FgmresResult res;
  res.state.x0 = x0;

  const bool zero_start = norm(x0) == 0.0;
  Vector r0 = zero_start ? b : subtract(b, a.apply(x0));
  const double beta = norm(r0);
  res.trace.r0_norm = beta;
  res.state.beta = beta;
  res.state.h.beta = beta;

  if (beta == 0.0) {
    res.x = x0;
    res.trace.status = Termination::converged;
    return res;
  }

  scale(r0, Complex{1.0 / beta, 0.0});
  res.state.v.push_back(std::move(r0));

  HessenbergLsq lsq(beta);
  double fg_prev = beta;
  int flat_steps = 0;
  bool stagnated = false;
  bool broke_down = false;
  bool converged = false;

  for (int j = 1; j <= cfg.max_outer; ++j) {
    PreconditionerResult pres = m.apply(j, res.state.v[static_cast<std::size_t>(j - 1)]);
    if (pres.z.size() != n)
      throw std::invalid_argument("fgmres: preconditioner returned wrong dimension");
    if (!all_finite(pres.z) || (pres.applied && !all_finite(*pres.applied)))
      throw NumericalError("fgmres: preconditioner returned non-finite values");

    const Vector &vj = res.state.v[static_cast<std::size_t>(j - 1)];
    Vector w;
    double p_resnorm;
    if (cfg.verify_preconditioner || !pres.applied) {
      w = a.apply(pres.z);
      p_resnorm = norm(subtract(vj, w));
      if (pres.reported_resnorm) {
        const double agree_tol = 1e-10 * (norm(vj) + p_resnorm);
        if (std::abs(*pres.reported_resnorm - p_resnorm) > agree_tol)
          throw NumericalError(
              "fgmres: preconditioner-reported residual disagrees with verified value");
      }
    } else {
      w = std::move(*pres.applied);
      p_resnorm = pres.reported_resnorm ? *pres.reported_resnorm : norm(subtract(vj, w));
    }
    res.state.z.push_back(std::move(pres.z));

    MgsResult mgs = mgs_orthogonalize(w, res.state.v);
    std::vector<Complex> col = std::move(mgs.h);
    col.push_back(Complex{mgs.h_next, 0.0});
    res.state.h.cols.push_back(col);
    lsq.push_column(col);

    const bool breakdown = mgs.h_next <= cfg.breakdown_tolerance * beta;
    if (!breakdown) {
      scale(mgs.deflated, Complex{1.0 / mgs.h_next, 0.0});
      res.state.v.push_back(std::move(mgs.deflated));
    }

    TraceStep step;
    step.fg_resnorm = lsq.residual_norm();
    step.p_resnorm = p_resnorm;
    step.inner_iterations = pres.inner_iterations;

    if (cfg.compute_ffom) {
      const auto y_ff = hessenberg_square_solve(
          square_prefix(res.state.h, static_cast<std::size_t>(j)), beta);
      if (y_ff) {
        step.ff_resnorm = ffom_resnorm_from(res.state.h, *y_ff);
      } else {
        res.trace.any_ffom_singular = true;
      }
    }
    res.trace.steps.push_back(step);

    if (step.fg_resnorm <= cfg.rel_tolerance * beta) {
      converged = true;
      break;
    }
    if (breakdown) {
      broke_down = true;
      break;
    }
    if (fg_prev > 0.0 && step.fg_resnorm / fg_prev > kStagnationRatio) {
      if (++flat_steps >= 2) {
        stagnated = true;
        if (cfg.stop_on_stagnation) break;
      }
    } else {
      flat_steps = 0;
    }
    fg_prev = step.fg_resnorm;
  }

  if (converged)
    res.trace.status = Termination::converged;
  else if (broke_down)
    res.trace.status = Termination::happy_breakdown;
  else if (stagnated)
    res.trace.status = Termination::stagnation_detected;
  else if (res.trace.any_ffom_singular)
    res.trace.status = Termination::ffom_singular_noted;
  else
    res.trace.status = Termination::max_iters;

  const auto y = lsq.solve();
  if (!y)
    throw NumericalError("fgmres: least-squares factor is rank deficient (breakdown "
                         "without convergence)");
  res.x = x0;
  for (std::size_t i = 0; i < y->size(); ++i) axpy((*y)[i], res.state.z[i], res.x);

  if (cfg.verify_preconditioner && !res.trace.steps.empty())
    res.trace.final_true_resnorm = norm(subtract(b, a.apply(res.x)));
  return res;
}

FgmresResult fgmres(const LinearOperator &a, const Vector &b, Preconditioner &m,
                    const SolverConfig &cfg) {
  return fgmres(a, b, zeros(a.dim()), m, cfg);
}

std::optional<Vector> ffom_step(const FlexibleArnoldiState &state, std::size_t step) {
  const std::size_t m = state.h.size();
  if (step == 0) step = m;
  if (step > m) throw std::invalid_argument("ffom_step: step beyond state");
  const auto y = hessenberg_square_solve(square_prefix(state.h, step), state.beta);
  if (!y) return std::nullopt;
  Vector x = state.x0;
  for (std::size_t i = 0; i < step; ++i) axpy((*y)[i], state.z[i], x);
  return x;
}

InnerGmresResult inner_gmres(const LinearOperator &a, const Vector &v,
                             int max_iterations, std::optional<double> mu_target) {
  if (max_iterations < 1)
    throw std::invalid_argument("inner_gmres: need at least one iteration");
  if (v.size() != a.dim()) throw std::invalid_argument("inner_gmres: dimension mismatch");

  InnerGmresResult res;
  const double v_norm = norm(v);
  if (v_norm == 0.0) {
    res.z = zeros(v.size());
    res.az = zeros(v.size());
    return res;
  }

  Vector v1 = v;
  scale(v1, Complex{1.0 / v_norm, 0.0});

  std::vector<Vector> basis{std::move(v1)};
  HessenbergFactor factor;
  factor.beta = 1.0;
  HessenbergLsq lsq(1.0);

  for (int i = 1; i <= max_iterations; ++i) {
    Vector w = a.apply(basis.back());
    MgsResult mgs = mgs_orthogonalize(w, basis);
    std::vector<Complex> col = std::move(mgs.h);
    col.push_back(Complex{mgs.h_next, 0.0});
    factor.cols.push_back(col);
    lsq.push_column(col);
    res.history.push_back(lsq.residual_norm());
    res.iterations = i;

    if (mgs.h_next <= 1e-14) {
      // invariant subspace; a nonzero residual here is a true breakdown
      res.breakdown = lsq.residual_norm() > 1e-12;
      break;
    }
    scale(mgs.deflated, Complex{1.0 / mgs.h_next, 0.0});
    basis.push_back(std::move(mgs.deflated));

    if (mu_target && lsq.residual_norm() <= *mu_target) break;
  }

  auto y = lsq.solve();
  double rel_resnorm = lsq.residual_norm();
  if (!y) {
    // rank-deficient tail: fall back to the best solvable prefix; the rotated
    // residual of the full factor is not meaningful past a singular column
    res.breakdown = true;
    std::size_t keep = factor.size();
    while (keep > 0 && !y) {
      --keep;
      HessenbergLsq trimmed(1.0);
      for (std::size_t j = 0; j < keep; ++j) trimmed.push_column(factor.cols[j]);
      y = trimmed.solve();
      if (y) rel_resnorm = trimmed.residual_norm();
    }
    if (!y) {
      y = std::vector<Complex>{};
      rel_resnorm = 1.0;
    }
    for (std::size_t i = keep; i < res.history.size(); ++i)
      res.history[i] = rel_resnorm;
  }

  res.z = zeros(v.size());
  for (std::size_t i = 0; i < y->size(); ++i) axpy((*y)[i], basis[i], res.z);
  scale(res.z, Complex{v_norm, 0.0});

  // A z = V_{m+1} (H y), scaled back to the original right-hand side
  std::vector<Complex> hy(factor.size() + 1, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < y->size(); ++j)
    for (std::size_t i = 0; i < factor.cols[j].size(); ++i)
      hy[i] += factor.cols[j][i] * (*y)[j];
  res.az = zeros(v.size());
  for (std::size_t i = 0; i < hy.size() && i < basis.size(); ++i)
    axpy(hy[i], basis[i], res.az);
  scale(res.az, Complex{v_norm, 0.0});

  res.resnorm = rel_resnorm * v_norm;
  for (double &h : res.history) h *= v_norm;
  return res;
}

}  // namespace flexkrylov
