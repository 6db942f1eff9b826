// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_SOLVER_HPP
#define FLEXKRYLOV_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "flexkrylov/hessenberg.hpp"
#include "flexkrylov/linear_operator.hpp"
#include "flexkrylov/preconditioner.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

enum class Termination {
  converged,
  max_iters,
  happy_breakdown,
  ffom_singular_noted,
  stagnation_detected,
};

std::string to_string(Termination t);

struct TraceStep {
  double fg_resnorm = 0.0;                ///< ||r_j^FG||
  std::optional<double> ff_resnorm;       ///< ||r_j^FF||, empty when H_j singular
  double p_resnorm = 0.0;                 ///< ||r_j^P|| = ||v_j - A z_j||
  int inner_iterations = 0;
};

struct SolveTrace {
  double r0_norm = 0.0;
  std::vector<TraceStep> steps;
  Termination status = Termination::max_iters;
  bool any_ffom_singular = false;
  /// Explicitly recomputed ||b - A x_m||, filled when verification is on.
  std::optional<double> final_true_resnorm;

  double fg(std::size_t j) const {  // j = 0 is the initial residual
    return j == 0 ? r0_norm : steps[j - 1].fg_resnorm;
  }
};

/// The triple (V_{m+1}, Z_m, underline H_m) of the flexible Arnoldi process,
/// plus beta = ||r_0|| and the starting guess.
struct FlexibleArnoldiState {
  std::vector<Vector> v;
  std::vector<Vector> z;
  HessenbergFactor h;
  double beta = 0.0;
  Vector x0;
};

struct SolverConfig {
  int max_outer = 50;
  /// convergence on ||r_j|| / ||r_0||; 0 runs to the iteration limit
  double rel_tolerance = 1e-8;
  double breakdown_tolerance = 1e-12;  ///< happy breakdown when h_{j+1,j} <= tol * beta
  bool verify_preconditioner = true;   ///< recompute ||v_j - A z_j|| with one extra apply
  bool compute_ffom = true;
  bool stop_on_stagnation = true;
};

struct FgmresResult {
  Vector x;
  SolveTrace trace;
  FlexibleArnoldiState state;
};

/// Flexible GMRES with FFOM iterates computed from the same Hessenberg factor.
/// x_m = x0 + Z_m y_m where y_m minimizes ||beta e_1 - underline(H_m) y||.
FgmresResult fgmres(const LinearOperator &a, const Vector &b, const Vector &x0,
                    Preconditioner &m, const SolverConfig &cfg);
FgmresResult fgmres(const LinearOperator &a, const Vector &b, Preconditioner &m,
                    const SolverConfig &cfg);

/// FFOM iterate x_j^FF = x0 + Z_j H_j^{-1} (beta e_1) at the given step
/// (1-based; 0 selects the last step). Empty when H_j is singular.
std::optional<Vector> ffom_step(const FlexibleArnoldiState &state, std::size_t step = 0);

struct InnerGmresResult {
  Vector z;                     ///< minimizer of ||v - A z|| over the Krylov space
  Vector az;                    ///< A z, assembled from the Arnoldi relation
  double resnorm = 0.0;         ///< ||v - A z||
  int iterations = 0;
  bool breakdown = false;       ///< breakdown before reaching the target
  std::vector<double> history;  ///< residual norm after each iteration
};

/// GMRES on A z = v from the zero guess. Runs exactly `max_iterations` steps,
/// or stops at the first step with relative residual <= mu_target when given.
InnerGmresResult inner_gmres(const LinearOperator &a, const Vector &v,
                             int max_iterations,
                             std::optional<double> mu_target = std::nullopt);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_SOLVER_HPP
