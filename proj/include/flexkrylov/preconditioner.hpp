// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_PRECONDITIONER_HPP
#define FLEXKRYLOV_PRECONDITIONER_HPP

#include <functional>
#include <memory>
#include <optional>

#include "flexkrylov/linear_operator.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

struct PreconditionerResult {
  Vector z;                                ///< approximate solution of A z = v
  std::optional<Vector> applied;           ///< A z, when computed internally
  std::optional<double> reported_resnorm;  ///< self-reported ||v - A z||
  int inner_iterations = 0;
};

/// Inner solve contract: given the outer step index j (1-based) and the unit
/// Arnoldi vector v_j, produce z_j with A z_j approximately v_j. A reported
/// residual norm must agree with the solver's verified value to rel. 1e-10.
/// Implementations may keep state across the steps of a single solve; they
/// must not be shared between concurrent solves.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual PreconditionerResult apply(int step, const Vector &v) = 0;
};

/// z_j = M v_j for a fixed operator M, independent of j.
class FixedPreconditioner final : public Preconditioner {
 public:
  explicit FixedPreconditioner(std::shared_ptr<const LinearOperator> m)
      : m_(std::move(m)) {}
  PreconditionerResult apply(int, const Vector &v) override {
    return {m_->apply(v), std::nullopt, std::nullopt, 0};
  }

 private:
  std::shared_ptr<const LinearOperator> m_;
};

std::shared_ptr<Preconditioner> make_fixed_preconditioner(
    std::shared_ptr<const LinearOperator> m);
std::shared_ptr<Preconditioner> make_fixed_preconditioner(DenseMatrix m);

/// Arbitrary user-supplied step rule; handy for tests and experiments.
class CallbackPreconditioner final : public Preconditioner {
 public:
  using Fn = std::function<Vector(int step, const Vector &v)>;
  explicit CallbackPreconditioner(Fn fn) : fn_(std::move(fn)) {}
  PreconditionerResult apply(int step, const Vector &v) override {
    return {fn_(step, v), std::nullopt, std::nullopt, 0};
  }

 private:
  Fn fn_;
};

/// Inner GMRES preconditioner. Supports both stopping rules used in practice:
/// exactly `max_iterations` steps, or the first step whose relative residual
/// drops to `mu_target` (capped by `max_iterations`).
class GmresPreconditioner final : public Preconditioner {
 public:
  GmresPreconditioner(std::shared_ptr<const LinearOperator> a, int max_iterations,
                      std::optional<double> mu_target = std::nullopt)
      : a_(std::move(a)), max_iterations_(max_iterations), mu_target_(mu_target) {}
  PreconditionerResult apply(int step, const Vector &v) override;

 private:
  std::shared_ptr<const LinearOperator> a_;
  int max_iterations_;
  std::optional<double> mu_target_;
};

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_PRECONDITIONER_HPP
