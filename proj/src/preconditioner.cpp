// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/preconditioner.hpp"

#include "flexkrylov/solver.hpp"

namespace flexkrylov {

std::shared_ptr<Preconditioner> make_fixed_preconditioner(
    std::shared_ptr<const LinearOperator> m) {
  return std::make_shared<FixedPreconditioner>(std::move(m));
}

std::shared_ptr<Preconditioner> make_fixed_preconditioner(DenseMatrix m) {
  return std::make_shared<FixedPreconditioner>(
      std::make_shared<DenseOperator>(std::move(m)));
}

PreconditionerResult GmresPreconditioner::apply(int, const Vector &v) {
  InnerGmresResult inner = inner_gmres(*a_, v, max_iterations_, mu_target_);
  PreconditionerResult out;
  out.z = std::move(inner.z);
  out.applied = std::move(inner.az);
  out.reported_resnorm = inner.resnorm;
  out.inner_iterations = inner.iterations;
  return out;
}

}  // namespace flexkrylov
