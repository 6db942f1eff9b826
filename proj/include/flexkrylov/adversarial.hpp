// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_ADVERSARIAL_HPP
#define FLEXKRYLOV_ADVERSARIAL_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "flexkrylov/csr_matrix.hpp"
#include "flexkrylov/dense_matrix.hpp"
#include "flexkrylov/errors.hpp"
#include "flexkrylov/linear_operator.hpp"
#include "flexkrylov/preconditioner.hpp"
#include "flexkrylov/solver.hpp"
#include "flexkrylov/types.hpp"

namespace flexkrylov {

/// The worst-case construction leaves the sharp regime: the preconditioner
/// tolerance exceeds the residual component available for the step.
class InfeasibleStepError : public NumericalError {
 public:
  explicit InfeasibleStepError(const std::string &what) : NumericalError(what) {}
};

struct WorstCaseStep {
  Vector w;            ///< w_k = p_k + y_k
  Vector y;            ///< y_k = alpha e_1 + beta e_2
  double alpha = 0.0;
  double beta = 0.0;
  double u_norm = 0.0; ///< ||u_k||, the residual component of v_k
};

/// One step of the worst-case preconditioner sequence: split v = p + u
/// against the orthonormal basis of span(A Z_{k-1}) and place w so that
/// ||v - w|| = mu with (v - w) orthogonal to w and to the basis. e_1 is
/// u/||u||; e_2 is the first canonical direction orthogonal to both, chosen
/// deterministically. Throws InfeasibleStepError when mu > ||u||.
WorstCaseStep worst_case_step(const Vector &v, std::span<const Vector> w_basis,
                              double mu);

/// Stateful preconditioner realizing the worst case against a concrete
/// matrix: at outer step k it builds w_k from the live Arnoldi vector and
/// returns z_k = A^{-1} w_k. Equality then holds in the per-step residual
/// bound. Not shareable between concurrent solves.
class WorstCasePreconditioner final : public Preconditioner {
 public:
  WorstCasePreconditioner(const DenseMatrix &a, double mu);
  PreconditionerResult apply(int step, const Vector &v) override;

  const std::vector<Vector> &w_basis() const { return w_basis_; }
  const std::vector<double> &u_norms() const { return u_norms_; }

 private:
  LuFactorization lu_;
  double mu_;
  std::vector<Vector> w_basis_;
  std::vector<double> u_norms_;
};

std::shared_ptr<Preconditioner> make_worst_case_preconditioner(const DenseMatrix &a,
                                                               double mu);

/// Matrix-free synthesis of a worst-case run: the Arnoldi vectors v_j, the
/// preconditioned directions w_j, and the residual norms the run will
/// produce. For mu > 1/2 (when `extend_stalled` is set) the construction
/// continues past the last sharp step with directions that keep the residual
/// exactly flat while ||r^P|| <= mu.
struct WSequence {
  std::size_t n = 0;
  double mu = 0.0;
  int steps = 0;        ///< number of w vectors built
  int sharp_steps = 0;  ///< leading steps built with the equality construction
  std::vector<Vector> v;        ///< v_1..v_{steps+1}
  std::vector<Vector> w;        ///< w_1..w_steps
  std::vector<double> fg_pred;  ///< predicted ||r_j^FG||, index 0..steps
  std::vector<double> ff_pred;  ///< predicted ||r_j^FF||, NaN where undefined
};

WSequence generate_w_sequence(const Vector &b, double mu, int m, std::size_t n,
                              bool extend_stalled = false);

/// Column set with exact-zero compression. Constructed frames stay sparse
/// when the right-hand side is a canonical vector, which keeps the operator
/// application cheap at full scale.
class ColumnFrame {
 public:
  ColumnFrame() = default;
  explicit ColumnFrame(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t cols() const { return idx_.size(); }
  void append(const Vector &dense);
  void append_compressed(std::vector<std::uint32_t> idx, std::vector<Complex> val);

  const std::vector<std::uint32_t> &col_indices(std::size_t j) const { return idx_[j]; }
  const std::vector<Complex> &col_values(std::size_t j) const { return val_[j]; }

  Complex dot_col(std::size_t j, const Vector &x) const;          ///< col_j^* x
  void axpy_col(std::size_t j, Complex a, Vector &y) const;       ///< y += a col_j
  Vector col_dense(std::size_t j) const;
  DenseMatrix to_dense() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<std::uint32_t>> idx_;
  std::vector<std::vector<Complex>> val_;
};

/// x -> Y (X^* x) + (x - X (X^* x)): maps the columns of X to the columns of
/// Y and acts as the identity on ker(X^*).
class FrameDeflectionOperator final : public LinearOperator {
 public:
  FrameDeflectionOperator(std::shared_ptr<const ColumnFrame> x,
                          std::shared_ptr<const ColumnFrame> y);
  std::size_t dim() const override { return x_->dim(); }
  Vector apply(const Vector &v) const override;

 private:
  std::shared_ptr<const ColumnFrame> x_;
  std::shared_ptr<const ColumnFrame> y_;
};

/// Linear system on which FGMRES-GMRES(k) attains the residual bound with
/// equality: A maps v_j -> d_{j,1} -> ... -> d_{j,k-1} -> w_j and is the
/// identity on the orthogonal complement of the X columns.
struct AdversarialSystem {
  std::size_t n = 0;
  int m = 0;  ///< scripted outer steps
  int k = 0;  ///< inner GMRES iteration count
  double mu = 0.0;
  int sharp_steps = 0;
  std::shared_ptr<const ColumnFrame> x;  ///< [v_1..v_m, d_{1,1}.., .., d_{m,k-1}]
  std::shared_ptr<const ColumnFrame> y;  ///< [d_{1,1}..d_{m,1}, d_{1,2}.., w_1, ...]
  std::vector<Vector> v_list;            ///< v_1..v_{m+1}
  std::vector<Vector> w_list;            ///< w_1..w_m
  std::vector<double> fg_pred;
  std::vector<double> ff_pred;

  std::shared_ptr<LinearOperator> make_operator() const;
  /// Explicit materialization I + (Y - X) X^*; guarded to n <= max_dim.
  DenseMatrix dense(std::size_t max_dim = 500) const;
  CsrMatrix to_csr(std::size_t max_dim = 500) const;
};

/// Build the worst-case system for mu <= 1/2. Requires n >= m k + 1 and a
/// nonzero right-hand side. Invertibility is spot-checked on seeded probes.
AdversarialSystem build_adversarial_operator(const Vector &b, double mu, int m, int k,
                                             std::size_t n,
                                             std::uint64_t probe_seed = 20260808);

/// Same construction for 1/2 < mu < 1: sharp through the stalling index m*,
/// then scripted so the FGMRES residual stops decreasing instead of
/// converging on the identity completion.
AdversarialSystem build_stagnating_system(const Vector &b, double mu, int m, int k,
                                          std::size_t n,
                                          std::uint64_t probe_seed = 20260808);

/// max_j | fg_j/fg_0 - bound(mu, j) | / bound(mu, j) over steps with a
/// defined bound.
double verify_sharpness(const SolveTrace &trace, double mu);

/// Binary frame dump (X, Y, w_list and companions) for exact re-loading.
void write_frame_dump(const AdversarialSystem &sys, const std::string &path);
AdversarialSystem read_frame_dump(const std::string &path);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_ADVERSARIAL_HPP
