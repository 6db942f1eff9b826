// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>

#include "flexkrylov/bounds.hpp"
#include "flexkrylov/orthogonal.hpp"

namespace flexkrylov {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Vector normalized(Vector v, double n) {
  scale(v, Complex{1.0 / n, 0.0});
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// worst-case step (the constructive core of the sharpness results)
// ---------------------------------------------------------------------------

WorstCaseStep worst_case_step(const Vector &v, std::span<const Vector> w_basis,
                              double mu) {
  if (mu < 0.0) throw std::invalid_argument("worst_case_step: mu must be >= 0");
  const std::size_t n = v.size();

  SpanSplit split = split_against_span(v, w_basis);
  WorstCaseStep out;
  out.u_norm = norm(split.perpendicular);
  const double un = out.u_norm;

  if (mu > un * (1.0 + 1e-12))
    throw InfeasibleStepError("worst_case_step: mu = " + std::to_string(mu) +
                              " exceeds the available residual component ||u|| = " +
                              std::to_string(un));

  out.y = zeros(n);
  if (un > 0.0) {
    out.alpha = (un * un - mu * mu) / un;
    const double disc = std::max(0.0, un * un - mu * mu);
    out.beta = mu / un * std::sqrt(disc);
    const Vector e1 = normalized(split.perpendicular, un);
    axpy(Complex{out.alpha, 0.0}, e1, out.y);
    if (out.beta > 0.0) {
      const std::vector<Vector> extra{e1};
      const Vector e2 = pick_orthogonal_direction(w_basis, extra, n);
      axpy(Complex{out.beta, 0.0}, e2, out.y);
    }
  }
  out.w = split.parallel;
  for (std::size_t i = 0; i < n; ++i) out.w[i] += out.y[i];

  // the constraints the proof imposes on w; failure means the construction
  // lost orthogonality
  Vector r = v;
  for (std::size_t i = 0; i < n; ++i) r[i] -= out.w[i];
  const double check_tol = 1e-10 * (1.0 + norm(out.w));
  if (std::abs(norm(r) - mu) > check_tol ||
      std::abs(dot(out.w, r)) > check_tol)
    throw NumericalError("worst_case_step: constraint verification failed");
  return out;
}

WorstCasePreconditioner::WorstCasePreconditioner(const DenseMatrix &a, double mu)
    : lu_(a), mu_(mu) {
  if (mu < 0.0 || mu > 0.5 + 1e-14)
    throw std::invalid_argument("WorstCasePreconditioner: mu must lie in [0, 1/2]");
}

PreconditionerResult WorstCasePreconditioner::apply(int, const Vector &v) {
  WorstCaseStep ws = worst_case_step(v, w_basis_, mu_);
  u_norms_.push_back(ws.u_norm);

  PreconditionerResult out;
  out.z = lu_.solve(ws.w);

  MgsResult g = mgs_orthogonalize(ws.w, w_basis_);
  if (g.h_next > 1e-12 * norm(ws.w))
    w_basis_.push_back(normalized(std::move(g.deflated), g.h_next));
  return out;
}

std::shared_ptr<Preconditioner> make_worst_case_preconditioner(const DenseMatrix &a,
                                                               double mu) {
  return std::make_shared<WorstCasePreconditioner>(a, mu);
}

// ---------------------------------------------------------------------------
// matrix-free synthesis of the worst-case run
// ---------------------------------------------------------------------------

WSequence generate_w_sequence(const Vector &b, double mu, int m, std::size_t n,
                              bool extend_stalled) {
  if (b.size() != n) throw std::invalid_argument("generate_w_sequence: length mismatch");
  if (!(mu >= 0.0 && mu < 1.0))
    throw std::invalid_argument("generate_w_sequence: mu must lie in [0, 1)");
  if (m < 1) throw std::invalid_argument("generate_w_sequence: m must be positive");
  const double beta = norm(b);
  if (beta == 0.0) throw std::invalid_argument("generate_w_sequence: b must be nonzero");

  WSequence seq;
  seq.n = n;
  seq.mu = mu;
  seq.v.push_back(normalized(b, beta));
  seq.fg_pred.push_back(beta);
  seq.ff_pred.push_back(beta);  // r_0^FF = r_0

  std::vector<Vector> w_basis;
  double omega_prev = 0.0;
  bool stalled = false;
  Vector rho;  // unit direction of the stalled residual

  for (int j = 1; j <= m; ++j) {
    const Vector &vj = seq.v.back();
    const SpanSplit split = split_against_span(vj, w_basis);
    const double un = norm(split.perpendicular);

    Vector wj;
    double fg_j = 0.0;
    double ff_j = kNan;
    bool sharp = false;

    if (!stalled && mu <= un * (1.0 + 1e-12)) {
      sharp = true;
      wj = worst_case_step(vj, w_basis, mu).w;
      const double omega_j = mu / std::sqrt(std::max(1e-300, 1.0 - omega_prev * omega_prev));
      fg_j = seq.fg_pred.back() * omega_j;
      if (omega_j < 1.0) ff_j = fg_j / std::sqrt(1.0 - omega_j * omega_j);
      omega_prev = omega_j;
    } else if (extend_stalled) {
      if (!stalled) {
        stalled = true;
        if (un > 1e-12) rho = normalized(split.perpendicular, un);
      }
      if (rho.empty()) break;  // residual direction lost at an exact threshold
      const double delta = std::sqrt(std::max(0.0, mu * mu - un * un));
      std::vector<Vector> extra;
      if (un > 1e-12) extra.push_back(normalized(split.perpendicular, un));
      extra.push_back(rho);
      const Vector e2 = pick_orthogonal_direction(w_basis, extra, n);
      wj = split.parallel;
      axpy(Complex{delta, 0.0}, e2, wj);
      fg_j = seq.fg_pred.back();
    } else {
      break;  // sequence terminates at infeasibility
    }

    MgsResult gw = mgs_orthogonalize(wj, w_basis);
    MgsResult gv = mgs_orthogonalize(wj, seq.v);
    const double w_scale = norm(wj);
    if (gw.h_next <= 1e-12 * w_scale || gv.h_next <= 1e-12 * w_scale)
      break;  // happy breakdown: w_j adds no new direction

    w_basis.push_back(normalized(std::move(gw.deflated), gw.h_next));
    seq.v.push_back(normalized(std::move(gv.deflated), gv.h_next));
    seq.w.push_back(std::move(wj));
    seq.fg_pred.push_back(fg_j);
    seq.ff_pred.push_back(ff_j);
    if (sharp) ++seq.sharp_steps;
  }

  seq.steps = static_cast<int>(seq.w.size());
  return seq;
}

// ---------------------------------------------------------------------------
// compressed column frames and the deflection operator
// ---------------------------------------------------------------------------

void ColumnFrame::append(const Vector &dense) {
  if (dense.size() != dim_) throw std::invalid_argument("ColumnFrame: length mismatch");
  std::vector<std::uint32_t> idx;
  std::vector<Complex> val;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != Complex{0.0, 0.0}) {
      idx.push_back(static_cast<std::uint32_t>(i));
      val.push_back(dense[i]);
    }
  }
  idx_.push_back(std::move(idx));
  val_.push_back(std::move(val));
}

void ColumnFrame::append_compressed(std::vector<std::uint32_t> idx,
                                    std::vector<Complex> val) {
  if (idx.size() != val.size())
    throw std::invalid_argument("ColumnFrame: index/value size mismatch");
  idx_.push_back(std::move(idx));
  val_.push_back(std::move(val));
}

Complex ColumnFrame::dot_col(std::size_t j, const Vector &x) const {
  Complex s{0.0, 0.0};
  const auto &idx = idx_[j];
  const auto &val = val_[j];
  for (std::size_t k = 0; k < idx.size(); ++k) s += std::conj(val[k]) * x[idx[k]];
  return s;
}

void ColumnFrame::axpy_col(std::size_t j, Complex a, Vector &y) const {
  const auto &idx = idx_[j];
  const auto &val = val_[j];
  for (std::size_t k = 0; k < idx.size(); ++k) y[idx[k]] += a * val[k];
}

Vector ColumnFrame::col_dense(std::size_t j) const {
  Vector v = zeros(dim_);
  axpy_col(j, Complex{1.0, 0.0}, v);
  return v;
}

DenseMatrix ColumnFrame::to_dense() const {
  DenseMatrix d(dim_, cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    const auto &idx = idx_[j];
    const auto &val = val_[j];
    for (std::size_t k = 0; k < idx.size(); ++k) d(idx[k], j) = val[k];
  }
  return d;
}

FrameDeflectionOperator::FrameDeflectionOperator(std::shared_ptr<const ColumnFrame> x,
                                                 std::shared_ptr<const ColumnFrame> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_->dim() != y_->dim() || x_->cols() != y_->cols())
    throw std::invalid_argument("FrameDeflectionOperator: frame shape mismatch");
}

Vector FrameDeflectionOperator::apply(const Vector &v) const {
  check_dim(v);
  Vector out = v;
  for (std::size_t j = 0; j < x_->cols(); ++j) {
    const Complex c = x_->dot_col(j, v);
    if (c == Complex{0.0, 0.0}) continue;
    y_->axpy_col(j, c, out);
    x_->axpy_col(j, -c, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// system assembly
// ---------------------------------------------------------------------------

namespace {

struct CompressedCol {
  std::vector<std::uint32_t> idx;
  std::vector<Complex> val;
};

// Orthonormalize canonical basis vectors against the growing frame, in index
// order. The scan pointer never moves backwards: a candidate rejected once
// only loses more mass as the frame grows. Residual bookkeeping follows the
// columns' exact sparsity so canonical frames stay cheap.
std::vector<CompressedCol> generate_d_columns(const std::vector<Vector> &v_list,
                                              int count, std::size_t n) {
  std::vector<CompressedCol> frame;
  frame.reserve(v_list.size() + static_cast<std::size_t>(count));
  for (const Vector &v : v_list) {
    CompressedCol c;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != Complex{0.0, 0.0}) {
        c.idx.push_back(static_cast<std::uint32_t>(i));
        c.val.push_back(v[i]);
      }
    }
    frame.push_back(std::move(c));
  }

  std::vector<CompressedCol> out;
  out.reserve(static_cast<std::size_t>(count));

  Vector work = zeros(n);
  std::vector<char> touched(n, 0);
  std::vector<std::uint32_t> support;

  std::size_t scan = 0;
  for (int need = 0; need < count; ++need) {
    bool found = false;
    while (scan < n && !found) {
      const std::uint32_t cand = static_cast<std::uint32_t>(scan++);
      // load e_cand
      for (const std::uint32_t i : support) {
        work[i] = Complex{0.0, 0.0};
        touched[i] = 0;
      }
      support.clear();
      work[cand] = Complex{1.0, 0.0};
      touched[cand] = 1;
      support.push_back(cand);

      for (int pass = 0; pass < 2; ++pass) {
        for (const CompressedCol &f : frame) {
          Complex c{0.0, 0.0};
          for (std::size_t k = 0; k < f.idx.size(); ++k)
            c += std::conj(f.val[k]) * work[f.idx[k]];
          if (c == Complex{0.0, 0.0}) continue;
          for (std::size_t k = 0; k < f.idx.size(); ++k) {
            const std::uint32_t i = f.idx[k];
            if (!touched[i]) {
              touched[i] = 1;
              support.push_back(i);
            }
            work[i] -= c * f.val[k];
          }
        }
      }
      double nrm2 = 0.0;
      for (const std::uint32_t i : support) nrm2 += std::norm(work[i]);
      const double nrm = std::sqrt(nrm2);
      if (nrm < 1e-8) continue;

      CompressedCol d;
      std::sort(support.begin(), support.end());
      for (const std::uint32_t i : support) {
        const Complex v = work[i] / nrm;
        if (v != Complex{0.0, 0.0}) {
          d.idx.push_back(i);
          d.val.push_back(v);
        }
      }
      out.push_back(d);
      frame.push_back(std::move(d));
      found = true;
    }
    if (!found)
      throw std::invalid_argument(
          "adversarial construction: dimension too small for the requested frame");
  }
  return out;
}

AdversarialSystem assemble_system(WSequence seq, int k, std::size_t n,
                                  std::uint64_t probe_seed) {
  const int m = seq.steps;
  if (m < 1) throw NumericalError("adversarial construction: no feasible steps");
  if (static_cast<std::size_t>(m) * static_cast<std::size_t>(k) + 1 > n)
    throw std::invalid_argument(
        "adversarial construction: dimension too small, need n >= m*k + 1");

  const int d_per = k - 1;
  const std::vector<CompressedCol> d_cols =
      generate_d_columns(seq.v, m * d_per, n);

  auto x = std::make_shared<ColumnFrame>(n);
  for (int j = 0; j < m; ++j) x->append(seq.v[static_cast<std::size_t>(j)]);
  for (const CompressedCol &d : d_cols) {
    auto idx = d.idx;
    auto val = d.val;
    x->append_compressed(std::move(idx), std::move(val));
  }

  // Y columns follow the successor rule: v_j -> d_{j,1}, d_{j,i} -> d_{j,i+1},
  // d_{j,k-1} -> w_j (and v_j -> w_j directly when k = 1).
  auto y = std::make_shared<ColumnFrame>(n);
  for (int j = 0; j < m; ++j) {
    if (d_per >= 1) {
      const CompressedCol &d = d_cols[static_cast<std::size_t>(j * d_per)];
      auto idx = d.idx;
      auto val = d.val;
      y->append_compressed(std::move(idx), std::move(val));
    } else {
      y->append(seq.w[static_cast<std::size_t>(j)]);
    }
  }
  for (int q = 0; q < m * d_per; ++q) {
    const int i0 = q % d_per;
    if (i0 + 1 < d_per) {
      const CompressedCol &d = d_cols[static_cast<std::size_t>(q + 1)];
      auto idx = d.idx;
      auto val = d.val;
      y->append_compressed(std::move(idx), std::move(val));
    } else {
      y->append(seq.w[static_cast<std::size_t>(q / d_per)]);
    }
  }

  AdversarialSystem sys;
  sys.n = n;
  sys.m = m;
  sys.k = k;
  sys.mu = seq.mu;
  sys.sharp_steps = seq.sharp_steps;
  sys.x = std::move(x);
  sys.y = std::move(y);
  sys.v_list = std::move(seq.v);
  sys.w_list = std::move(seq.w);
  sys.fg_pred = std::move(seq.fg_pred);
  sys.ff_pred = std::move(seq.ff_pred);

  // spot-check invertibility on seeded probes
  const auto op = sys.make_operator();
  std::mt19937_64 rng(probe_seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < 3; ++t) {
    Vector probe(n);
    for (Complex &p : probe) p = Complex{dist(rng), dist(rng)};
    const double pn = norm(probe);
    if (norm(op->apply(probe)) < 1e-10 * pn)
      throw NumericalError("adversarial construction: operator failed the "
                           "invertibility probe");
  }
  return sys;
}

}  // namespace

std::shared_ptr<LinearOperator> AdversarialSystem::make_operator() const {
  return std::make_shared<FrameDeflectionOperator>(x, y);
}

DenseMatrix AdversarialSystem::dense(std::size_t max_dim) const {
  if (n > max_dim)
    throw std::invalid_argument("AdversarialSystem::dense: dimension above the "
                                "materialization guard");
  DenseMatrix a = DenseMatrix::identity(n);
  for (std::size_t c = 0; c < x->cols(); ++c) {
    const auto &xi = x->col_indices(c);
    const auto &xv = x->col_values(c);
    const auto &yi = y->col_indices(c);
    const auto &yv = y->col_values(c);
    for (std::size_t q = 0; q < xi.size(); ++q) {
      const Complex cc = std::conj(xv[q]);
      for (std::size_t p = 0; p < yi.size(); ++p) a(yi[p], xi[q]) += yv[p] * cc;
      for (std::size_t p = 0; p < xi.size(); ++p) a(xi[p], xi[q]) -= xv[p] * cc;
    }
  }
  return a;
}

CsrMatrix AdversarialSystem::to_csr(std::size_t max_dim) const {
  const DenseMatrix a = dense(max_dim);
  std::vector<Triplet> entries;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, j) != Complex{0.0, 0.0}) entries.push_back({i, j, a(i, j)});
  return CsrMatrix::from_triplets(n, std::move(entries));
}

AdversarialSystem build_adversarial_operator(const Vector &b, double mu, int m, int k,
                                             std::size_t n, std::uint64_t probe_seed) {
  if (!(mu > 0.0 && mu <= 0.5 + 1e-14))
    throw std::invalid_argument("build_adversarial_operator: mu must lie in (0, 1/2]");
  if (k < 1) throw std::invalid_argument("build_adversarial_operator: k must be >= 1");
  WSequence seq = generate_w_sequence(b, mu, m, n, /*extend_stalled=*/false);
  return assemble_system(std::move(seq), k, n, probe_seed);
}

AdversarialSystem build_stagnating_system(const Vector &b, double mu, int m, int k,
                                          std::size_t n, std::uint64_t probe_seed) {
  if (!(mu > 0.5 && mu < 1.0))
    throw std::invalid_argument("build_stagnating_system: mu must lie in (1/2, 1)");
  if (k < 1) throw std::invalid_argument("build_stagnating_system: k must be >= 1");
  WSequence seq = generate_w_sequence(b, mu, m, n, /*extend_stalled=*/true);
  return assemble_system(std::move(seq), k, n, probe_seed);
}

double verify_sharpness(const SolveTrace &trace, double mu) {
  double max_gap = 0.0;
  if (trace.r0_norm == 0.0) return 0.0;
  for (std::size_t j = 1; j <= trace.steps.size(); ++j) {
    const auto bound = fgmres_bound(mu, static_cast<int>(j));
    if (!bound || *bound <= 0.0) continue;
    const double rel = trace.steps[j - 1].fg_resnorm / trace.r0_norm;
    max_gap = std::max(max_gap, std::abs(rel - *bound) / *bound);
  }
  return max_gap;
}

// ---------------------------------------------------------------------------
// binary frame dump
// ---------------------------------------------------------------------------

namespace {

constexpr char kDumpMagic[8] = {'F', 'K', 'F', 'D', '0', '0', '0', '1'};

template <typename T>
void put(std::ofstream &os, const T &v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream &is) {
  T v;
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) throw IoError("frame dump: truncated file");
  return v;
}

void put_frame(std::ofstream &os, const ColumnFrame &f) {
  put<std::uint64_t>(os, f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j) {
    const auto &idx = f.col_indices(j);
    const auto &val = f.col_values(j);
    put<std::uint64_t>(os, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      put<std::uint32_t>(os, idx[k]);
      put<double>(os, val[k].real());
      put<double>(os, val[k].imag());
    }
  }
}

std::shared_ptr<ColumnFrame> get_frame(std::ifstream &is, std::size_t n) {
  auto f = std::make_shared<ColumnFrame>(n);
  const std::uint64_t cols = get<std::uint64_t>(is);
  for (std::uint64_t j = 0; j < cols; ++j) {
    const std::uint64_t nnz = get<std::uint64_t>(is);
    std::vector<std::uint32_t> idx(nnz);
    std::vector<Complex> val(nnz);
    for (std::uint64_t k = 0; k < nnz; ++k) {
      idx[k] = get<std::uint32_t>(is);
      const double re = get<double>(is);
      const double im = get<double>(is);
      val[k] = Complex{re, im};
      if (idx[k] >= n) throw IoError("frame dump: index out of range");
    }
    f->append_compressed(std::move(idx), std::move(val));
  }
  return f;
}

void put_vectors(std::ofstream &os, const std::vector<Vector> &vs) {
  put<std::uint64_t>(os, vs.size());
  for (const Vector &v : vs) {
    put<std::uint64_t>(os, v.size());
    for (const Complex &c : v) {
      put<double>(os, c.real());
      put<double>(os, c.imag());
    }
  }
}

std::vector<Vector> get_vectors(std::ifstream &is) {
  std::vector<Vector> vs(get<std::uint64_t>(is));
  for (Vector &v : vs) {
    v.resize(get<std::uint64_t>(is));
    for (Complex &c : v) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      c = Complex{re, im};
    }
  }
  return vs;
}

void put_doubles(std::ofstream &os, const std::vector<double> &ds) {
  put<std::uint64_t>(os, ds.size());
  for (const double d : ds) put<double>(os, d);
}

std::vector<double> get_doubles(std::ifstream &is) {
  std::vector<double> ds(get<std::uint64_t>(is));
  for (double &d : ds) d = get<double>(is);
  return ds;
}

}  // namespace

void write_frame_dump(const AdversarialSystem &sys, const std::string &path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("frame dump: cannot open '" + tmp + "' for writing");
    os.write(kDumpMagic, sizeof(kDumpMagic));
    put<std::uint64_t>(os, sys.n);
    put<std::int32_t>(os, sys.m);
    put<std::int32_t>(os, sys.k);
    put<std::int32_t>(os, sys.sharp_steps);
    put<double>(os, sys.mu);
    put_frame(os, *sys.x);
    put_frame(os, *sys.y);
    put_vectors(os, sys.v_list);
    put_vectors(os, sys.w_list);
    put_doubles(os, sys.fg_pred);
    put_doubles(os, sys.ff_pred);
    if (!os) throw IoError("frame dump: write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("frame dump: cannot rename '" + tmp + "' to '" + path + "'");
}

AdversarialSystem read_frame_dump(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("frame dump: cannot open '" + path + "'");
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kDumpMagic, sizeof(magic)) != 0)
    throw IoError("frame dump: bad magic in '" + path + "'");

  AdversarialSystem sys;
  sys.n = get<std::uint64_t>(is);
  sys.m = get<std::int32_t>(is);
  sys.k = get<std::int32_t>(is);
  sys.sharp_steps = get<std::int32_t>(is);
  sys.mu = get<double>(is);
  sys.x = get_frame(is, sys.n);
  sys.y = get_frame(is, sys.n);
  sys.v_list = get_vectors(is);
  sys.w_list = get_vectors(is);
  sys.fg_pred = get_doubles(is);
  sys.ff_pred = get_doubles(is);
  return sys;
}

}  // namespace flexkrylov
