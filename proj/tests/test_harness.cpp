// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "flexkrylov/bounds.hpp"
#include "flexkrylov/convdiff.hpp"
#include "flexkrylov/errors.hpp"
#include "flexkrylov/experiments.hpp"
#include "flexkrylov/matrix_market.hpp"
#include "flexkrylov/trace_io.hpp"
#include "helpers.hpp"

using namespace flexkrylov;
using namespace testing_support;

namespace {

struct TempFile {
  explicit TempFile(std::string name) : path(std::move(name)) {}
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
};

void write_text(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::trunc);
  os << text;
}

}  // namespace

TEST_CASE("matrix market: minimal file") {
  TempFile f("mm_minimal.mtx");
  write_text(f.path,
             "%%MatrixMarket matrix coordinate real general\n"
             "1 1 1\n"
             "1 1 2.5\n");
  const CsrMatrix m = read_matrix_market(f.path);
  CHECK(m.dim() == 1);
  CHECK(m.nnz() == 1);
  CHECK(m.to_dense()(0, 0) == Complex{2.5, 0.0});
}

TEST_CASE("matrix market: symmetric storage is expanded") {
  TempFile f("mm_sym.mtx");
  write_text(f.path,
             "%%MatrixMarket matrix coordinate real symmetric\n"
             "% a comment line\n"
             "3 3 2\n"
             "2 1 -4.0\n"
             "3 3 1.0\n");
  const CsrMatrix m = read_matrix_market(f.path);
  CHECK(m.nnz() == 3);  // both (2,1) and (1,2), plus the diagonal entry
  const DenseMatrix d = m.to_dense();
  CHECK(d(1, 0) == Complex{-4.0, 0.0});
  CHECK(d(0, 1) == Complex{-4.0, 0.0});
  CHECK(d(2, 2) == Complex{1.0, 0.0});
}

TEST_CASE("matrix market: hermitian expansion conjugates, complex field parses") {
  TempFile f("mm_herm.mtx");
  write_text(f.path,
             "%%MatrixMarket matrix coordinate complex hermitian\n"
             "2 2 2\n"
             "1 1 3.0 0.0\n"
             "2 1 1.0 -2.0\n");
  const CsrMatrix m = read_matrix_market(f.path);
  const DenseMatrix d = m.to_dense();
  CHECK(d(1, 0) == Complex{1.0, -2.0});
  CHECK(d(0, 1) == Complex{1.0, 2.0});
}

TEST_CASE("matrix market: duplicates are summed") {
  TempFile f("mm_dup.mtx");
  write_text(f.path,
             "%%MatrixMarket matrix coordinate real general\n"
             "2 2 3\n"
             "1 1 1.5\n"
             "1 1 2.5\n"
             "2 2 1.0\n");
  const CsrMatrix m = read_matrix_market(f.path);
  CHECK(m.nnz() == 2);
  CHECK(m.to_dense()(0, 0) == Complex{4.0, 0.0});
}

TEST_CASE("matrix market: write/read round trip preserves values exactly") {
  std::mt19937_64 rng(71);
  for (const bool make_complex : {false, true}) {
    CsrMatrix original = random_sparse(rng, 9, 0.25);
    if (!make_complex) {
      // strip imaginary parts to exercise the real writer path
      std::vector<Triplet> entries = original.triplets();
      for (Triplet &t : entries) t.value = Complex{t.value.real(), 0.0};
      original = CsrMatrix::from_triplets(9, std::move(entries));
    }
    TempFile f(make_complex ? "mm_rt_c.mtx" : "mm_rt_r.mtx");
    write_matrix_market(f.path, original);
    const CsrMatrix loaded = read_matrix_market(f.path);
    REQUIRE(loaded.nnz() == original.nnz());
    CHECK(loaded.to_dense().max_abs_diff(original.to_dense()) == 0.0);
  }
}

TEST_CASE("matrix market: malformed inputs carry line numbers") {
  TempFile bad_banner("mm_bad1.mtx");
  write_text(bad_banner.path, "%%NotMatrixMarket nothing\n1 1 1\n1 1 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(bad_banner.path), ParseError);

  TempFile bad_index("mm_bad2.mtx");
  write_text(bad_index.path,
             "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
  try {
    read_matrix_market(bad_index.path);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }

  TempFile rect("mm_bad3.mtx");
  write_text(rect.path,
             "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(rect.path), ParseError);

  TempFile pattern("mm_bad4.mtx");
  write_text(pattern.path,
             "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n");
  CHECK_THROWS_AS(read_matrix_market(pattern.path), ParseError);

  TempFile missing_count("mm_bad5.mtx");
  write_text(missing_count.path,
             "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(missing_count.path), ParseError);

  CHECK_THROWS_AS(read_matrix_market("no_such_file.mtx"), IoError);
}

TEST_CASE("convdiff: pure diffusion is symmetric, convection is not") {
  const CsrMatrix diffusion = generate_convdiff(5, 0.0);
  CHECK(diffusion.is_symmetric());
  CHECK(diffusion.is_real());

  const CsrMatrix convection = generate_convdiff(5, 2.0);
  CHECK_FALSE(convection.is_symmetric());
}

TEST_CASE("convdiff: hand-assembled 2x2 grid") {
  const double p = 0.5;
  const CsrMatrix m = generate_convdiff(2, p);
  REQUIRE(m.dim() == 4);
  const DenseMatrix d = m.to_dense();
  for (std::size_t g = 0; g < 4; ++g)
    CHECK(d(g, g) == Complex{4.0 + 2.0 * p, 0.0});
  // node 0 = (0,0): east neighbor 1, north neighbor 2
  CHECK(d(0, 1) == Complex{-1.0, 0.0});
  CHECK(d(0, 2) == Complex{-1.0, 0.0});
  // node 3 = (1,1): west neighbor 2, south neighbor 1 carry the upwind weight
  CHECK(d(3, 2) == Complex{-1.0 - p, 0.0});
  CHECK(d(3, 1) == Complex{-1.0 - p, 0.0});
}

TEST_CASE("convdiff: interior rows sum to zero for every peclet") {
  for (const double p : {0.0, 1.0, 7.5}) {
    const CsrMatrix m = generate_convdiff(6, p);
    const DenseMatrix d = m.to_dense();
    for (std::size_t iy = 1; iy < 5; ++iy) {
      for (std::size_t ix = 1; ix < 5; ++ix) {
        const std::size_t g = iy * 6 + ix;
        Complex row_sum{0.0, 0.0};
        for (std::size_t j = 0; j < 36; ++j) row_sum += d(g, j);
        CHECK(std::abs(row_sum) <= 1e-14);
      }
    }
  }
}

TEST_CASE("trace file: single-row record, nan token, exact round trip") {
  SolveTrace trace;
  trace.r0_norm = 2.0;
  TraceStep s;
  s.fg_resnorm = 0.5;
  s.ff_resnorm = std::nullopt;  // undefined: becomes the nan token
  s.p_resnorm = 0.25;
  s.inner_iterations = 3;
  trace.steps.push_back(s);

  const TraceRecord rec = make_trace_record(trace, {1.0, 0.3}, {"unit test"});
  REQUIRE(rec.rows.size() == 2);
  CHECK(rec.rows[0].fg_rel == 1.0);
  CHECK(rec.rows[1].fg_rel == 0.25);
  CHECK(std::isnan(rec.rows[1].ff_rel));

  TempFile f("trace_rt.dat");
  write_trace_dat(rec, f.path);
  {
    std::ifstream is(f.path);
    std::string first;
    std::getline(is, first);
    CHECK(first.rfind("# ", 0) == 0);
  }
  const TraceRecord loaded = read_trace_dat(f.path);
  REQUIRE(loaded.rows.size() == rec.rows.size());
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    CHECK(loaded.rows[i].iteration == rec.rows[i].iteration);
    CHECK((loaded.rows[i].fg_rel == rec.rows[i].fg_rel));
    CHECK((loaded.rows[i].bound == rec.rows[i].bound ||
           (std::isnan(loaded.rows[i].bound) && std::isnan(rec.rows[i].bound))));
    CHECK((loaded.rows[i].ff_rel == rec.rows[i].ff_rel ||
           (std::isnan(loaded.rows[i].ff_rel) && std::isnan(rec.rows[i].ff_rel))));
    CHECK(loaded.rows[i].inner_iterations == rec.rows[i].inner_iterations);
  }
  CHECK_THROWS_AS(write_trace_dat(TraceRecord{}, "x.dat"), std::invalid_argument);
}

TEST_CASE("run_sharp: reduced scales attain the bound") {
  ExperimentConfig small;
  small.mu = 0.5;
  small.outer = 5;
  small.inner = 3;
  small.n = 20;
  small.out_path.clear();
  const ExperimentResult res = run_sharp(small);
  CHECK(res.max_gap <= 1e-10);

  ExperimentConfig quarter;
  quarter.mu = 0.25;
  quarter.outer = 12;
  quarter.inner = 4;
  quarter.n = 60;
  quarter.out_path.clear();
  const ExperimentResult qres = run_sharp(quarter);
  CHECK(qres.max_gap <= 1e-9);
  const double final_rel = qres.record.rows.back().fg_rel;
  CHECK(rel_diff(final_rel, *fgmres_bound(0.25, 12)) <= 1e-8);
}

TEST_CASE("run_sharp: emitted bound column reproduces the series bit for bit") {
  TempFile f("sharp_unit.dat");
  ExperimentConfig cfg;
  cfg.mu = 0.5;
  cfg.outer = 6;
  cfg.inner = 2;
  cfg.n = 16;
  cfg.out_path = f.path;
  const ExperimentResult res = run_sharp(cfg);

  const TraceRecord loaded = read_trace_dat(f.path);
  const BoundSeries series = make_bound_series(0.5, 6);
  REQUIRE(loaded.rows.size() == 7);
  double prev = loaded.rows.front().fg_rel;
  for (std::size_t j = 0; j < loaded.rows.size(); ++j) {
    CHECK(loaded.rows[j].iteration == static_cast<int>(j));
    CHECK(loaded.rows[j].bound == series.fg_bounds[j]);  // bit-for-bit
    CHECK(loaded.rows[j].fg_rel <= prev * (1.0 + 1e-14));
    prev = loaded.rows[j].fg_rel;
  }
  CHECK(res.trace.steps.size() == 6);
}

TEST_CASE("run_sharp: deterministic given the configuration") {
  TempFile f1("sharp_det1.dat");
  TempFile f2("sharp_det2.dat");
  ExperimentConfig cfg;
  cfg.mu = 0.4;
  cfg.outer = 4;
  cfg.inner = 2;
  cfg.n = 12;
  cfg.out_path = f1.path;
  run_sharp(cfg);
  cfg.out_path = f2.path;
  run_sharp(cfg);

  std::ifstream a(f1.path), b(f2.path);
  const std::string sa((std::istreambuf_iterator<char>(a)),
                       std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)),
                       std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK_FALSE(sa.empty());
}

TEST_CASE("run_stagnate: stall index, stall residual, flat tail") {
  ExperimentConfig cfg;
  cfg.mu = 0.6;
  cfg.outer = 8;
  cfg.inner = 2;
  cfg.n = 24;
  cfg.out_path.clear();
  const ExperimentResult res = run_stagnate(cfg);
  REQUIRE(res.stall_index.has_value());
  CHECK(*res.stall_index == 3);
  CHECK(res.first_flat_iteration == 4);
  CHECK(rel_diff(res.residual_at_stall, 4.08e-1) <= 1e-2);
  for (std::size_t j = 4; j < res.record.rows.size(); ++j)
    CHECK(res.record.rows[j].fg_rel / res.record.rows[j - 1].fg_rel >= 0.99);
}

TEST_CASE("run_solve: generated matrix stays below the a priori bound") {
  ExperimentConfig cfg;
  cfg.mu = 0.1;
  cfg.outer = 15;
  cfg.inner = 200;
  cfg.n = 10;  // 100 unknowns
  cfg.out_path.clear();
  const ExperimentResult res = run_solve(cfg);
  CHECK(res.trace.status == Termination::converged);
  CHECK(res.bound_kind.rfind("a priori", 0) == 0);
  for (std::size_t j = 1; j < res.record.rows.size(); ++j) {
    const double bound = res.record.rows[j].bound;
    REQUIRE_FALSE(std::isnan(bound));
    CHECK(res.record.rows[j].fg_rel <= bound + 1e-12);
  }
}

TEST_CASE("run_solve: identity matrix file converges in one outer iteration") {
  TempFile f("identity.mtx");
  write_matrix_market(f.path, CsrMatrix::identity(12));
  ExperimentConfig cfg;
  cfg.mu = 0.1;
  cfg.matrix_path = f.path;
  cfg.out_path.clear();
  const ExperimentResult res = run_solve(cfg);
  CHECK(res.trace.status == Termination::converged);
  CHECK(res.trace.steps.size() == 1);
}

TEST_CASE("run_solve: unreachable target falls back to the a posteriori bound") {
  ExperimentConfig cfg;
  cfg.mu = 1e-4;  // far below what one inner iteration can reach
  cfg.inner = 1;
  cfg.outer = 6;
  cfg.n = 8;
  cfg.rel_tolerance = 1e-20;
  cfg.out_path.clear();
  const ExperimentResult res = run_solve(cfg);
  CHECK(res.bound_kind.rfind("a posteriori", 0) == 0);
  // the gamma product still dominates the measured residuals while valid
  for (std::size_t j = 1; j < res.record.rows.size(); ++j) {
    const double bound = res.record.rows[j].bound;
    if (std::isnan(bound)) break;
    CHECK(res.record.rows[j].fg_rel <= bound * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("run_solve: missing matrix file raises an I/O error") {
  ExperimentConfig cfg;
  cfg.matrix_path = "missing.mtx";
  CHECK_THROWS_AS(run_solve(cfg), IoError);
}

TEST_CASE("experiment configuration guards") {
  ExperimentConfig bad_sharp;
  bad_sharp.mu = 0.7;
  CHECK_THROWS_AS(run_sharp(bad_sharp), std::invalid_argument);

  ExperimentConfig bad_stagnate;
  bad_stagnate.mu = 0.4;
  CHECK_THROWS_AS(run_stagnate(bad_stagnate), std::invalid_argument);
}

TEST_CASE("tables: tabulated digits appear verbatim") {
  const std::string text = tables_text();
  CHECK(text.find("0.010000500087521") != std::string::npos);
  CHECK(text.find("0.100508962005208") != std::string::npos);
  CHECK(text.find("0.204309643689220") != std::string::npos);
  CHECK(text.find("0.316227766016838") != std::string::npos);
  CHECK(text.find("0.447213595499958") != std::string::npos);
  CHECK(text.find("0.707106781186547") != std::string::npos);
  CHECK(text.find("47") != std::string::npos);
  CHECK(text.find("6.75e-08") != std::string::npos);
  CHECK(text.find("9.34e-03") != std::string::npos);
  CHECK(text.find("1.98e-01") != std::string::npos);
  CHECK(text.find("4.08e-01") != std::string::npos);
  CHECK(text.find("8.00e-01") != std::string::npos);
  CHECK(text.find("inf") != std::string::npos);
}

TEST_CASE("bound table: renders the series with the stall marker") {
  const std::string text = bound_table_text(0.55, 8);
  CHECK(text.find("stalling index 5") != std::string::npos);
  CHECK(text.find("nan") != std::string::npos);  // fg bound past the stall
}
