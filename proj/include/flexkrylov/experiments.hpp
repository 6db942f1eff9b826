// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_EXPERIMENTS_HPP
#define FLEXKRYLOV_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flexkrylov/solver.hpp"
#include "flexkrylov/trace_io.hpp"

namespace flexkrylov {

struct ExperimentConfig {
  double mu = 0.5;
  int outer = 20;   ///< outer iterations m
  int inner = 100;  ///< inner GMRES iterations k (cap in target mode)
  std::size_t n = 2500;     ///< system dimension (grid size for generated matrices)
  double peclet = 1.0;      ///< convection strength of the generated matrix
  std::string matrix_path;  ///< Matrix Market input; empty = generate
  std::string out_path;     ///< trace file destination; empty = no file
  std::string export_matrix_path;  ///< optional Matrix Market export
  std::string dump_frames_path;    ///< optional binary frame dump
  std::uint64_t seed = 20260808;
  double rel_tolerance = 1e-8;
};

struct ExperimentResult {
  TraceRecord record;
  SolveTrace trace;
  double max_gap = 0.0;                ///< sharp: max relative gap to the bound
  std::optional<int> stall_index;      ///< stagnate: m*
  int first_flat_iteration = 0;        ///< stagnate: first iteration without decrease
  double residual_at_stall = 0.0;      ///< stagnate: fg_{m*} / fg_0
  std::string bound_kind;              ///< which bound fills the trace column
  std::vector<int> inner_counts;       ///< per-step inner iterations
  std::string summary;                 ///< human-readable result lines
};

/// Worst-case system, FGMRES-GMRES(k), bound attained with equality.
ExperimentResult run_sharp(const ExperimentConfig &cfg);

/// Same construction driven past the stalling index; the residual stops
/// decreasing instead of converging.
ExperimentResult run_stagnate(const ExperimentConfig &cfg);

/// FGMRES with a residual-targeting inner GMRES on a PDE-style matrix (file
/// or generated convection-diffusion); checks the bound from below.
ExperimentResult run_solve(const ExperimentConfig &cfg);

/// Reproduction of the two summary tables (phase rates; stalling indices).
std::string tables_text();

/// Bound series for one tolerance, one line per iteration.
std::string bound_table_text(double mu, int m);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_EXPERIMENTS_HPP
