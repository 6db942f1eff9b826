// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_TRACE_IO_HPP
#define FLEXKRYLOV_TRACE_IO_HPP

#include <string>
#include <vector>

#include "flexkrylov/solver.hpp"

namespace flexkrylov {

/// One plot-ready row per outer iteration. Undefined values (FFOM at a
/// singular step, a stalled bound) are carried as NaN and rendered as the
/// "nan" token.
struct TraceRow {
  int iteration = 0;
  double fg_rel = 0.0;     ///< ||r_j^FG|| / ||r_0||
  double bound = 0.0;      ///< bound on the relative residual
  double ff_rel = 0.0;     ///< ||r_j^FF|| / ||r_0||, NaN when undefined
  double p_resnorm = 0.0;  ///< ||r_j^P||, NaN for row 0
  int inner_iterations = 0;
};

struct TraceRecord {
  std::vector<std::string> comments;  ///< header lines, written with '# '
  std::vector<TraceRow> rows;         ///< iteration indices contiguous from 0
};

/// Assemble the record for a finished solve. `bound_column` holds the bound
/// values for iterations 0..steps (NaN where the bound is not defined).
TraceRecord make_trace_record(const SolveTrace &trace,
                              const std::vector<double> &bound_column,
                              std::vector<std::string> comments);

/// Whitespace-separated columns
///   iteration  fg_rel_residual  bound  ff_rel_residual  p_residual  inner_iters
/// in full double precision. The write is atomic (temp file + rename).
void write_trace_dat(const TraceRecord &record, const std::string &path);

/// Parse a file produced by write_trace_dat; exact round trip of all values.
TraceRecord read_trace_dat(const std::string &path);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_TRACE_IO_HPP
