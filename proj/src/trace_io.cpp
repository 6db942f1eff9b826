// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "flexkrylov/errors.hpp"

namespace flexkrylov {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

TraceRecord make_trace_record(const SolveTrace &trace,
                              const std::vector<double> &bound_column,
                              std::vector<std::string> comments) {
  TraceRecord rec;
  rec.comments = std::move(comments);
  rec.comments.push_back(
      "columns: iteration fg_rel_residual bound ff_rel_residual p_residual inner_iters");
  rec.comments.push_back("undefined values are written as the token 'nan'");

  const double r0 = trace.r0_norm;
  const auto bound_at = [&](std::size_t j) {
    return j < bound_column.size() ? bound_column[j] : kNan;
  };

  TraceRow first;
  first.iteration = 0;
  first.fg_rel = r0 > 0.0 ? 1.0 : 0.0;
  first.bound = bound_at(0);
  first.ff_rel = first.fg_rel;  // r_0^FF = r_0
  first.p_resnorm = kNan;
  first.inner_iterations = 0;
  rec.rows.push_back(first);

  for (std::size_t j = 1; j <= trace.steps.size(); ++j) {
    const TraceStep &s = trace.steps[j - 1];
    TraceRow row;
    row.iteration = static_cast<int>(j);
    row.fg_rel = r0 > 0.0 ? s.fg_resnorm / r0 : 0.0;
    row.bound = bound_at(j);
    row.ff_rel = (s.ff_resnorm && r0 > 0.0) ? *s.ff_resnorm / r0 : kNan;
    row.p_resnorm = s.p_resnorm;
    row.inner_iterations = s.inner_iterations;
    rec.rows.push_back(row);
  }
  return rec;
}

void write_trace_dat(const TraceRecord &record, const std::string &path) {
  if (record.rows.empty()) throw std::invalid_argument("write_trace_dat: empty record");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw IoError("cannot open '" + tmp + "' for writing");
    for (const std::string &c : record.comments) os << "# " << c << "\n";
    char buf[256];
    for (const TraceRow &r : record.rows) {
      std::snprintf(buf, sizeof(buf), "%d %.17e %.17e %.17e %.17e %d", r.iteration,
                    r.fg_rel, r.bound, r.ff_rel, r.p_resnorm, r.inner_iterations);
      os << buf << "\n";
    }
    if (!os) throw IoError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

TraceRecord read_trace_dat(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  TraceRecord rec;
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      rec.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    // stream extraction of doubles rejects the "nan" token; go through strtod
    std::istringstream ss(line);
    std::string tok[6];
    if (!(ss >> tok[0] >> tok[1] >> tok[2] >> tok[3] >> tok[4] >> tok[5]))
      throw ParseError("malformed trace row", line_no);
    try {
      TraceRow r;
      r.iteration = std::stoi(tok[0]);
      r.fg_rel = std::stod(tok[1]);
      r.bound = std::stod(tok[2]);
      r.ff_rel = std::stod(tok[3]);
      r.p_resnorm = std::stod(tok[4]);
      r.inner_iterations = std::stoi(tok[5]);
      rec.rows.push_back(r);
    } catch (const std::exception &) {
      throw ParseError("malformed trace row", line_no);
    }
  }
  return rec;
}

}  // namespace flexkrylov
