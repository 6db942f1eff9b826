// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#include "flexkrylov/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "flexkrylov/errors.hpp"

namespace flexkrylov {

namespace {

enum class Field { real, integer, complex_ };
enum class Symmetry { general, symmetric, hermitian, skew_symmetric };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

CsrMatrix read_matrix_market(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open matrix file '" + path + "'");

  long line_no = 1;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty file", line_no);

  std::istringstream banner(line);
  std::string tag, object, format, field_s, symmetry_s;
  banner >> tag >> object >> format >> field_s >> symmetry_s;
  if (tag != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", line_no);
  if (lower(object) != "matrix") throw ParseError("unsupported object '" + object + "'", line_no);
  if (lower(format) != "coordinate")
    throw ParseError("unsupported format '" + format + "' (coordinate only)", line_no);

  Field field;
  const std::string f = lower(field_s);
  if (f == "real") field = Field::real;
  else if (f == "integer") field = Field::integer;
  else if (f == "complex") field = Field::complex_;
  else throw ParseError("unsupported field '" + field_s + "'", line_no);

  Symmetry sym;
  const std::string s = lower(symmetry_s);
  if (s == "general") sym = Symmetry::general;
  else if (s == "symmetric") sym = Symmetry::symmetric;
  else if (s == "hermitian") sym = Symmetry::hermitian;
  else if (s == "skew-symmetric") sym = Symmetry::skew_symmetric;
  else throw ParseError("unsupported symmetry '" + symmetry_s + "'", line_no);

  // comments, then the size line
  long rows = -1, cols = -1, declared_nnz = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sz(line);
    if (!(sz >> rows >> cols >> declared_nnz))
      throw ParseError("malformed size line", line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != cols)
    throw ParseError("only square matrices are supported (" + std::to_string(rows) +
                         "x" + std::to_string(cols) + ")",
                     line_no);

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(declared_nnz));
  long seen = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream es(line);
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(es >> i >> j)) throw ParseError("malformed entry", line_no);
    if (field == Field::complex_) {
      if (!(es >> re >> im)) throw ParseError("expected complex pair", line_no);
    } else {
      if (!(es >> re)) throw ParseError("expected value", line_no);
    }
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("index out of range: (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")",
                       line_no);
    const std::size_t i0 = static_cast<std::size_t>(i - 1);
    const std::size_t j0 = static_cast<std::size_t>(j - 1);
    const Complex v{re, im};
    entries.push_back({i0, j0, v});
    if (i0 != j0) {
      switch (sym) {
        case Symmetry::general: break;
        case Symmetry::symmetric: entries.push_back({j0, i0, v}); break;
        case Symmetry::hermitian: entries.push_back({j0, i0, std::conj(v)}); break;
        case Symmetry::skew_symmetric: entries.push_back({j0, i0, -v}); break;
      }
    }
    ++seen;
  }
  if (declared_nnz >= 0 && seen != declared_nnz)
    throw ParseError("entry count " + std::to_string(seen) + " does not match header " +
                         std::to_string(declared_nnz),
                     line_no);

  return CsrMatrix::from_triplets(static_cast<std::size_t>(rows), std::move(entries));
}

void write_matrix_market(const std::string &path, const CsrMatrix &m) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw IoError("cannot open '" + tmp + "' for writing");
    const bool complex_field = !m.is_real();
    os << "%%MatrixMarket matrix coordinate " << (complex_field ? "complex" : "real")
       << " general\n";
    const auto entries = m.triplets();
    os << m.dim() << " " << m.dim() << " " << entries.size() << "\n";
    os << std::setprecision(17) << std::scientific;
    for (const Triplet &t : entries) {
      os << (t.row + 1) << " " << (t.col + 1) << " " << t.value.real();
      if (complex_field) os << " " << t.value.imag();
      os << "\n";
    }
    if (!os) throw IoError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace flexkrylov
