// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_ERRORS_HPP
#define FLEXKRYLOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flexkrylov {

/// Numerical failure: breakdown without convergence, singular solves,
/// non-finite values from a preconditioner, infeasible constructions.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

/// File system and format failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

/// Malformed input file; carries a 1-based line number when known.
class ParseError : public IoError {
 public:
  ParseError(const std::string &what, long line)
      : IoError(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_ERRORS_HPP
