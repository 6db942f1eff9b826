// Copyright (c) 2026 the flexkrylov authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FLEXKRYLOV_MATRIX_MARKET_HPP
#define FLEXKRYLOV_MATRIX_MARKET_HPP

#include <string>

#include "flexkrylov/csr_matrix.hpp"

namespace flexkrylov {

/// Read a square sparse matrix in Matrix Market coordinate format.
/// Fields real/integer/complex and symmetries general/symmetric/hermitian/
/// skew-symmetric are supported; symmetric storage is expanded and duplicate
/// entries are summed. Throws ParseError (with line number) on malformed
/// input and IoError when the file cannot be opened.
CsrMatrix read_matrix_market(const std::string &path);

/// Write in coordinate format, real or complex depending on the values.
/// Entries are printed with 17 significant digits so a write/read round trip
/// reproduces the values exactly.
void write_matrix_market(const std::string &path, const CsrMatrix &m);

}  // namespace flexkrylov

#endif  // FLEXKRYLOV_MATRIX_MARKET_HPP
