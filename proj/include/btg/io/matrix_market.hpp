#pragma once

#include <iosfwd>
#include <string>

#include "btg/types.hpp"

namespace btg::io {

/// Reads a Matrix Market file into a dense complex matrix. Supports the
/// coordinate and array formats, real / integer / complex fields, and the
/// general / symmetric / skew-symmetric / hermitian symmetry qualifiers.
Matrix read_matrix_market(std::istream& in, const std::string& origin = "<stream>");
Matrix read_matrix_market(const std::string& path);

/// Writes a dense matrix in array format; complex field when any entry has a
/// nonzero imaginary part, real field otherwise.
void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market(const std::string& path, const Matrix& m);

}  // namespace btg::io
