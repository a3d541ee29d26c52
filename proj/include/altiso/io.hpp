#pragma once

#include <iosfwd>
#include <string>

#include "altiso/tuples.hpp"

namespace altiso {

// Text format for alternating tuples:
//   altmatspace n m q
// followed by m blocks of n lines with n space-separated integers in [0, q).
// Blank lines between blocks are allowed. Parse errors carry line numbers.
AlternatingTuple read_alt_space(std::istream& in);
AlternatingTuple read_alt_space_file(const std::string& path);
void write_alt_space(std::ostream& out, const AlternatingTuple& g);
void write_alt_space_file(const std::string& path, const AlternatingTuple& g);

// Same layout for general tuples, with header "matspace s t r q" and r blocks
// of s lines with t integers.
MatrixTuple read_mat_space(std::istream& in);
void write_mat_space(std::ostream& out, const MatrixTuple& b);

std::string matrix_to_string(const Matrix& m); // rows joined by ';', entries by ' '

} // namespace altiso
