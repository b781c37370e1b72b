#pragma once

#include <istream>
#include <string>

#include "minpres/plain_matrix.hpp"

namespace minpres {

// Line-oriented text format, '#' starts a comment:
//   firep
//   <x parameter label>
//   <y parameter label>
//   t s r                 (#columns of A, #columns of B = #rows of A, #rows of B)
//   t lines  "gx gy ; i1 i2 ..."   A-columns, ascending indices into B's columns
//   s lines  "gx gy ; i1 i2 ..."   B-columns, ascending indices into B's rows
// Grades may be decimal; they are rank-compressed per coordinate and the
// original tokens are kept for output. Matrices come out colex-sorted.
// With strict set, B*A = 0 is verified as well.
firep_bundle parse_firep(std::istream& in, bool strict = false);

firep_bundle parse_firep_string(const std::string& text, bool strict = false);

// Output format:
//   minimal presentation
//   <x label>
//   <y label>
//   g r
//   g lines "gx gy"               generator grades
//   r lines "gx gy ; i1 i2 ..."   relation columns, ascending into generators
// Grades print as their original pre-compression tokens.
std::string write_presentation(const plain_matrix& m, const grade_tables& tables,
                               const std::string& x_label, const std::string& y_label);

// The inverse of parse_firep, used by the generators.
std::string write_firep(const firep_bundle& f);

} // namespace minpres
