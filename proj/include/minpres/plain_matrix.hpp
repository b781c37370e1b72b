#pragma once

#include <string>
#include <vector>

#include "minpres/grade.hpp"

namespace minpres {

// Column-major sparse GF(2) matrix with grades, the interchange form used by
// io, the oracle and the tests. row_grades may be empty when the rows carry
// no grades (the kernel-target matrix B of a firep).
struct plain_matrix {
	std::vector<grade_t> row_grades;
	std::vector<grade_t> col_grades;
	std::vector<std::vector<index_t>> cols; // ascending row indices per column
	index_t n_rows = 0;

	index_t n_cols() const { return static_cast<index_t>(cols.size()); }

	friend bool operator==(const plain_matrix&, const plain_matrix&) = default;
};

// A pair (A, B) with B*A = 0 and A's row grades equal to B's column grades.
struct plain_firep {
	plain_matrix a;
	plain_matrix b;

	friend bool operator==(const plain_firep&, const plain_firep&) = default;
};

// Original (pre-compression) grade values, one token per rank, 1-based.
struct grade_tables {
	std::vector<std::string> x_values;
	std::vector<std::string> y_values;

	const std::string& x_of(coord_t rank) const { return x_values.at(static_cast<std::size_t>(rank - 1)); }
	const std::string& y_of(coord_t rank) const { return y_values.at(static_cast<std::size_t>(rank - 1)); }
};

// A firep together with the data needed to print grades back out.
struct firep_bundle {
	plain_firep firep;
	grade_tables tables;
	std::string x_label = "x";
	std::string y_label = "y";
};

} // namespace minpres
