#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minpres/grade.hpp"
#include "minpres/plain_matrix.hpp"

namespace minpres {

// Brute-force verification by dense GF(2) elimination. Nothing here shares
// reduction code with the pipelines. Inputs are size-gated.
namespace oracle {

inline constexpr index_t size_gate = 2000; // columns

// dim V_p for the module presented pointwise by the pair (A, B):
// (#cols of B_<=p  -  rank B_<=p)  -  rank A_<=p.
index_t hilbert_of_firep(const plain_firep& f, const grade_t& p);

// dim V_p for a presentation: #rows with grade <= p  -  rank M_<=p.
index_t hilbert_of_presentation(const plain_matrix& m, const grade_t& p);

// Grades where any of the given matrices can change: occurring column grades
// plus all pairwise joins, deduplicated, in colex order.
std::vector<grade_t> query_grades(const std::vector<const plain_matrix*>& ms);

struct check_report {
	bool pass = true;
	std::string detail;
	std::optional<grade_t> first_failing_grade;
};

// K is a graded kernel basis of B: B*K = 0, columns independent, and at
// every query grade rank K_<=p equals the nullity of B_<=p.
check_report check_kernel_basis(const plain_matrix& b, const plain_matrix& k);

struct minimality_report {
	bool pass = true;
	std::optional<std::pair<index_t, index_t>> offending; // (row, column)
};

// No non-zero entry may sit at equal row and column grade.
minimality_report check_minimality(const plain_matrix& m);

// Exposed for tests: independent dense rank.
index_t dense_rank(const std::vector<std::vector<index_t>>& cols, index_t n_rows);

} // namespace oracle

} // namespace minpres
