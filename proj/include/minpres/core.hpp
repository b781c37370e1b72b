#pragma once

#include <vector>

#include "minpres/grade.hpp"
#include "minpres/plain_matrix.hpp"

namespace minpres {

struct sort_result {
	plain_matrix m;
	std::vector<index_t> row_perm; // new index -> original index
	std::vector<index_t> col_perm;
};

// Stable colex sort of rows and columns, entries re-indexed. Validates the
// entry rule when row grades are present; throws entry_rule_violation.
sort_result sort_graded(const plain_matrix& in);

// Rows and columns with grade <= p (componentwise), relative order kept,
// entries re-indexed. Matrices without row grades keep all rows.
plain_matrix submatrix_leq(const plain_matrix& m, const grade_t& p);

// Rank over GF(2); grades are ignored.
index_t rank_gf2(const plain_matrix& m);

plain_matrix transpose(const plain_matrix& m);

// Entry-rule check without sorting; throws entry_rule_violation.
void validate_entry_rule(const plain_matrix& m);

// Sparse product check: B*A over GF(2). A's rows are B's columns.
bool product_is_zero(const plain_matrix& b, const plain_matrix& a);

// Grid extent of a matrix's column grades, assuming 1-based compressed
// coordinates.
struct grid_dims {
	coord_t x_max = 0;
	coord_t y_max = 0;
};

grid_dims grid_of(const plain_matrix& m);

// Per-coordinate rank compression of real-valued grades to 1..X / 1..Y.
// Keeps the first-seen textual token per distinct value for printing.
struct grade_compressor {
	std::vector<double> xs, ys;          // sorted unique values
	std::vector<std::string> x_tokens, y_tokens;

	void collect(double x, double y, const std::string& x_tok, const std::string& y_tok);
	void finalize();
	grade_t rank_of(double x, double y) const;
	grade_tables tables() const;

private:
	std::vector<std::pair<double, std::string>> raw_x_, raw_y_;
};

std::string format_double(double v);

} // namespace minpres
