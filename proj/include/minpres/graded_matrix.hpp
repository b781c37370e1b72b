#pragma once

#include <utility>
#include <vector>

#include "minpres/columns.hpp"
#include "minpres/errors.hpp"
#include "minpres/grade.hpp"
#include "minpres/plain_matrix.hpp"

namespace minpres {

// The computational form of a graded matrix: columns in a swappable store,
// optional auxiliary (slave) matrix mirroring every column addition so that
// B' = B*S holds throughout a reduction.
template <column_store Col>
struct graded_matrix {
	std::vector<grade_t> row_grades; // may be empty (ungraded rows)
	std::vector<grade_t> col_grades;
	std::vector<Col> cols;
	std::vector<Col> aux;
	index_t n_rows = 0;

	index_t n_cols() const { return static_cast<index_t>(cols.size()); }

	void enable_aux() {
		aux.clear();
		aux.reserve(cols.size());
		for (index_t j = 0; j < n_cols(); ++j) {
			Col c(n_cols());
			c.assign({j});
			aux.push_back(std::move(c));
		}
	}

	// cols[dst] += cols[src], mirrored on the auxiliary matrix when present.
	void add_to(index_t dst, index_t src) {
		cols[static_cast<std::size_t>(dst)].add(cols[static_cast<std::size_t>(src)]);
		if (!aux.empty()) aux[static_cast<std::size_t>(dst)].add(aux[static_cast<std::size_t>(src)]);
	}
};

template <column_store Col>
graded_matrix<Col> from_plain(const plain_matrix& p) {
	graded_matrix<Col> m;
	m.row_grades = p.row_grades;
	m.col_grades = p.col_grades;
	m.n_rows = p.n_rows;
	m.cols.reserve(p.cols.size());
	for (const auto& entries : p.cols) {
		Col c(p.n_rows);
		c.assign(entries);
		m.cols.push_back(std::move(c));
	}
	return m;
}

template <column_store Col>
plain_matrix to_plain(const graded_matrix<Col>& m) {
	plain_matrix p;
	p.row_grades = m.row_grades;
	p.col_grades = m.col_grades;
	p.n_rows = m.n_rows;
	p.cols.reserve(m.cols.size());
	for (const Col& c : m.cols) p.cols.push_back(c.entries());
	return p;
}

template <column_store Col>
struct firep {
	graded_matrix<Col> a;
	graded_matrix<Col> b;
};

template <column_store Col>
firep<Col> from_plain(const plain_firep& p) {
	return {from_plain<Col>(p.a), from_plain<Col>(p.b)};
}

template <column_store Col>
plain_firep to_plain(const firep<Col>& f) {
	return {to_plain(f.a), to_plain(f.b)};
}

// Partial map row index -> column index driving every reduction.
// piv[i] = k means column k has been visited and currently has pivot i.
struct pivot_map {
	std::vector<index_t> piv;

	explicit pivot_map(index_t n_rows = 0) : piv(static_cast<std::size_t>(n_rows), no_index) {}

	index_t operator[](index_t row) const { return piv[static_cast<std::size_t>(row)]; }
	void set(index_t row, index_t col) { piv[static_cast<std::size_t>(row)] = col; }
};

} // namespace minpres
