#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "minpres/core.hpp"
#include "minpres/errors.hpp"
#include "minpres/graded_matrix.hpp"
#include "minpres/parallel.hpp"

namespace minpres {

// Reduce column i against previously visited columns: while the pivot of i is
// registered to a smaller column, add that column. Ends registered or empty.
template <column_store Col>
void reduce_lw(graded_matrix<Col>& m, pivot_map& piv, index_t i) {
	Col& col = m.cols[static_cast<std::size_t>(i)];
	while (!col.empty()) {
		index_t j = col.pivot();
		index_t k = piv[j];
		if (k == no_index || k > i) {
			piv.set(j, i);
			return;
		}
		if (k == i) return; // already registered
		m.add_to(i, k);
	}
}

namespace detail {

// Columns grouped by y-grade; within a group they are contiguous and sorted
// by x-grade, because the matrix is in colex order.
struct y_blocks {
	std::vector<index_t> begin_of; // index of first column with this y-grade
	std::vector<index_t> end_of;

	template <column_store Col>
	static y_blocks build(const graded_matrix<Col>& m, coord_t y_max) {
		y_blocks b;
		b.begin_of.assign(static_cast<std::size_t>(y_max) + 1, no_index);
		b.end_of.assign(static_cast<std::size_t>(y_max) + 1, no_index);
		for (index_t j = 0; j < m.n_cols(); ++j) {
			auto y = static_cast<std::size_t>(m.col_grades[static_cast<std::size_t>(j)].y);
			if (b.begin_of[y] == no_index) b.begin_of[y] = j;
			b.end_of[y] = j + 1;
		}
		return b;
	}
};

template <column_store Col>
grid_dims grid_of(const graded_matrix<Col>& m) {
	grid_dims d;
	for (const grade_t& g : m.col_grades) {
		if (g.x > d.x_max) d.x_max = g.x;
		if (g.y > d.y_max) d.y_max = g.y;
	}
	return d;
}

// Assemble an output matrix from (grade, entries) snapshots, stable-sorted
// into colex order.
template <column_store Col>
graded_matrix<Col> assemble(std::vector<grade_t> row_grades, index_t n_rows,
                            std::vector<std::pair<grade_t, std::vector<index_t>>>&& snapshots) {
	std::vector<index_t> perm(snapshots.size());
	std::iota(perm.begin(), perm.end(), index_t{0});
	std::stable_sort(perm.begin(), perm.end(), [&](index_t a, index_t b) {
		return colex_compare(snapshots[static_cast<std::size_t>(a)].first,
		                     snapshots[static_cast<std::size_t>(b)].first) < 0;
	});
	graded_matrix<Col> out;
	out.row_grades = std::move(row_grades);
	out.n_rows = n_rows;
	out.col_grades.reserve(snapshots.size());
	out.cols.reserve(snapshots.size());
	for (index_t p : perm) {
		auto& [g, entries] = snapshots[static_cast<std::size_t>(p)];
		out.col_grades.push_back(g);
		Col c(n_rows);
		c.assign(entries);
		out.cols.push_back(std::move(c));
	}
	return out;
}

} // namespace detail

// Minimal graded generating set of the image of A. The grid is walked cell by
// cell in lex order; no X*Y array is materialized, but the walk itself is
// still quadratic in the grid size.
template <column_store Col>
graded_matrix<Col> min_gens_lw(graded_matrix<Col> a) {
	grid_dims dims = detail::grid_of(a);
	auto blocks = detail::y_blocks::build(a, dims.y_max);
	pivot_map piv(a.n_rows);
	std::vector<std::pair<grade_t, std::vector<index_t>>> out;

	// cursor[y]: first column of block y with x-grade >= current x
	std::vector<index_t> cursor = blocks.begin_of;
	for (coord_t x = 1; x <= dims.x_max; ++x) {
		for (coord_t y = 1; y <= dims.y_max; ++y) {
			auto yi = static_cast<std::size_t>(y);
			if (blocks.begin_of[yi] == no_index) continue;
			index_t end = blocks.end_of[yi];
			// re-reduce all columns at grades (1,y)..(x-1,y)
			while (cursor[yi] < end && a.col_grades[static_cast<std::size_t>(cursor[yi])].x < x) ++cursor[yi];
			for (index_t i = blocks.begin_of[yi]; i < cursor[yi]; ++i) reduce_lw(a, piv, i);
			// reduce the cell's own columns, keep the survivors
			index_t own_end = cursor[yi];
			while (own_end < end && a.col_grades[static_cast<std::size_t>(own_end)].x == x) ++own_end;
			for (index_t i = cursor[yi]; i < own_end; ++i) {
				reduce_lw(a, piv, i);
				if (!a.cols[static_cast<std::size_t>(i)].empty())
					out.emplace_back(grade_t{x, y}, a.cols[static_cast<std::size_t>(i)].entries());
			}
		}
	}
	return detail::assemble<Col>(std::move(a.row_grades), a.n_rows, std::move(out));
}

// Graded basis of the kernel of B via the auxiliary matrix: when a column
// dies, its auxiliary vector is a kernel element, graded by the current cell.
template <column_store Col>
graded_matrix<Col> ker_basis_lw(graded_matrix<Col> b) {
	grid_dims dims = detail::grid_of(b);
	auto blocks = detail::y_blocks::build(b, dims.y_max);
	pivot_map piv(b.n_rows);
	b.enable_aux();
	std::vector<std::pair<grade_t, std::vector<index_t>>> out;

	std::vector<grade_t> out_row_grades = b.col_grades;
	index_t out_rows = b.n_cols();

	for (coord_t x = 1; x <= dims.x_max; ++x) {
		for (coord_t y = 1; y <= dims.y_max; ++y) {
			auto yi = static_cast<std::size_t>(y);
			if (blocks.begin_of[yi] == no_index) continue;
			index_t end = blocks.end_of[yi];
			index_t upto = blocks.begin_of[yi];
			while (upto < end && b.col_grades[static_cast<std::size_t>(upto)].x <= x) ++upto;
			for (index_t i = blocks.begin_of[yi]; i < upto; ++i) {
				bool was_nonzero = !b.cols[static_cast<std::size_t>(i)].empty();
				reduce_lw(b, piv, i);
				if (was_nonzero && b.cols[static_cast<std::size_t>(i)].empty())
					out.emplace_back(grade_t{x, y}, b.aux[static_cast<std::size_t>(i)].entries());
			}
		}
	}
	return detail::assemble<Col>(std::move(out_row_grades), out_rows, std::move(out));
}

// Re-express every column of G in the kernel basis K. The pivot map is seeded
// from K's pivots; each G column must reduce to zero, and the K columns used
// along the way form the output column.
template <column_store Col>
graded_matrix<Col> reparam(const graded_matrix<Col>& g, const graded_matrix<Col>& k, unsigned threads = 1) {
	if (g.n_rows != k.n_rows) throw dimension_mismatch("generator and kernel row counts differ");

	std::vector<index_t> k_owner(static_cast<std::size_t>(k.n_rows), no_index);
	for (index_t t = 0; t < k.n_cols(); ++t) {
		index_t p = k.cols[static_cast<std::size_t>(t)].pivot();
		if (p != no_index && k_owner[static_cast<std::size_t>(p)] == no_index)
			k_owner[static_cast<std::size_t>(p)] = t;
	}

	graded_matrix<Col> out;
	out.row_grades = k.col_grades;
	out.n_rows = k.n_cols();
	out.col_grades = g.col_grades;
	out.cols.resize(static_cast<std::size_t>(g.n_cols()));

	parallel_for(g.n_cols(), threads, [&](index_t i) {
		Col work = g.cols[static_cast<std::size_t>(i)];
		std::vector<index_t> used;
		while (!work.empty()) {
			index_t j = work.pivot();
			index_t t = k_owner[static_cast<std::size_t>(j)];
			if (t == no_index)
				throw reparam_failure("generator column " + std::to_string(i) +
				                      " is not in the span of the kernel basis");
			work.add(k.cols[static_cast<std::size_t>(t)]);
			used.push_back(t);
		}
		std::sort(used.begin(), used.end());
		Col c(out.n_rows);
		c.assign(used);
		out.cols[static_cast<std::size_t>(i)] = std::move(c);
	});
	return out;
}

// Local column: empty, or the grade of its pivot row equals its own grade.
template <column_store Col>
bool is_local(const graded_matrix<Col>& m, index_t i) {
	const Col& col = m.cols[static_cast<std::size_t>(i)];
	if (col.empty()) return true;
	return m.row_grades[static_cast<std::size_t>(col.pivot())] == m.col_grades[static_cast<std::size_t>(i)];
}

template <column_store Col>
struct minimize_result {
	graded_matrix<Col> m;
	std::vector<std::pair<index_t, index_t>> removed_pairs; // (row, column), pre-removal indices
	std::vector<index_t> removed_empty_cols;
};

namespace detail {

// Drop marked rows/columns and re-index the survivors.
template <column_store Col>
graded_matrix<Col> compact(const graded_matrix<Col>& m, const std::vector<char>& row_marked,
                           const std::vector<char>& col_marked) {
	graded_matrix<Col> out;
	std::vector<index_t> row_map(static_cast<std::size_t>(m.n_rows), no_index);
	for (index_t i = 0; i < m.n_rows; ++i) {
		if (row_marked[static_cast<std::size_t>(i)]) continue;
		row_map[static_cast<std::size_t>(i)] = out.n_rows++;
		if (!m.row_grades.empty()) out.row_grades.push_back(m.row_grades[static_cast<std::size_t>(i)]);
	}
	for (index_t j = 0; j < m.n_cols(); ++j) {
		if (col_marked[static_cast<std::size_t>(j)]) continue;
		std::vector<index_t> entries;
		for (index_t e : m.cols[static_cast<std::size_t>(j)].entries()) {
			index_t r = row_map[static_cast<std::size_t>(e)];
			if (r != no_index) entries.push_back(r);
		}
		out.col_grades.push_back(m.col_grades[static_cast<std::size_t>(j)]);
		Col c(out.n_rows);
		c.assign(entries);
		out.cols.push_back(std::move(c));
	}
	return out;
}

} // namespace detail

// Scan-based minimization: every local column eliminates its pivot row from
// all columns to its right, then the pair is dropped.
template <column_store Col>
minimize_result<Col> minimize_lw(graded_matrix<Col> m) {
	index_t n = m.n_cols();
	std::vector<char> row_marked(static_cast<std::size_t>(m.n_rows), 0);
	std::vector<char> col_marked(static_cast<std::size_t>(n), 0);
	minimize_result<Col> res;

	for (index_t i = 0; i < n; ++i) {
		Col& col = m.cols[static_cast<std::size_t>(i)];
		if (col.empty()) {
			// local by convention; removable, but there is no paired row
			col_marked[static_cast<std::size_t>(i)] = 1;
			res.removed_empty_cols.push_back(i);
			continue;
		}
		if (!is_local(m, i)) continue;
		index_t j = col.pivot();
		for (index_t k = i + 1; k < n; ++k) {
			if (m.cols[static_cast<std::size_t>(k)].contains(j)) m.add_to(k, i);
		}
		col_marked[static_cast<std::size_t>(i)] = 1;
		row_marked[static_cast<std::size_t>(j)] = 1;
		res.removed_pairs.emplace_back(j, i);
	}
	res.m = detail::compact(m, row_marked, col_marked);
	return res;
}

template <column_store Col>
graded_matrix<Col> min_pres_lw(firep<Col> f) {
	graded_matrix<Col> g = min_gens_lw(std::move(f.a));
	graded_matrix<Col> k = ker_basis_lw(std::move(f.b));
	graded_matrix<Col> semi = reparam(g, k);
	return minimize_lw(std::move(semi)).m;
}

} // namespace minpres
