#include "minpres/core.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdio>
#include <numeric>

#include "minpres/errors.hpp"

namespace minpres {

namespace {

std::vector<index_t> stable_colex_perm(const std::vector<grade_t>& grades) {
	std::vector<index_t> perm(grades.size());
	std::iota(perm.begin(), perm.end(), index_t{0});
	std::stable_sort(perm.begin(), perm.end(), [&](index_t a, index_t b) {
		return colex_compare(grades[static_cast<std::size_t>(a)], grades[static_cast<std::size_t>(b)]) < 0;
	});
	return perm;
}

std::vector<index_t> invert(const std::vector<index_t>& perm) {
	std::vector<index_t> inv(perm.size());
	for (index_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
	return inv;
}

} // namespace

void validate_entry_rule(const plain_matrix& m) {
	if (m.row_grades.empty()) return;
	for (index_t j = 0; j < m.n_cols(); ++j) {
		for (index_t i : m.cols[static_cast<std::size_t>(j)]) {
			if (!grade_leq(m.row_grades.at(static_cast<std::size_t>(i)), m.col_grades[static_cast<std::size_t>(j)]))
				throw entry_rule_violation("entry at row " + std::to_string(i) + ", column " +
				                           std::to_string(j) + " has row grade above column grade");
		}
	}
}

sort_result sort_graded(const plain_matrix& in) {
	sort_result r;
	if (in.row_grades.empty()) {
		r.row_perm.resize(static_cast<std::size_t>(in.n_rows));
		std::iota(r.row_perm.begin(), r.row_perm.end(), index_t{0});
	} else {
		r.row_perm = stable_colex_perm(in.row_grades);
	}
	r.col_perm = stable_colex_perm(in.col_grades);

	std::vector<index_t> row_inv = invert(r.row_perm);

	r.m.n_rows = in.n_rows;
	if (!in.row_grades.empty()) {
		r.m.row_grades.resize(in.row_grades.size());
		for (std::size_t i = 0; i < in.row_grades.size(); ++i)
			r.m.row_grades[i] = in.row_grades[static_cast<std::size_t>(r.row_perm[i])];
	}
	r.m.col_grades.resize(in.col_grades.size());
	r.m.cols.resize(in.cols.size());
	for (std::size_t j = 0; j < in.cols.size(); ++j) {
		index_t src = r.col_perm[j];
		r.m.col_grades[j] = in.col_grades[static_cast<std::size_t>(src)];
		std::vector<index_t> entries = in.cols[static_cast<std::size_t>(src)];
		for (index_t& e : entries) e = row_inv[static_cast<std::size_t>(e)];
		std::sort(entries.begin(), entries.end());
		r.m.cols[j] = std::move(entries);
	}
	validate_entry_rule(r.m);
	return r;
}

plain_matrix submatrix_leq(const plain_matrix& m, const grade_t& p) {
	plain_matrix out;
	std::vector<index_t> row_map(static_cast<std::size_t>(m.n_rows), no_index);
	if (m.row_grades.empty()) {
		out.n_rows = m.n_rows;
		for (index_t i = 0; i < m.n_rows; ++i) row_map[static_cast<std::size_t>(i)] = i;
	} else {
		for (index_t i = 0; i < m.n_rows; ++i) {
			if (grade_leq(m.row_grades[static_cast<std::size_t>(i)], p)) {
				row_map[static_cast<std::size_t>(i)] = out.n_rows++;
				out.row_grades.push_back(m.row_grades[static_cast<std::size_t>(i)]);
			}
		}
	}
	for (index_t j = 0; j < m.n_cols(); ++j) {
		if (!grade_leq(m.col_grades[static_cast<std::size_t>(j)], p)) continue;
		std::vector<index_t> entries;
		for (index_t i : m.cols[static_cast<std::size_t>(j)]) {
			index_t r = row_map[static_cast<std::size_t>(i)];
			if (r != no_index) entries.push_back(r);
		}
		out.col_grades.push_back(m.col_grades[static_cast<std::size_t>(j)]);
		out.cols.push_back(std::move(entries));
	}
	return out;
}

index_t rank_gf2(const plain_matrix& m) {
	// Plain column elimination with a pivot registry.
	std::vector<std::vector<index_t>> reduced;
	std::vector<index_t> owner(static_cast<std::size_t>(m.n_rows), no_index);
	index_t rank = 0;
	for (const auto& col : m.cols) {
		std::vector<index_t> cur = col;
		while (!cur.empty()) {
			index_t p = cur.back();
			index_t o = owner[static_cast<std::size_t>(p)];
			if (o == no_index) {
				owner[static_cast<std::size_t>(p)] = static_cast<index_t>(reduced.size());
				reduced.push_back(std::move(cur));
				++rank;
				break;
			}
			const auto& other = reduced[static_cast<std::size_t>(o)];
			std::vector<index_t> sum;
			sum.reserve(cur.size() + other.size());
			std::set_symmetric_difference(cur.begin(), cur.end(), other.begin(), other.end(),
			                              std::back_inserter(sum));
			cur = std::move(sum);
		}
	}
	return rank;
}

plain_matrix transpose(const plain_matrix& m) {
	plain_matrix out;
	out.n_rows = m.n_cols();
	out.row_grades = m.col_grades;
	out.col_grades = m.row_grades.empty() ? std::vector<grade_t>(static_cast<std::size_t>(m.n_rows))
	                                      : m.row_grades;
	out.cols.resize(static_cast<std::size_t>(m.n_rows));
	for (index_t j = 0; j < m.n_cols(); ++j)
		for (index_t i : m.cols[static_cast<std::size_t>(j)]) out.cols[static_cast<std::size_t>(i)].push_back(j);
	return out;
}

bool product_is_zero(const plain_matrix& b, const plain_matrix& a) {
	std::vector<char> acc(static_cast<std::size_t>(b.n_rows), 0);
	for (const auto& acol : a.cols) {
		std::fill(acc.begin(), acc.end(), 0);
		for (index_t bcol : acol)
			for (index_t r : b.cols.at(static_cast<std::size_t>(bcol))) acc[static_cast<std::size_t>(r)] ^= 1;
		for (char v : acc)
			if (v) return false;
	}
	return true;
}

grid_dims grid_of(const plain_matrix& m) {
	grid_dims d;
	for (const grade_t& g : m.col_grades) {
		if (g.x > d.x_max) d.x_max = g.x;
		if (g.y > d.y_max) d.y_max = g.y;
	}
	return d;
}

void grade_compressor::collect(double x, double y, const std::string& x_tok, const std::string& y_tok) {
	raw_x_.emplace_back(x, x_tok);
	raw_y_.emplace_back(y, y_tok);
}

void grade_compressor::finalize() {
	auto build = [](std::vector<std::pair<double, std::string>>& raw, std::vector<double>& vals,
	                std::vector<std::string>& toks) {
		std::stable_sort(raw.begin(), raw.end(),
		                 [](const auto& a, const auto& b) { return a.first < b.first; });
		vals.clear();
		toks.clear();
		for (const auto& [v, t] : raw) {
			if (vals.empty() || vals.back() != v) {
				vals.push_back(v);
				toks.push_back(t);
			}
		}
		raw.clear();
		raw.shrink_to_fit();
	};
	build(raw_x_, xs, x_tokens);
	build(raw_y_, ys, y_tokens);
}

grade_t grade_compressor::rank_of(double x, double y) const {
	auto ix = std::lower_bound(xs.begin(), xs.end(), x);
	auto iy = std::lower_bound(ys.begin(), ys.end(), y);
	assert(ix != xs.end() && *ix == x && iy != ys.end() && *iy == y);
	return {static_cast<coord_t>(ix - xs.begin()) + 1, static_cast<coord_t>(iy - ys.begin()) + 1};
}

grade_tables grade_compressor::tables() const { return {x_tokens, y_tokens}; }

std::string format_double(double v) {
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
	(void)ec;
	return std::string(buf, ptr);
}

} // namespace minpres
