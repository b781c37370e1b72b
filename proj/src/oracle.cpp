#include "minpres/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "minpres/errors.hpp"

namespace minpres::oracle {

namespace {

// Dense bit matrix, one word-packed bit vector per column.
class bit_matrix {
	std::size_t words_;
	std::vector<std::vector<std::uint64_t>> cols_;

public:
	bit_matrix(index_t n_rows, index_t n_cols)
	    : words_(static_cast<std::size_t>(n_rows / 64 + 1)),
	      cols_(static_cast<std::size_t>(n_cols), std::vector<std::uint64_t>(words_, 0)) {}

	void set(index_t r, index_t c) {
		cols_[static_cast<std::size_t>(c)][static_cast<std::size_t>(r / 64)] |= std::uint64_t(1) << (r % 64);
	}

	static index_t top_bit(const std::vector<std::uint64_t>& col) {
		for (std::size_t k = col.size(); k-- > 0;)
			if (col[k] != 0)
				return static_cast<index_t>(k) * 64 + (63 - static_cast<index_t>(__builtin_clzll(col[k])));
		return no_index;
	}

	index_t rank() const {
		std::vector<std::vector<std::uint64_t>> work = cols_;
		std::vector<std::pair<index_t, std::size_t>> pivots; // (row, column-in-work)
		index_t rank = 0;
		for (std::size_t c = 0; c < work.size(); ++c) {
			index_t p = top_bit(work[c]);
			while (p != no_index) {
				auto it = std::find_if(pivots.begin(), pivots.end(),
				                       [&](const auto& pr) { return pr.first == p; });
				if (it == pivots.end()) break;
				const auto& other = work[it->second];
				for (std::size_t w = 0; w < words_; ++w) work[c][w] ^= other[w];
				p = top_bit(work[c]);
			}
			if (p != no_index) {
				pivots.emplace_back(p, c);
				++rank;
			}
		}
		return rank;
	}
};

void gate(index_t n_cols) {
	if (n_cols > size_gate)
		throw too_large_error("oracle refuses matrices with more than " + std::to_string(size_gate) +
		                      " columns (got " + std::to_string(n_cols) + ")");
}

// Only the columns with grade <= p matter: rows above p are zero on them by
// the entry rule, so row restriction cannot change the rank.
bit_matrix cols_leq(const plain_matrix& m, const grade_t& p, index_t& n_kept) {
	gate(m.n_cols());
	std::vector<index_t> kept;
	for (index_t j = 0; j < m.n_cols(); ++j)
		if (grade_leq(m.col_grades[static_cast<std::size_t>(j)], p)) kept.push_back(j);
	n_kept = static_cast<index_t>(kept.size());
	bit_matrix bm(m.n_rows, n_kept);
	for (index_t c = 0; c < n_kept; ++c)
		for (index_t r : m.cols[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])]) bm.set(r, c);
	return bm;
}

} // namespace

index_t dense_rank(const std::vector<std::vector<index_t>>& cols, index_t n_rows) {
	bit_matrix bm(n_rows, static_cast<index_t>(cols.size()));
	for (index_t c = 0; c < cols.size(); ++c)
		for (index_t r : cols[static_cast<std::size_t>(c)]) bm.set(r, c);
	return bm.rank();
}

index_t hilbert_of_firep(const plain_firep& f, const grade_t& p) {
	index_t b_cols = 0, a_cols = 0;
	index_t rank_b = cols_leq(f.b, p, b_cols).rank();
	index_t rank_a = cols_leq(f.a, p, a_cols).rank();
	return (b_cols - rank_b) - rank_a;
}

index_t hilbert_of_presentation(const plain_matrix& m, const grade_t& p) {
	index_t rows = 0;
	for (const grade_t& g : m.row_grades)
		if (grade_leq(g, p)) ++rows;
	index_t cols = 0;
	index_t r = cols_leq(m, p, cols).rank();
	return rows - r;
}

std::vector<grade_t> query_grades(const std::vector<const plain_matrix*>& ms) {
	std::vector<grade_t> occ;
	for (const plain_matrix* m : ms)
		occ.insert(occ.end(), m->col_grades.begin(), m->col_grades.end());
	std::sort(occ.begin(), occ.end(), colex_less{});
	occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
	std::vector<grade_t> out = occ;
	for (std::size_t i = 0; i < occ.size(); ++i)
		for (std::size_t j = i + 1; j < occ.size(); ++j) out.push_back(grade_join(occ[i], occ[j]));
	std::sort(out.begin(), out.end(), colex_less{});
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

check_report check_kernel_basis(const plain_matrix& b, const plain_matrix& k) {
	if (k.n_rows != b.n_cols())
		throw dimension_mismatch("kernel row count " + std::to_string(k.n_rows) +
		                         " does not match column count " + std::to_string(b.n_cols()));
	gate(b.n_cols());
	gate(k.n_cols());
	check_report rep;

	// B*K = 0
	std::vector<char> acc(static_cast<std::size_t>(b.n_rows), 0);
	for (index_t j = 0; j < k.n_cols(); ++j) {
		std::fill(acc.begin(), acc.end(), 0);
		for (index_t bc : k.cols[static_cast<std::size_t>(j)])
			for (index_t r : b.cols[static_cast<std::size_t>(bc)]) acc[static_cast<std::size_t>(r)] ^= 1;
		if (std::find(acc.begin(), acc.end(), char(1)) != acc.end()) {
			rep.pass = false;
			rep.detail = "B*K != 0 at kernel column " + std::to_string(j);
			return rep;
		}
	}

	// independence
	if (dense_rank(k.cols, k.n_rows) != k.n_cols()) {
		rep.pass = false;
		rep.detail = "kernel columns are linearly dependent";
		return rep;
	}

	// graded nullity at every query grade
	for (const grade_t& p : query_grades({&b, &k})) {
		index_t b_cols = 0, k_cols = 0;
		index_t rank_b = cols_leq(b, p, b_cols).rank();
		index_t rank_k = cols_leq(k, p, k_cols).rank();
		if (rank_k != b_cols - rank_b) {
			rep.pass = false;
			rep.first_failing_grade = p;
			std::ostringstream os;
			os << "at grade " << p << ": rank K = " << rank_k << " but nullity B = " << (b_cols - rank_b);
			rep.detail = os.str();
			return rep;
		}
	}
	return rep;
}

minimality_report check_minimality(const plain_matrix& m) {
	minimality_report rep;
	for (index_t j = 0; j < m.n_cols(); ++j) {
		const auto& col = m.cols[static_cast<std::size_t>(j)];
		// descending, so a violating pivot is reported as the pair
		for (auto it = col.rbegin(); it != col.rend(); ++it) {
			if (m.row_grades.at(static_cast<std::size_t>(*it)) == m.col_grades[static_cast<std::size_t>(j)]) {
				rep.pass = false;
				rep.offending = {*it, j};
				return rep;
			}
		}
	}
	return rep;
}

} // namespace minpres::oracle
