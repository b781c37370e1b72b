#pragma once

#include <algorithm>
#include <cassert>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include "minpres/lw.hpp"
#include "minpres/stats.hpp"

namespace minpres {

// Instrumentation for the queued algorithms; used by tests only.
struct queue_stats {
	std::vector<grade_t> pushed_grades;                      // pushes during the run (seeding excluded)
	std::vector<grade_t> processed_grades;                   // cells in pop order, deduplicated
	std::vector<std::pair<grade_t, index_t>> popped_columns; // per-cell column pop order
	std::vector<std::pair<grade_t, grade_t>> pushes_in_context; // (cell being processed, pushed grade)
};

namespace detail {

struct queue_ctx {
	std::priority_queue<grade_t, std::vector<grade_t>, lex_greater> grades;
	std::vector<std::priority_queue<index_t, std::vector<index_t>, std::greater<index_t>>> cols_at_y;
	queue_stats* stats = nullptr;
	grade_t current{};

	void push_grade(const grade_t& g, bool seeding) {
		grades.push(g);
		if (stats && !seeding) {
			stats->pushed_grades.push_back(g);
			stats->pushes_in_context.push_back({current, g});
		}
	}
	void push_col(index_t k, coord_t y) { cols_at_y[static_cast<std::size_t>(y)].push(k); }
};

// Contiguous column ranges per grade; valid because columns are colex-sorted.
template <column_store Col>
std::vector<std::pair<grade_t, std::pair<index_t, index_t>>> grade_ranges(const graded_matrix<Col>& m) {
	std::vector<std::pair<grade_t, std::pair<index_t, index_t>>> out;
	for (index_t j = 0; j < m.n_cols();) {
		index_t e = j;
		while (e < m.n_cols() && m.col_grades[static_cast<std::size_t>(e)] == m.col_grades[static_cast<std::size_t>(j)]) ++e;
		out.push_back({m.col_grades[static_cast<std::size_t>(j)], {j, e}});
		j = e;
	}
	return out;
}

inline std::pair<index_t, index_t>
find_range(const std::vector<std::pair<grade_t, std::pair<index_t, index_t>>>& ranges, const grade_t& g) {
	auto it = std::lower_bound(ranges.begin(), ranges.end(), g, [](const auto& e, const grade_t& v) {
		return colex_compare(e.first, v) < 0;
	});
	if (it != ranges.end() && it->first == g) return it->second;
	return {0, 0};
}

} // namespace detail

// Reduction with scheduling: when the pivot is registered to a later column k,
// k is queued for the grade where it will need the update instead of being
// touched now. With local_check the reduction stops once the column stops
// being local.
template <column_store Col>
void reduce_new(graded_matrix<Col>& m, pivot_map& piv, detail::queue_ctx* ctx, index_t i,
                const grade_t& cur, bool local_check = false) {
	Col& col = m.cols[static_cast<std::size_t>(i)];
	while (!col.empty()) {
		index_t j = col.pivot();
		index_t k = piv[j];
		if (k == no_index) {
			piv.set(j, i);
			return;
		}
		if (k == i) return;
		if (k > i) {
			if (ctx) {
				coord_t y = m.col_grades[static_cast<std::size_t>(k)].y;
				ctx->push_col(k, y);
				ctx->push_grade({cur.x, y}, false);
			}
			piv.set(j, i);
			return;
		}
		if (local_check && !is_local(m, i)) return;
		m.add_to(i, k);
	}
}

namespace detail {

// Shared driver for the queued min_gens / ker_basis: pops grades in lex
// order, drains the per-y column queue, and hands each visited column to the
// callback together with the cell grade.
template <column_store Col, class Visit>
void queued_sweep(graded_matrix<Col>& m, queue_ctx& ctx, Visit&& visit) {
	auto ranges = grade_ranges(m);
	for (const grade_t& g : m.col_grades) ctx.push_grade(g, true);

	bool have_last = false;
	grade_t last{};
	while (!ctx.grades.empty()) {
		grade_t g = ctx.grades.top();
		ctx.grades.pop();
		if (have_last && g == last) continue; // duplicate push
		have_last = true;
		last = g;
		ctx.current = g;
		if (ctx.stats) ctx.stats->processed_grades.push_back(g);

		auto [cb, ce] = find_range(ranges, g);
		for (index_t j = cb; j < ce; ++j) ctx.push_col(j, g.y);

		auto& q = ctx.cols_at_y[static_cast<std::size_t>(g.y)];
		bool have_i = false;
		index_t last_i = 0;
		while (!q.empty()) {
			index_t i = q.top();
			q.pop();
			if (have_i && i == last_i) continue;
			have_i = true;
			last_i = i;
			if (ctx.stats) ctx.stats->popped_columns.push_back({g, i});
			visit(i, g);
		}
	}
}

} // namespace detail

// Queued variant of min_gens_lw; produces the same output.
template <column_store Col>
graded_matrix<Col> min_gens_new(graded_matrix<Col> a, queue_stats* stats = nullptr) {
	grid_dims dims = detail::grid_of(a);
	detail::queue_ctx ctx;
	ctx.stats = stats;
	ctx.cols_at_y.resize(static_cast<std::size_t>(dims.y_max) + 1);
	pivot_map piv(a.n_rows);
	std::vector<std::pair<grade_t, std::vector<index_t>>> out;

	detail::queued_sweep(a, ctx, [&](index_t i, const grade_t& g) {
		reduce_new(a, piv, &ctx, i, g);
		if (!a.cols[static_cast<std::size_t>(i)].empty() && a.col_grades[static_cast<std::size_t>(i)] == g)
			out.emplace_back(g, a.cols[static_cast<std::size_t>(i)].entries());
	});
	return detail::assemble<Col>(std::move(a.row_grades), a.n_rows, std::move(out));
}

// Queued variant of ker_basis_lw; produces the same output.
template <column_store Col>
graded_matrix<Col> ker_basis_new(graded_matrix<Col> b, queue_stats* stats = nullptr) {
	grid_dims dims = detail::grid_of(b);
	detail::queue_ctx ctx;
	ctx.stats = stats;
	ctx.cols_at_y.resize(static_cast<std::size_t>(dims.y_max) + 1);
	pivot_map piv(b.n_rows);
	b.enable_aux();
	std::vector<std::pair<grade_t, std::vector<index_t>>> out;

	std::vector<grade_t> out_row_grades = b.col_grades;
	index_t out_rows = b.n_cols();

	detail::queued_sweep(b, ctx, [&](index_t i, const grade_t& g) {
		bool was_nonzero = !b.cols[static_cast<std::size_t>(i)].empty();
		reduce_new(b, piv, &ctx, i, g);
		if (was_nonzero && b.cols[static_cast<std::size_t>(i)].empty())
			out.emplace_back(g, b.aux[static_cast<std::size_t>(i)].entries());
	});
	return detail::assemble<Col>(std::move(out_row_grades), out_rows, std::move(out));
}

namespace detail {

struct lazy_marks {
	std::vector<char> row_marked;
	std::vector<char> col_marked;
	std::vector<std::pair<index_t, index_t>> pairs;
	std::vector<index_t> empty_cols;
	pivot_map piv{0};
};

// Phase 1 of the lazy scheme: reduce each column only while it stays local;
// surviving local columns mark their pivot rows.
template <column_store Col>
lazy_marks lazy_mark_locals(graded_matrix<Col>& m) {
	lazy_marks res;
	res.row_marked.assign(static_cast<std::size_t>(m.n_rows), 0);
	res.col_marked.assign(static_cast<std::size_t>(m.n_cols()), 0);
	res.piv = pivot_map(m.n_rows);
	for (index_t i = 0; i < m.n_cols(); ++i) {
		reduce_new(m, res.piv, nullptr, i, m.col_grades[static_cast<std::size_t>(i)], true);
		Col& col = m.cols[static_cast<std::size_t>(i)];
		if (col.empty()) {
			res.col_marked[static_cast<std::size_t>(i)] = 1;
			res.empty_cols.push_back(i);
		} else if (is_local(m, i)) {
			index_t j = col.pivot();
			res.col_marked[static_cast<std::size_t>(i)] = 1;
			res.row_marked[static_cast<std::size_t>(j)] = 1;
			res.pairs.emplace_back(j, i);
		}
	}
	return res;
}

// Phase 2: strip marked row indices from every unmarked column, in bulk.
// Reads only marked columns and the frozen pivot map; writes disjoint columns.
template <column_store Col>
void lazy_eliminate(graded_matrix<Col>& m, const lazy_marks& marks, unsigned threads) {
	parallel_for(m.n_cols(), threads, [&](index_t i) {
		if (marks.col_marked[static_cast<std::size_t>(i)]) return;
		Col& col = m.cols[static_cast<std::size_t>(i)];
		std::vector<index_t> keep;
		while (!col.empty()) {
			index_t j = col.pivot();
			if (marks.row_marked[static_cast<std::size_t>(j)]) {
				col.add(m.cols[static_cast<std::size_t>(marks.piv[j])]);
			} else {
				col.pop_pivot();
				keep.push_back(j);
			}
		}
		std::reverse(keep.begin(), keep.end());
		col.assign(keep);
	});
}

} // namespace detail

// Two-phase minimization: mark all local pairs first, then remove the marked
// row indices from the surviving columns in bulk.
template <column_store Col>
minimize_result<Col> minimize_lazy(graded_matrix<Col> m, unsigned threads = 1) {
	detail::lazy_marks marks = detail::lazy_mark_locals(m);
	detail::lazy_eliminate(m, marks, threads);
	minimize_result<Col> res;
	res.removed_pairs = std::move(marks.pairs);
	res.removed_empty_cols = std::move(marks.empty_cols);
	res.m = detail::compact(m, marks.row_marked, marks.col_marked);
	return res;
}

// Early removal of local row/column pairs from A; the paired columns of B go
// with the rows. The module presented by the pair is unchanged.
template <column_store Col>
firep<Col> chunk(firep<Col> f, unsigned threads = 1) {
	detail::lazy_marks marks = detail::lazy_mark_locals(f.a);
	detail::lazy_eliminate(f.a, marks, threads);

	firep<Col> out;
	out.a = detail::compact(f.a, marks.row_marked, marks.col_marked);
	f.a = graded_matrix<Col>{}; // release before assembling B'

	out.b.n_rows = f.b.n_rows;
	out.b.row_grades = std::move(f.b.row_grades);
	for (index_t j = 0; j < f.b.n_cols(); ++j) {
		if (marks.row_marked[static_cast<std::size_t>(j)]) continue;
		out.b.col_grades.push_back(f.b.col_grades[static_cast<std::size_t>(j)]);
		out.b.cols.push_back(std::move(f.b.cols[static_cast<std::size_t>(j)]));
	}
	return out;
}

// Pivot-dominated min_gens columns are valid kernel elements at their pivot's
// row grade; seed them and zero the matching column of B so ker_basis skips it.
// Several generator columns can share a pivot; either one is a valid seed, so
// the first wins and later ones are dropped to keep the basis independent.
template <column_store Col>
std::vector<std::pair<grade_t, std::vector<index_t>>> apply_clearing(const graded_matrix<Col>& g,
                                                                     graded_matrix<Col>& b) {
	std::vector<std::pair<grade_t, std::vector<index_t>>> seeds;
	for (index_t j = 0; j < g.n_cols(); ++j) {
		const Col& col = g.cols[static_cast<std::size_t>(j)];
		if (col.empty()) continue;
		index_t p = col.pivot();
		if (b.cols[static_cast<std::size_t>(p)].empty()) continue; // pivot already claimed
		const grade_t& gp = g.row_grades[static_cast<std::size_t>(p)];
		std::vector<index_t> entries = col.entries();
		bool dominated = true;
		for (index_t e : entries) {
			if (!grade_leq(g.row_grades[static_cast<std::size_t>(e)], gp)) {
				dominated = false;
				break;
			}
		}
		if (!dominated) continue;
		seeds.emplace_back(gp, std::move(entries));
		b.cols[static_cast<std::size_t>(p)].clear();
	}
	return seeds;
}

struct pipeline_options {
	bool use_chunk = true;
	bool use_queues = true;
	bool use_lazy = true;
	bool use_clearing = false;
	bool parallel_mgkb = false;
	unsigned threads = 1;
};

inline void validate_options(const pipeline_options& opt) {
	if (opt.use_clearing && opt.parallel_mgkb)
		throw invalid_options("clearing requires min_gens to finish before ker_basis starts; "
		                      "it cannot run with the parallel min_gens/ker_basis tasks");
}

// Intermediate results copied out for verification; only sensible on
// oracle-sized inputs.
struct pipeline_capture {
	plain_firep input; // after chunking, the pair the rest of the run sees
	plain_matrix gens;
	plain_matrix kernel;
	plain_matrix semi; // presentation before minimization
	std::vector<std::pair<index_t, index_t>> removed_pairs;
	std::vector<grade_t> removed_pair_grades;
	bool filled = false;
};

// The full optimized pipeline. All options degrade gracefully: with every
// option off this computes exactly min_pres_lw.
template <column_store Col>
graded_matrix<Col> min_pres_fast(firep<Col> f, const pipeline_options& opt, run_stats* stats = nullptr,
                                 pipeline_capture* capture = nullptr) {
	validate_options(opt);
	stopwatch total;
	stopwatch phase;

	if (opt.use_chunk) {
		f = chunk(std::move(f), opt.threads);
		if (stats) stats->chunk_seconds = phase.lap();
	}
	if (capture) capture->input = to_plain(f);

	graded_matrix<Col> g, k;
	std::vector<std::pair<grade_t, std::vector<index_t>>> seeds;

	auto run_mg = [&](graded_matrix<Col>&& a) {
		return opt.use_queues ? min_gens_new(std::move(a)) : min_gens_lw(std::move(a));
	};
	auto run_kb = [&](graded_matrix<Col>&& b) {
		return opt.use_queues ? ker_basis_new(std::move(b)) : ker_basis_lw(std::move(b));
	};

	if (opt.parallel_mgkb && opt.threads > 1) {
		double mg_sec = 0, kb_sec = 0;
		std::thread kb_task([&] {
			stopwatch w;
			k = run_kb(std::move(f.b));
			kb_sec = w.seconds();
		});
		stopwatch w;
		g = run_mg(std::move(f.a));
		mg_sec = w.seconds();
		kb_task.join();
		if (stats) {
			stats->min_gens_seconds = mg_sec;
			stats->ker_basis_seconds = kb_sec;
		}
		phase.reset();
	} else {
		phase.reset();
		g = run_mg(std::move(f.a));
		if (stats) stats->min_gens_seconds = phase.lap();
		if (opt.use_clearing) seeds = apply_clearing(g, f.b);
		graded_matrix<Col> rest = run_kb(std::move(f.b));
		if (opt.use_clearing && !seeds.empty()) {
			std::vector<std::pair<grade_t, std::vector<index_t>>> all = std::move(seeds);
			for (index_t j = 0; j < rest.n_cols(); ++j)
				all.emplace_back(rest.col_grades[static_cast<std::size_t>(j)],
				                 rest.cols[static_cast<std::size_t>(j)].entries());
			k = detail::assemble<Col>(std::move(rest.row_grades), rest.n_rows, std::move(all));
		} else {
			k = std::move(rest);
		}
		if (stats) stats->ker_basis_seconds = phase.lap();
	}

	if (capture) {
		capture->gens = to_plain(g);
		capture->kernel = to_plain(k);
	}

	phase.reset();
	graded_matrix<Col> semi = reparam(g, k, opt.threads);
	if (stats) stats->reparam_seconds = phase.lap();
	if (capture) capture->semi = to_plain(semi);
	g = graded_matrix<Col>{};
	k = graded_matrix<Col>{};

	phase.reset();
	minimize_result<Col> minimized =
	    opt.use_lazy ? minimize_lazy(std::move(semi), opt.threads) : minimize_lw(std::move(semi));
	if (stats) {
		stats->minimize_seconds = phase.lap();
		stats->total_seconds = total.seconds();
		stats->output_rows = minimized.m.n_rows;
		stats->output_columns = minimized.m.n_cols();
	}
	if (capture) {
		capture->removed_pairs = minimized.removed_pairs;
		for (const auto& [row, col] : minimized.removed_pairs)
			capture->removed_pair_grades.push_back(capture->semi.col_grades[static_cast<std::size_t>(col)]);
		capture->filled = true;
	}
	return std::move(minimized.m);
}

} // namespace minpres
