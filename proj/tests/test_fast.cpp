#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "minpres/fast.hpp"
#include "minpres/generators.hpp"
#include "minpres/io.hpp"
#include "minpres/oracle.hpp"

using namespace minpres;
using fixtures::make_matrix;

namespace {

std::set<std::pair<coord_t, coord_t>> distinct(const std::vector<grade_t>& gs) {
	std::set<std::pair<coord_t, coord_t>> out;
	for (const grade_t& g : gs) out.insert({g.x, g.y});
	return out;
}

} // namespace

TEST_CASE("reduce_new schedules the later column instead of touching it") {
	auto m = from_plain<vector_column>(fixtures::ex1());
	pivot_map piv(m.n_rows);
	detail::queue_ctx ctx;
	ctx.cols_at_y.resize(4);
	queue_stats stats;
	ctx.stats = &stats;

	// E and F registered first, as the sweep would when processing (2,3)
	reduce_new(m, piv, &ctx, 4, {2, 3});
	reduce_new(m, piv, &ctx, 5, {2, 3});
	CHECK(stats.pushed_grades.empty());

	// C at (3,2): shares pivot 4 with the later column E
	reduce_new(m, piv, &ctx, 2, {3, 2});
	CHECK(piv[4] == 2);
	CHECK(m.cols[2].entries() == std::vector<index_t>{3, 4}); // untouched
	REQUIRE(stats.pushed_grades.size() == 1);
	CHECK(stats.pushed_grades[0] == grade_t{3, 3});
	CHECK(ctx.cols_at_y[3].top() == 4); // E waits in the queue of its own y-grade

	// a column with a fresh pivot just registers
	pivot_map piv2(m.n_rows);
	detail::queue_ctx ctx2;
	ctx2.cols_at_y.resize(4);
	reduce_new(m, piv2, &ctx2, 0, {1, 1});
	CHECK(piv2[2] == 0);
	CHECK(ctx2.grades.empty());
}

TEST_CASE("reduce_new with local_check stops once the column is not local") {
	// the 5x5 example after D was marked local: reducing E against D stops
	auto m = from_plain<vector_column>(fixtures::ex2());
	pivot_map piv(m.n_rows);
	for (index_t i = 0; i < 4; ++i) reduce_new(m, piv, nullptr, i, m.col_grades[i], true);
	reduce_new(m, piv, nullptr, 4, m.col_grades[4], true);
	CHECK(m.cols[4].entries() == std::vector<index_t>{0, 1, 2, 3}); // E = D + E
	CHECK(!is_local(m, 4));
}

TEST_CASE_TEMPLATE("queued min_gens matches the scan version on the 5x6 example", Col, vector_column,
                   heap_column, bitset_column) {
	queue_stats stats;
	plain_matrix queued = to_plain(min_gens_new(from_plain<Col>(fixtures::ex1()), &stats));
	plain_matrix scanned = to_plain(min_gens_lw(from_plain<Col>(fixtures::ex1())));
	CHECK(queued == scanned);
	// grades visited in lex order, nothing else
	CHECK(stats.processed_grades ==
	      std::vector<grade_t>{{1, 1}, {1, 3}, {2, 3}, {3, 2}, {3, 3}});
	CHECK(distinct(stats.pushed_grades) == std::set<std::pair<coord_t, coord_t>>{{3, 3}});
}

TEST_CASE("queued min_gens on a single-grade matrix visits one cell") {
	plain_matrix m = make_matrix(3, std::vector<grade_t>(3, {1, 1}),
	                             {{{2, 2}, {0, 1}}, {{2, 2}, {1, 2}}});
	queue_stats stats;
	min_gens_new(from_plain<vector_column>(m), &stats);
	CHECK(stats.processed_grades == std::vector<grade_t>{{2, 2}});
}

TEST_CASE_TEMPLATE("queued ker_basis matches the scan version on the 5x6 example", Col, vector_column,
                   heap_column, bitset_column) {
	queue_stats stats;
	plain_matrix queued = to_plain(ker_basis_new(from_plain<Col>(fixtures::ex1()), &stats));
	plain_matrix scanned = to_plain(ker_basis_lw(from_plain<Col>(fixtures::ex1())));
	CHECK(queued == scanned);
	REQUIRE(queued.n_cols() == 1);
	CHECK(queued.col_grades[0] == grade_t{3, 3});
	CHECK(queued.cols[0] == std::vector<index_t>{2, 4, 5});
	// only (3,3) is ever pushed during the run
	CHECK(distinct(stats.pushed_grades) == std::set<std::pair<coord_t, coord_t>>{{3, 3}});
	// at (3,3) the queue serves E (skipping C) and then F
	std::vector<index_t> at_33;
	for (const auto& [g, i] : stats.popped_columns)
		if (g == grade_t{3, 3}) at_33.push_back(i);
	CHECK(at_33 == std::vector<index_t>{4, 5});
}

TEST_CASE("queued ker_basis of an injective matrix stays silent") {
	plain_matrix id = make_matrix(2, std::vector<grade_t>(2, {1, 1}),
	                              {{{1, 1}, {0}}, {{2, 1}, {1}}});
	queue_stats stats;
	plain_matrix k = to_plain(ker_basis_new(from_plain<vector_column>(id), &stats));
	CHECK(k.n_cols() == 0);
	CHECK(stats.pushed_grades.empty());
}

TEST_CASE("pushed grades never precede the cell being processed") {
	for (std::uint64_t seed = 1; seed <= 30; ++seed) {
		firep_bundle bundle = gen_random_firep(5 + seed % 3, 0.6, 4, seed * 7);
		queue_stats mg_stats, kb_stats;
		min_gens_new(from_plain<vector_column>(bundle.firep.a), &mg_stats);
		ker_basis_new(from_plain<vector_column>(bundle.firep.b), &kb_stats);
		for (const auto* stats : {&mg_stats, &kb_stats}) {
			for (const auto& [cell, pushed] : stats->pushes_in_context) {
				// lex-greater except for same-cell re-pushes, which dedup drops
				CHECK(lex_compare(pushed, cell) >= 0);
				if (pushed.y != cell.y) CHECK(lex_compare(pushed, cell) > 0);
			}
			// processed cells come out in strictly increasing lex order
			for (std::size_t i = 1; i < stats->processed_grades.size(); ++i)
				CHECK(lex_compare(stats->processed_grades[i - 1], stats->processed_grades[i]) < 0);
		}
	}
}

TEST_CASE("queue equivalence on seeded random inputs") {
	int count = 0;
	for (unsigned n = 4; n <= 7; ++n) {
		for (std::uint64_t seed = 1; seed <= 13; ++seed) {
			firep_bundle bundle = gen_random_firep(n, 0.3 + 0.1 * (seed % 6), 4, seed * 31 + n);
			plain_matrix a = bundle.firep.a;
			plain_matrix b = bundle.firep.b;
			CHECK(to_plain(min_gens_new(from_plain<vector_column>(a))) ==
			      to_plain(min_gens_lw(from_plain<vector_column>(a))));
			CHECK(to_plain(ker_basis_new(from_plain<vector_column>(b))) ==
			      to_plain(ker_basis_lw(from_plain<vector_column>(b))));
			++count;
		}
	}
	CHECK(count >= 50);
}

TEST_CASE_TEMPLATE("lazy minimization reproduces the scan result on the 5x5 example", Col, vector_column,
                   heap_column, bitset_column) {
	auto lazy = minimize_lazy(from_plain<Col>(fixtures::ex2()));
	auto scan = minimize_lw(from_plain<Col>(fixtures::ex2()));
	CHECK(lazy.removed_pairs ==
	      std::vector<std::pair<index_t, index_t>>{{2, 0}, {3, 2}, {4, 3}}); // (U,A), (V,C), (W,D)
	CHECK(to_plain(lazy.m) == to_plain(scan.m));
	plain_matrix m = to_plain(lazy.m);
	CHECK(m.cols[0] == std::vector<index_t>{0, 1}); // B = {S, T}
	CHECK(m.cols[1] == std::vector<index_t>{0});    // E = {S}
}

TEST_CASE("lazy minimization phase 1 sets E to D + E before phase 2 rewrites it") {
	auto m = from_plain<vector_column>(fixtures::ex2());
	auto marks = detail::lazy_mark_locals(m);
	CHECK(m.cols[4].entries() == std::vector<index_t>{0, 1, 2, 3});
	CHECK(marks.pairs == std::vector<std::pair<index_t, index_t>>{{2, 0}, {3, 2}, {4, 3}});
}

TEST_CASE("lazy minimization without local columns returns the input") {
	plain_matrix m = make_matrix(2, {{1, 1}, {1, 2}}, {{{2, 1}, {0}}, {{2, 2}, {0, 1}}});
	auto res = minimize_lazy(from_plain<vector_column>(m));
	CHECK(to_plain(res.m) == m);
}

TEST_CASE("lazy and scan minimization agree on grade multisets for random semi-minimal inputs") {
	int count = 0;
	for (unsigned n = 4; n <= 7; ++n) {
		for (std::uint64_t seed = 1; seed <= 13; ++seed) {
			firep_bundle bundle = gen_random_firep(n, 0.5, 3, seed * 77 + n);
			auto g = min_gens_new(from_plain<vector_column>(bundle.firep.a));
			auto k = ker_basis_new(from_plain<vector_column>(bundle.firep.b));
			auto semi = reparam(g, k);
			auto lazy = minimize_lazy(semi);
			auto scan = minimize_lw(semi);
			auto sorted_grades = [](std::vector<grade_t> gs) {
				std::sort(gs.begin(), gs.end(), colex_less{});
				return gs;
			};
			CHECK(sorted_grades(to_plain(lazy.m).row_grades) == sorted_grades(to_plain(scan.m).row_grades));
			CHECK(sorted_grades(to_plain(lazy.m).col_grades) == sorted_grades(to_plain(scan.m).col_grades));
			++count;
		}
	}
	CHECK(count >= 50);
}

TEST_CASE("chunk removes the (AC, ABC) pair from the 5-vertex complex") {
	auto f = from_plain<vector_column>(fixtures::five_vertex_complex());
	auto reduced = chunk(std::move(f));
	CHECK(reduced.a.n_rows == 6);
	CHECK(reduced.a.n_cols() == 1);
	CHECK(reduced.b.n_rows == 5);
	CHECK(reduced.b.n_cols() == 6);
	// the module is unchanged pointwise
	plain_firep before = fixtures::five_vertex_complex();
	plain_firep after = to_plain(reduced);
	for (const grade_t& p : oracle::query_grades({&before.a, &before.b}))
		CHECK(oracle::hilbert_of_firep(before, p) == oracle::hilbert_of_firep(after, p));
}

TEST_CASE("chunk leaves a pair without local columns alone") {
	plain_firep f;
	f.b = make_matrix(2, {}, {{{1, 1}, {0, 1}}, {{2, 1}, {0, 1}}});
	f.b.n_rows = 2;
	f.a = make_matrix(2, f.b.col_grades, {{{2, 2}, {0, 1}}});
	auto out = to_plain(chunk(from_plain<vector_column>(f)));
	CHECK(out == f);
}

TEST_CASE("chunk preserves the Hilbert function on random inputs") {
	for (std::uint64_t seed = 1; seed <= 25; ++seed) {
		firep_bundle bundle = gen_random_firep(5 + seed % 3, 0.6, 3, seed);
		plain_firep before = bundle.firep;
		plain_firep after = to_plain(chunk(from_plain<vector_column>(before)));
		for (const grade_t& p : oracle::query_grades({&before.a, &before.b}))
			CHECK(oracle::hilbert_of_firep(before, p) == oracle::hilbert_of_firep(after, p));
	}
}

TEST_CASE("clearing seeds local generator columns and zeroes the matched column") {
	// one local generator column: pivot row grade equals the column grade
	plain_matrix g = make_matrix(3, {{1, 1}, {1, 2}, {2, 2}},
	                             {{{2, 2}, {0, 2}}});
	plain_matrix b = make_matrix(2, {}, {{{1, 1}, {0}}, {{1, 2}, {1}}, {{2, 2}, {0, 1}}});
	b.n_rows = 2;
	auto gm = from_plain<vector_column>(g);
	auto bm = from_plain<vector_column>(b);
	auto seeds = apply_clearing(gm, bm);
	REQUIRE(seeds.size() == 1);
	CHECK(seeds[0].first == grade_t{2, 2});
	CHECK(seeds[0].second == std::vector<index_t>{0, 2});
	CHECK(bm.cols[2].empty());
}

TEST_CASE("clearing skips columns with an incomparable entry") {
	plain_matrix g = make_matrix(2, {{3, 1}, {1, 3}}, {{{3, 3}, {0, 1}}});
	plain_matrix b = make_matrix(2, {}, {{{3, 1}, {0}}, {{1, 3}, {1}}});
	b.n_rows = 2;
	auto gm = from_plain<vector_column>(g);
	auto bm = from_plain<vector_column>(b);
	CHECK(apply_clearing(gm, bm).empty());
	CHECK(!bm.cols[0].empty());
}

TEST_CASE("clearing yields a valid kernel basis on random inputs") {
	for (std::uint64_t seed = 1; seed <= 25; ++seed) {
		firep_bundle bundle = gen_random_firep(5 + seed % 3, 0.7, 3, seed * 13);
		auto g = min_gens_new(from_plain<vector_column>(bundle.firep.a));
		auto b = from_plain<vector_column>(bundle.firep.b);
		plain_matrix b_before = bundle.firep.b;
		auto seeds = apply_clearing(g, b);
		auto rest = ker_basis_new(std::move(b));
		std::vector<std::pair<grade_t, std::vector<index_t>>> all = seeds;
		for (index_t j = 0; j < rest.n_cols(); ++j)
			all.emplace_back(rest.col_grades[j], rest.cols[j].entries());
		auto k = detail::assemble<vector_column>(std::vector<grade_t>(b_before.col_grades), b_before.n_cols(),
		                                         std::move(all));
		auto rep = oracle::check_kernel_basis(b_before, to_plain(k));
		CHECK(rep.pass);

		// without clearing the check passes too
		auto k2 = ker_basis_new(from_plain<vector_column>(b_before));
		CHECK(oracle::check_kernel_basis(b_before, to_plain(k2)).pass);
	}
}

TEST_CASE("the full pipeline matches the baseline on the 5-vertex complex for every option set") {
	plain_firep f = fixtures::five_vertex_complex();
	plain_matrix base = to_plain(min_pres_lw(from_plain<vector_column>(f)));
	for (int mask = 0; mask < 16; ++mask) {
		pipeline_options opt;
		opt.use_chunk = mask & 1;
		opt.use_queues = mask & 2;
		opt.use_lazy = mask & 4;
		opt.use_clearing = mask & 8;
		plain_matrix out = to_plain(min_pres_fast(from_plain<vector_column>(f), opt));
		CHECK(out.row_grades == base.row_grades);
		CHECK(out.col_grades == base.col_grades);
		INFO("mask ", mask);
		CHECK(out == base);
	}
}

TEST_CASE("options all off degenerate to the baseline exactly") {
	for (std::uint64_t seed = 40; seed <= 60; ++seed) {
		firep_bundle bundle = gen_random_firep(6, 0.6, 4, seed);
		pipeline_options off{false, false, false, false, false, 1};
		plain_matrix fast = to_plain(min_pres_fast(from_plain<vector_column>(bundle.firep), off));
		plain_matrix base = to_plain(min_pres_lw(from_plain<vector_column>(bundle.firep)));
		CHECK(fast == base);
	}
}

TEST_CASE("degenerate shapes run through every option set") {
	// no relations: the kernel generators survive unpaired
	plain_firep no_a =
	    parse_firep_string("firep\nx\ny\n0 3 3\n1 1 ; 0 1\n1 2 ; 0 2\n2 1 ; 1 2\n", true).firep;
	// A present but zero rows: only empty A-columns possible
	plain_firep no_b = parse_firep_string("firep\nx\ny\n2 0 0\n1 1 ;\n2 2 ;\n", true).firep;
	// duplicate A-columns and interspersed zero columns
	plain_firep messy = parse_firep_string("firep\nx\ny\n3 3 3\n1 1 ;\n2 2 ; 0 1 2\n2 2 ; 0 1 2\n"
	                                       "1 1 ; 0 1\n1 2 ; 0 2\n2 1 ; 1 2\n",
	                                       true)
	                        .firep;
	for (const plain_firep* f : {&no_a, &no_b, &messy}) {
		plain_matrix base = to_plain(min_pres_lw(from_plain<vector_column>(*f)));
		CHECK(oracle::check_minimality(base).pass);
		for (int mask = 0; mask < 16; ++mask) {
			pipeline_options opt;
			opt.use_chunk = mask & 1;
			opt.use_queues = mask & 2;
			opt.use_lazy = mask & 4;
			opt.use_clearing = mask & 8;
			CHECK(to_plain(min_pres_fast(from_plain<vector_column>(*f), opt)) == base);
		}
	}
	// the triangle-less cycle needs one generator at the join of its edges
	plain_matrix out = to_plain(min_pres_lw(from_plain<vector_column>(no_a)));
	REQUIRE(out.n_rows == 1);
	CHECK(out.n_cols() == 0);
	CHECK(out.row_grades[0] == grade_t{2, 2});
}

TEST_CASE("clearing together with the parallel task pair is rejected") {
	pipeline_options opt;
	opt.use_clearing = true;
	opt.parallel_mgkb = true;
	CHECK_THROWS_AS(validate_options(opt), invalid_options);
}

TEST_CASE_TEMPLATE("pipeline output is identical across thread counts and column stores", Col,
                   vector_column, heap_column, bitset_column) {
	firep_bundle bundle = gen_random_firep(7, 0.7, 4, 4242);
	pipeline_options base;
	base.threads = 1;
	plain_matrix want = to_plain(min_pres_fast(from_plain<vector_column>(bundle.firep), base));
	for (unsigned threads : {1u, 2u, 4u, 8u}) {
		pipeline_options opt;
		opt.threads = threads;
		opt.parallel_mgkb = threads > 1;
		plain_matrix got = to_plain(min_pres_fast(from_plain<Col>(bundle.firep), opt));
		CHECK(got == want);
	}
}
