#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "minpres/core.hpp"
#include "minpres/errors.hpp"
#include "minpres/fast.hpp"
#include "minpres/generators.hpp"
#include "minpres/io.hpp"
#include "minpres/lw.hpp"
#include "minpres/oracle.hpp"
#include "minpres/stats.hpp"

namespace {

using namespace minpres;

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_io = 2;
constexpr int exit_flags = 3;

struct cli_options {
	std::string input;
	std::string output;
	std::string stats_path;
	std::string column_type = "vector";
	bool no_chunk = false;
	bool no_queues = false;
	bool lw_minimize = false;
	bool clearing = false;
	bool parallel_mgkb = false;
	bool strict = false;
	bool check = false;
	bool compare_baseline = false;
	unsigned threads = 1;
};

pipeline_options to_pipeline(const cli_options& o) {
	pipeline_options p;
	p.use_chunk = !o.no_chunk;
	p.use_queues = !o.no_queues;
	p.use_lazy = !o.lw_minimize;
	p.use_clearing = o.clearing;
	p.parallel_mgkb = o.parallel_mgkb;
	p.threads = o.threads;
	return p;
}

std::multiset<std::pair<coord_t, coord_t>> grade_multiset(const std::vector<grade_t>& gs) {
	std::multiset<std::pair<coord_t, coord_t>> out;
	for (const grade_t& g : gs) out.insert({g.x, g.y});
	return out;
}

bool oracle_sized(const plain_firep& f) {
	return f.a.n_cols() <= oracle::size_gate && f.b.n_cols() <= oracle::size_gate;
}

// Hilbert match, minimality and kernel validity of one captured run.
int run_checks(const firep_bundle& input, const plain_matrix& result, const pipeline_capture& cap) {
	auto grades = oracle::query_grades({&input.firep.a, &input.firep.b});
	for (const grade_t& p : grades) {
		index_t want = oracle::hilbert_of_firep(input.firep, p);
		index_t got = oracle::hilbert_of_presentation(result, p);
		if (want != got) {
			std::cerr << "check failed: pointwise dimension at (" << p.x << "," << p.y << ") is " << got
			          << ", expected " << want << "\n";
			return exit_verification;
		}
	}
	auto min_rep = oracle::check_minimality(result);
	if (!min_rep.pass) {
		std::cerr << "check failed: output is not minimal at entry (" << min_rep.offending->first << ","
		          << min_rep.offending->second << ")\n";
		return exit_verification;
	}
	auto kernel_rep = oracle::check_kernel_basis(cap.input.b, cap.kernel);
	if (!kernel_rep.pass) {
		std::cerr << "check failed: kernel basis invalid: " << kernel_rep.detail << "\n";
		return exit_verification;
	}
	return exit_ok;
}

int run_main(const cli_options& opts) {
	std::ifstream in(opts.input);
	if (!in) {
		std::cerr << "cannot open " << opts.input << "\n";
		return exit_io;
	}
	stopwatch io_watch;
	firep_bundle bundle = parse_firep(in, opts.strict);
	run_stats stats;
	stats.io_seconds = io_watch.lap();
	stats.input_columns = bundle.firep.a.n_cols() + bundle.firep.b.n_cols();

	pipeline_options popt = to_pipeline(opts);
	validate_options(popt);

	bool want_capture = opts.check && oracle_sized(bundle.firep);
	if (opts.check && !want_capture)
		std::cerr << "note: input exceeds the oracle size gate, --check skipped\n";
	pipeline_capture cap;

	auto run_with = [&]<class col_t>(col_t, const pipeline_options& po, run_stats* st, pipeline_capture* cp) {
		auto f = from_plain<col_t>(bundle.firep);
		return to_plain(min_pres_fast(std::move(f), po, st, cp));
	};
	auto dispatch = [&](const pipeline_options& po, run_stats* st, pipeline_capture* cp) {
		if (opts.column_type == "vector") return run_with(vector_column{}, po, st, cp);
		if (opts.column_type == "heap") return run_with(heap_column{}, po, st, cp);
		if (opts.column_type == "bitset") return run_with(bitset_column{}, po, st, cp);
		throw invalid_options("unknown column type '" + opts.column_type + "'");
	};

	plain_matrix result = dispatch(popt, &stats, want_capture ? &cap : nullptr);

	io_watch.reset();
	std::string text = write_presentation(result, bundle.tables, bundle.x_label, bundle.y_label);
	if (opts.output.empty()) {
		std::cout << text;
	} else {
		std::ofstream out(opts.output);
		if (!out) {
			std::cerr << "cannot write " << opts.output << "\n";
			return exit_io;
		}
		out << text;
	}
	stats.io_seconds += io_watch.lap();
	stats.total_seconds += stats.io_seconds;
	stats.peak_memory_bytes = peak_rss_bytes();

	if (!opts.stats_path.empty()) {
		std::ofstream sf(opts.stats_path);
		if (!sf) {
			std::cerr << "cannot write " << opts.stats_path << "\n";
			return exit_io;
		}
		sf << stats_csv_header() << '\n' << stats_csv_row(opts.input, "cli", stats) << '\n';
	}

	if (want_capture) {
		int rc = run_checks(bundle, result, cap);
		if (rc != exit_ok) return rc;
	}

	if (opts.compare_baseline) {
		auto f = from_plain<vector_column>(bundle.firep);
		plain_matrix base = to_plain(min_pres_lw(std::move(f)));
		bool same = grade_multiset(base.row_grades) == grade_multiset(result.row_grades) &&
		            grade_multiset(base.col_grades) == grade_multiset(result.col_grades);
		if (same && oracle_sized(bundle.firep)) {
			for (const grade_t& p : oracle::query_grades({&bundle.firep.a, &bundle.firep.b})) {
				if (oracle::hilbert_of_presentation(base, p) != oracle::hilbert_of_presentation(result, p)) {
					same = false;
					break;
				}
			}
		}
		if (!same) {
			std::cerr << "comparison with the baseline pipeline failed\n";
			return exit_verification;
		}
	}
	return exit_ok;
}

point_cloud noisy_circle(index_t n, std::uint64_t seed, double bandwidth) {
	point_cloud cloud;
	cloud.bandwidth = bandwidth;
	std::uint64_t s = seed * 0x9e3779b97f4a7c15ull + 0x5851f42d4c957f2dull;
	auto next = [&s]() {
		s ^= s << 13;
		s ^= s >> 7;
		s ^= s << 17;
		return s;
	};
	auto unit = [&]() { return static_cast<double>(next() >> 11) * 0x1.0p-53; };
	for (index_t i = 0; i < n; ++i) {
		double t = 2 * 3.14159265358979323846 * unit();
		double r = 1.0 + 0.1 * (unit() - 0.5);
		cloud.points.push_back({r * std::cos(t), r * std::sin(t), 0.0});
	}
	return cloud;
}

firep_bundle make_instance(const std::string& family, index_t size, std::uint64_t seed) {
	if (family == "lower-star") return gen_lower_star(make_strip_mesh(size, seed));
	if (family == "rips") return gen_function_rips(noisy_circle(size, seed, 0.5));
	if (family == "random") return gen_random_firep(static_cast<unsigned>(size), 0.6, 4, seed);
	throw invalid_options("unknown family '" + family + "'");
}

struct bench_variant {
	std::string name;
	pipeline_options opt;
};

std::vector<bench_variant> bench_variants(const std::vector<std::string>& names, unsigned threads) {
	std::vector<bench_variant> out;
	for (const std::string& n : names) {
		pipeline_options o;
		if (n == "baseline") {
			o = {false, false, false, false, false, 1};
		} else if (n == "queue_lazy") {
			o = {false, true, true, false, false, 1};
		} else if (n == "chunk") {
			o = {true, true, true, false, false, 1};
		} else if (n == "parfor") {
			o = {true, true, true, false, false, threads > 0 ? threads : 2};
		} else if (n == "clearing") {
			o = {true, true, true, true, false, 1};
		} else {
			throw invalid_options("unknown variant '" + n + "'");
		}
		out.push_back({n, o});
	}
	return out;
}

int run_bench(const std::string& family, const std::vector<index_t>& sizes,
              const std::vector<std::string>& variant_names, unsigned reps, unsigned threads,
              const std::string& out_path) {
	if (reps == 0) reps = 1;
	std::ostringstream csv;
	csv << stats_csv_header() << '\n';
	auto variants = bench_variants(variant_names, threads);
	for (index_t size : sizes) {
		for (const auto& variant : variants) {
			run_stats avg;
			for (unsigned rep = 0; rep < reps; ++rep) {
				stopwatch gen_watch;
				firep_bundle inst = make_instance(family, size, 1000 + rep);
				run_stats one;
				one.io_seconds = gen_watch.lap();
				one.input_columns = inst.firep.a.n_cols() + inst.firep.b.n_cols();
				auto f = from_plain<vector_column>(inst.firep);
				min_pres_fast(std::move(f), variant.opt, &one, nullptr);
				one.total_seconds += one.io_seconds;
				avg.io_seconds += one.io_seconds;
				avg.chunk_seconds += one.chunk_seconds;
				avg.min_gens_seconds += one.min_gens_seconds;
				avg.ker_basis_seconds += one.ker_basis_seconds;
				avg.reparam_seconds += one.reparam_seconds;
				avg.minimize_seconds += one.minimize_seconds;
				avg.total_seconds += one.total_seconds;
				avg.input_columns = one.input_columns;
				avg.output_rows = one.output_rows;
				avg.output_columns = one.output_columns;
			}
			double inv = 1.0 / reps;
			avg.io_seconds *= inv;
			avg.chunk_seconds *= inv;
			avg.min_gens_seconds *= inv;
			avg.ker_basis_seconds *= inv;
			avg.reparam_seconds *= inv;
			avg.minimize_seconds *= inv;
			avg.total_seconds *= inv;
			avg.peak_memory_bytes = peak_rss_bytes();
			csv << stats_csv_row(family + "_" + std::to_string(size), variant.name, avg) << '\n';
		}
	}
	if (out_path.empty()) {
		std::cout << csv.str();
	} else {
		std::ofstream out(out_path);
		if (!out) {
			std::cerr << "cannot write " << out_path << "\n";
			return exit_io;
		}
		out << csv.str();
	}
	return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"minimal presentations of bi-graded persistence modules"};
	app.require_subcommand(0, 1);

	cli_options opts;
	app.add_option("input", opts.input, "firep input file");
	app.add_option("-o,--output", opts.output, "presentation output file (default stdout)");
	app.add_option("--stats", opts.stats_path, "write a CSV with per-phase timings");
	app.add_flag("--no-chunk", opts.no_chunk, "disable chunk preprocessing");
	app.add_flag("--no-queues", opts.no_queues, "use the grid-scanning min_gens/ker_basis");
	app.add_flag("--lw-minimize", opts.lw_minimize, "use the scan-based minimization");
	app.add_flag("--clearing", opts.clearing, "seed the kernel basis from pivot-dominated generators");
	app.add_flag("--parallel-mgkb", opts.parallel_mgkb, "run min_gens and ker_basis concurrently");
	app.add_option("--threads", opts.threads, "worker threads for the parallel loops")->default_val(1);
	app.add_option("--column-type", opts.column_type, "column store: vector, heap or bitset")
	    ->default_val("vector");
	app.add_flag("--strict", opts.strict, "verify B*A = 0 while parsing");
	app.add_flag("--check", opts.check, "verify the output against the brute-force oracle");
	app.add_flag("--compare-baseline", opts.compare_baseline, "also run the baseline pipeline and compare");

	auto* gen = app.add_subcommand("gen", "generate a firep");
	std::string gen_out;

	auto* gen_rips = gen->add_subcommand("rips", "function-Rips bifiltration of a point file");
	gen_rips->add_option("-o,--output", gen_out, "output file (default stdout)");
	std::string rips_points;
	double rips_bandwidth = 0.5;
	index_t rips_cap = 2000000;
	gen_rips->add_option("points", rips_points, "point file")->required();
	gen_rips->add_option("--bandwidth", rips_bandwidth, "Gaussian kernel bandwidth")->default_val(0.5);
	gen_rips->add_option("--max-triangles", rips_cap, "refuse larger complexes")->default_val(2000000);

	auto* gen_ls = gen->add_subcommand("lower-star", "lower-star bifiltration of an OFF mesh");
	std::string ls_mesh;
	gen_ls->add_option("mesh", ls_mesh, "OFF file")->required();
	gen_ls->add_option("-o,--output", gen_out, "output file (default stdout)");

	auto* gen_rand = gen->add_subcommand("random", "random bifiltered flag complex");
	unsigned rand_n = 6;
	double rand_p = 0.6;
	coord_t rand_range = 4;
	std::uint64_t rand_seed = 1;
	gen_rand->add_option("n", rand_n, "vertex count (3..15)")->required();
	gen_rand->add_option("p", rand_p, "edge probability")->required();
	gen_rand->add_option("--grade-range", rand_range, "vertex grades in [0, range)")->default_val(4);
	gen_rand->add_option("--seed", rand_seed, "random seed")->default_val(1);
	gen_rand->add_option("-o,--output", gen_out, "output file (default stdout)");

	auto* bench = app.add_subcommand("bench", "time the pipeline variants on generated instances");
	std::string bench_family = "lower-star";
	std::vector<index_t> bench_sizes;
	std::vector<std::string> bench_variant_names;
	unsigned bench_reps = 1;
	unsigned bench_threads = std::thread::hardware_concurrency();
	std::string bench_out;
	bench->add_option("--family", bench_family, "rips, lower-star or random")->default_val("lower-star");
	bench->add_option("--sizes", bench_sizes, "instance sizes")->required()->delimiter(',');
	bench->add_option("--variants", bench_variant_names, "baseline, queue_lazy, chunk, parfor, clearing")
	    ->required()
	    ->delimiter(',');
	bench->add_option("--reps", bench_reps, "random instances to average per size")->default_val(1);
	bench->add_option("--threads", bench_threads, "threads for the parfor variant");
	bench->add_option("--out", bench_out, "CSV output file (default stdout)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int rc = app.exit(e);
		return rc == 0 ? exit_ok : exit_flags;
	}

	try {
		if (gen->parsed()) {
			firep_bundle bundle;
			if (gen_rips->parsed()) {
				std::ifstream pf(rips_points);
				if (!pf) {
					std::cerr << "cannot open " << rips_points << "\n";
					return exit_io;
				}
				bundle = gen_function_rips(read_points(pf, rips_bandwidth), rips_cap);
			} else if (gen_ls->parsed()) {
				std::ifstream mf(ls_mesh);
				if (!mf) {
					std::cerr << "cannot open " << ls_mesh << "\n";
					return exit_io;
				}
				bundle = gen_lower_star(read_off(mf));
			} else if (gen_rand->parsed()) {
				bundle = gen_random_firep(rand_n, rand_p, rand_range, rand_seed);
			} else {
				std::cerr << "gen needs a subcommand: rips, lower-star or random\n";
				return exit_flags;
			}
			std::string text = write_firep(bundle);
			if (gen_out.empty()) {
				std::cout << text;
			} else {
				std::ofstream out(gen_out);
				if (!out) {
					std::cerr << "cannot write " << gen_out << "\n";
					return exit_io;
				}
				out << text;
			}
			return exit_ok;
		}
		if (bench->parsed())
			return run_bench(bench_family, bench_sizes, bench_variant_names, bench_reps, bench_threads,
			                 bench_out);
		if (opts.input.empty()) {
			std::cerr << "no input file; see --help\n";
			return exit_flags;
		}
		return run_main(opts);
	} catch (const invalid_options& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_flags;
	} catch (const parse_error& e) {
		std::cerr << "parse error: " << e.what() << "\n";
		return exit_io;
	} catch (const mesh_format_error& e) {
		std::cerr << "mesh error: " << e.what() << "\n";
		return exit_io;
	} catch (const entry_rule_violation& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_io;
	} catch (const ba_product_nonzero& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_io;
	} catch (const reparam_failure& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_verification;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_io;
	}
}
