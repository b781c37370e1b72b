#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>

namespace minpres {

// Per-phase wall times and result sizes of one pipeline run.
struct run_stats {
	double io_seconds = 0;
	double chunk_seconds = 0;
	double min_gens_seconds = 0;
	double ker_basis_seconds = 0;
	double reparam_seconds = 0;
	double minimize_seconds = 0;
	double total_seconds = 0;
	std::uint64_t peak_memory_bytes = 0; // best effort, 0 where unavailable
	std::uint64_t input_columns = 0;
	std::uint64_t output_rows = 0;
	std::uint64_t output_columns = 0;
};

class stopwatch {
	std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();

public:
	double seconds() const {
		return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
	}
	void reset() { t0_ = std::chrono::steady_clock::now(); }
	double lap() {
		double s = seconds();
		reset();
		return s;
	}
};

// Peak resident set size of this process, 0 if the platform offers none.
std::uint64_t peak_rss_bytes();

// CSV rows in the phase order IO, Ch, MG, KB, RP, Min.
std::string stats_csv_header();
std::string stats_csv_row(const std::string& instance, const std::string& variant, const run_stats& s);

} // namespace minpres
