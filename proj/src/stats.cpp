#include "minpres/stats.hpp"

#include <sstream>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace minpres {

std::uint64_t peak_rss_bytes() {
#if defined(__unix__) || defined(__APPLE__)
	struct rusage ru{};
	if (getrusage(RUSAGE_SELF, &ru) == 0) {
#if defined(__APPLE__)
		return static_cast<std::uint64_t>(ru.ru_maxrss); // bytes
#else
		return static_cast<std::uint64_t>(ru.ru_maxrss) * 1024; // kilobytes
#endif
	}
#endif
	return 0;
}

std::string stats_csv_header() { return "instance,variant,IO,Ch,MG,KB,RP,Min,Time,Mem,Size"; }

std::string stats_csv_row(const std::string& instance, const std::string& variant, const run_stats& s) {
	std::ostringstream os;
	os.precision(6);
	os << std::fixed;
	os << instance << ',' << variant << ',' << s.io_seconds << ',' << s.chunk_seconds << ','
	   << s.min_gens_seconds << ',' << s.ker_basis_seconds << ',' << s.reparam_seconds << ','
	   << s.minimize_seconds << ',' << s.total_seconds << ',' << s.peak_memory_bytes << ',' << '"' << '('
	   << s.output_rows << ", " << s.output_columns << ')' << '"';
	return os.str();
}

} // namespace minpres
