#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minpres {

// An entry whose row grade is not <= its column grade.
struct entry_rule_violation : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// A generator column that does not reduce to zero against the kernel basis;
// signals that the input pair was not a valid free implicit representation.
struct reparam_failure : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
	std::size_t line;
	parse_error(std::size_t line_, const std::string& what_)
	    : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct ba_product_nonzero : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct mesh_format_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct dimension_mismatch : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct too_large_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct invalid_options : std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace minpres
