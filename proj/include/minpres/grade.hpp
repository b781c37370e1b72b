#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace minpres {

using index_t = std::uint64_t;
using coord_t = std::int64_t;

// Sentinel for "no column registered" in pivot maps.
inline constexpr index_t no_index = static_cast<index_t>(-1);

// A bi-grade: a point of Z^2. After coordinate compression the values
// are ranks in 1..X (resp. 1..Y).
struct grade_t {
	coord_t x = 0;
	coord_t y = 0;

	friend bool operator==(const grade_t&, const grade_t&) = default;
};

// Partial order: componentwise.
inline bool grade_leq(const grade_t& a, const grade_t& b) {
	return a.x <= b.x && a.y <= b.y;
}

inline grade_t grade_join(const grade_t& a, const grade_t& b) {
	return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y};
}

// Total order comparing y first, then x. Matrices keep rows and columns
// in this order.
inline std::strong_ordering colex_compare(const grade_t& a, const grade_t& b) {
	if (auto c = a.y <=> b.y; c != 0) return c;
	return a.x <=> b.x;
}

// Total order comparing x first, then y. Grid cells are visited in this order.
inline std::strong_ordering lex_compare(const grade_t& a, const grade_t& b) {
	if (auto c = a.x <=> b.x; c != 0) return c;
	return a.y <=> b.y;
}

struct colex_less {
	bool operator()(const grade_t& a, const grade_t& b) const { return colex_compare(a, b) < 0; }
};

struct lex_less {
	bool operator()(const grade_t& a, const grade_t& b) const { return lex_compare(a, b) < 0; }
};

// Comparator for a min-priority-queue of grades in lex order.
struct lex_greater {
	bool operator()(const grade_t& a, const grade_t& b) const { return lex_compare(a, b) > 0; }
};

inline std::ostream& operator<<(std::ostream& os, const grade_t& g) {
	return os << '(' << g.x << ',' << g.y << ')';
}

} // namespace minpres
