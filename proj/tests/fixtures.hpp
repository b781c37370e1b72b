#pragma once

#include <string>
#include <vector>

#include "minpres/plain_matrix.hpp"

namespace fixtures {

using minpres::grade_t;
using minpres::index_t;
using minpres::plain_firep;
using minpres::plain_matrix;

inline plain_matrix make_matrix(index_t n_rows, std::vector<grade_t> row_grades,
                                std::vector<std::pair<grade_t, std::vector<index_t>>> columns) {
	plain_matrix m;
	m.n_rows = n_rows;
	m.row_grades = std::move(row_grades);
	for (auto& [g, entries] : columns) {
		m.col_grades.push_back(g);
		m.cols.push_back(std::move(entries));
	}
	return m;
}

// 5x6 matrix with columns A..F; row grades are irrelevant to the sweep
// algorithms and set to (1,1).
inline plain_matrix ex1() {
	return make_matrix(5, std::vector<grade_t>(5, {1, 1}),
	                   {
	                       {{1, 1}, {2}},       // A
	                       {{1, 1}, {0, 1}},    // B
	                       {{3, 2}, {3, 4}},    // C
	                       {{1, 3}, {0}},       // D
	                       {{2, 3}, {2, 4}},    // E
	                       {{2, 3}, {2, 3}},    // F
	                   });
}

// 5x5 semi-minimal presentation with rows S,T,U,V,W and columns A..E.
inline plain_matrix ex2() {
	return make_matrix(5, {{1, 1}, {1, 1}, {1, 1}, {3, 1}, {3, 3}},
	                   {
	                       {{1, 1}, {1, 2}},    // A
	                       {{2, 1}, {0, 2}},    // B
	                       {{3, 1}, {1, 2, 3}}, // C
	                       {{3, 3}, {2, 3, 4}}, // D
	                       {{3, 3}, {0, 1, 4}}, // E
	                   });
}

// The 5-vertex complex: two triangles ABC, BCD plus the edges AE, CE.
// Colex-sorted; B's columns (= A's rows) are AB, BC, CD, BD, AC, CE, AE.
// B's rows carry no grades, as in the file format.
inline plain_firep five_vertex_complex() {
	plain_firep f;
	f.b = make_matrix(5, {},
	                  {
	                      {{1, 1}, {0, 1}}, // AB
	                      {{1, 1}, {1, 2}}, // BC
	                      {{2, 1}, {2, 3}}, // CD
	                      {{1, 2}, {1, 3}}, // BD
	                      {{2, 2}, {0, 2}}, // AC
	                      {{3, 2}, {2, 4}}, // CE
	                      {{2, 3}, {0, 4}}, // AE
	                  });
	f.a = make_matrix(7, f.b.col_grades,
	                  {
	                      {{2, 2}, {0, 1, 4}}, // ABC = AB + BC + AC
	                      {{3, 3}, {1, 2, 3}}, // BCD = BC + CD + BD
	                  });
	return f;
}

// The same complex in the text format, columns deliberately unsorted the way
// the matrices are usually written down (AB, AC, AE, BC, BD, CD, CE).
inline std::string five_vertex_complex_text() {
	return "firep\n"
	       "x\n"
	       "y\n"
	       "2 7 5\n"
	       "2 2 ; 0 1 3\n"
	       "3 3 ; 3 4 5\n"
	       "1 1 ; 0 1\n"
	       "2 2 ; 0 2\n"
	       "2 3 ; 0 4\n"
	       "1 1 ; 1 2\n"
	       "1 2 ; 1 3\n"
	       "2 1 ; 2 3\n"
	       "3 2 ; 2 4\n";
}

} // namespace fixtures
