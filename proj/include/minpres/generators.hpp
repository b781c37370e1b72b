#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <vector>

#include "minpres/plain_matrix.hpp"

namespace minpres {

struct point_cloud {
	std::vector<std::array<double, 3>> points; // z = 0 for planar input
	double bandwidth = 1.0;                    // Gaussian kernel scale
};

struct tri_mesh {
	std::vector<std::array<double, 3>> vertices;
	std::vector<std::array<index_t, 3>> triangles;
	std::vector<std::array<index_t, 2>> edges; // explicit extra edges, unioned with triangle edges
};

// Full Rips bifiltration over all C(n,2) edges and C(n,3) triangles:
// x-grade 0 / edge length / longest edge, y-grade the codensity (negated
// Gaussian kernel density), extended to simplices by the max over vertices.
// Throws too_large_error when C(n,3) exceeds max_triangles.
firep_bundle gen_function_rips(const point_cloud& cloud, index_t max_triangles = 2000000);

// Lower-star bifiltration of a triangle mesh: vertex grade = (x, y) of its
// coordinates (z ignored), faces graded by the componentwise max over their
// vertices.
firep_bundle gen_lower_star(const tri_mesh& mesh);

// Seed-deterministic bifiltered flag complex of an Erdos-Renyi graph, grades
// monotonically repaired. Property-test instance source; 3 <= n_vertices <= 15.
firep_bundle gen_random_firep(unsigned n_vertices, double edge_probability, coord_t grade_range,
                              std::uint64_t seed);

// Triangle strip with one distinct x and y rank per vertex; the dense-grid
// scaling instance family.
tri_mesh make_strip_mesh(index_t n_vertices, std::uint64_t seed);

// OFF format: header, counts, vertex lines, face lines (2- or 3-vertex faces).
tri_mesh read_off(std::istream& in);

// One point per line, 2 or 3 whitespace-separated coordinates.
point_cloud read_points(std::istream& in, double bandwidth);

} // namespace minpres
