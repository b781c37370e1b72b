#include "minpres/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "minpres/core.hpp"
#include "minpres/errors.hpp"

namespace minpres {

namespace {

struct split_mix {
	std::uint64_t s;
	explicit split_mix(std::uint64_t seed) : s(seed) {}
	std::uint64_t next() {
		s += 0x9e3779b97f4a7c15ull;
		std::uint64_t z = s;
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
		return z ^ (z >> 31);
	}
	std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
	double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct raw_simplices {
	// one (x, y) grade per vertex, edge and triangle, as doubles
	std::vector<std::pair<double, double>> vertex_grades;
	std::vector<std::array<index_t, 2>> edges; // sorted pairs, canonical order
	std::vector<std::pair<double, double>> edge_grades;
	std::vector<std::array<index_t, 3>> triangles; // sorted triples, canonical order
	std::vector<std::pair<double, double>> triangle_grades;
	bool integer_tokens = false;
};

std::string token_of(double v, bool integer) {
	return integer ? std::to_string(static_cast<long long>(v)) : format_double(v);
}

// Boundary matrices with compressed grades, rows and columns colex-sorted.
firep_bundle finalize(const raw_simplices& s) {
	grade_compressor comp;
	auto feed = [&](const std::pair<double, double>& g) {
		comp.collect(g.first, g.second, token_of(g.first, s.integer_tokens),
		             token_of(g.second, s.integer_tokens));
	};
	for (const auto& g : s.vertex_grades) feed(g);
	for (const auto& g : s.edge_grades) feed(g);
	for (const auto& g : s.triangle_grades) feed(g);
	comp.finalize();

	std::map<std::array<index_t, 2>, index_t> edge_index;
	for (index_t e = 0; e < s.edges.size(); ++e) edge_index[s.edges[static_cast<std::size_t>(e)]] = e;

	plain_firep f;
	f.b.n_rows = static_cast<index_t>(s.vertex_grades.size());
	for (const auto& g : s.vertex_grades) f.b.row_grades.push_back(comp.rank_of(g.first, g.second));
	for (std::size_t e = 0; e < s.edges.size(); ++e) {
		f.b.col_grades.push_back(comp.rank_of(s.edge_grades[e].first, s.edge_grades[e].second));
		f.b.cols.push_back({s.edges[e][0], s.edges[e][1]});
	}
	f.a.n_rows = static_cast<index_t>(s.edges.size());
	f.a.row_grades = f.b.col_grades;
	for (std::size_t t = 0; t < s.triangles.size(); ++t) {
		const auto& tri = s.triangles[t];
		f.a.col_grades.push_back(comp.rank_of(s.triangle_grades[t].first, s.triangle_grades[t].second));
		std::vector<index_t> bd = {edge_index.at({tri[0], tri[1]}), edge_index.at({tri[0], tri[2]}),
		                           edge_index.at({tri[1], tri[2]})};
		std::sort(bd.begin(), bd.end());
		f.a.cols.push_back(std::move(bd));
	}

	sort_result sb = sort_graded(f.b);
	std::vector<index_t> col_inv(static_cast<std::size_t>(f.b.n_cols()));
	for (index_t j = 0; j < f.b.n_cols(); ++j) col_inv[static_cast<std::size_t>(sb.col_perm[static_cast<std::size_t>(j)])] = j;
	f.b = std::move(sb.m);
	for (auto& col : f.a.cols) {
		for (index_t& e : col) e = col_inv[static_cast<std::size_t>(e)];
		std::sort(col.begin(), col.end());
	}
	f.a.row_grades = f.b.col_grades;
	f.a = sort_graded(f.a).m;

	firep_bundle out;
	out.firep = std::move(f);
	out.tables = comp.tables();
	return out;
}

} // namespace

firep_bundle gen_function_rips(const point_cloud& cloud, index_t max_triangles) {
	const auto& pts = cloud.points;
	index_t n = static_cast<index_t>(pts.size());
	if (n < 3) throw std::invalid_argument("point cloud needs at least 3 points");
	if (!(cloud.bandwidth > 0)) throw std::invalid_argument("bandwidth must be positive");
	for (const auto& p : pts)
		for (double c : p)
			if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
	index_t n_tri = n * (n - 1) * (n - 2) / 6;
	if (n_tri > max_triangles)
		throw too_large_error("triangle count " + std::to_string(n_tri) + " exceeds the cap of " +
		                      std::to_string(max_triangles));

	auto dist = [&](index_t i, index_t j) {
		double dx = pts[static_cast<std::size_t>(i)][0] - pts[static_cast<std::size_t>(j)][0];
		double dy = pts[static_cast<std::size_t>(i)][1] - pts[static_cast<std::size_t>(j)][1];
		double dz = pts[static_cast<std::size_t>(i)][2] - pts[static_cast<std::size_t>(j)][2];
		return std::sqrt(dx * dx + dy * dy + dz * dz);
	};

	// codensity: negated kernel density estimate, so sublevel sets grow
	std::vector<double> codensity(static_cast<std::size_t>(n), 0.0);
	double h2 = 2.0 * cloud.bandwidth * cloud.bandwidth;
	for (index_t i = 0; i < n; ++i) {
		double f = 0;
		for (index_t j = 0; j < n; ++j) {
			double d = dist(i, j);
			f += std::exp(-(d * d) / h2);
		}
		codensity[static_cast<std::size_t>(i)] = -f;
	}

	raw_simplices s;
	for (index_t i = 0; i < n; ++i) s.vertex_grades.push_back({0.0, codensity[static_cast<std::size_t>(i)]});
	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j) {
			s.edges.push_back({i, j});
			s.edge_grades.push_back({dist(i, j), std::max(codensity[static_cast<std::size_t>(i)],
			                                              codensity[static_cast<std::size_t>(j)])});
		}
	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j)
			for (index_t k = j + 1; k < n; ++k) {
				s.triangles.push_back({i, j, k});
				double x = std::max({dist(i, j), dist(i, k), dist(j, k)});
				double y = std::max({codensity[static_cast<std::size_t>(i)], codensity[static_cast<std::size_t>(j)],
				                     codensity[static_cast<std::size_t>(k)]});
				s.triangle_grades.push_back({x, y});
			}
	return finalize(s);
}

firep_bundle gen_lower_star(const tri_mesh& mesh) {
	index_t n = static_cast<index_t>(mesh.vertices.size());
	auto check_index = [&](index_t v) {
		if (v >= n) throw mesh_format_error("vertex index " + std::to_string(v) + " out of range");
	};

	std::vector<std::array<index_t, 2>> edges = mesh.edges;
	for (const auto& e : edges) {
		check_index(e[0]);
		check_index(e[1]);
		if (e[0] == e[1]) throw mesh_format_error("degenerate edge");
	}
	for (const auto& t : mesh.triangles) {
		for (index_t v : t) check_index(v);
		if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) throw mesh_format_error("degenerate triangle");
	}

	std::vector<std::array<index_t, 3>> tris;
	for (auto t : mesh.triangles) {
		std::sort(t.begin(), t.end());
		tris.push_back(t);
		edges.push_back({t[0], t[1]});
		edges.push_back({t[0], t[2]});
		edges.push_back({t[1], t[2]});
	}
	for (auto& e : edges)
		if (e[0] > e[1]) std::swap(e[0], e[1]);
	std::sort(edges.begin(), edges.end());
	edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
	std::sort(tris.begin(), tris.end());
	tris.erase(std::unique(tris.begin(), tris.end()), tris.end());

	raw_simplices s;
	for (const auto& v : mesh.vertices) s.vertex_grades.push_back({v[0], v[1]});
	auto vgrade = [&](index_t v) { return s.vertex_grades[static_cast<std::size_t>(v)]; };
	s.edges = edges;
	for (const auto& e : edges)
		s.edge_grades.push_back({std::max(vgrade(e[0]).first, vgrade(e[1]).first),
		                         std::max(vgrade(e[0]).second, vgrade(e[1]).second)});
	s.triangles = tris;
	for (const auto& t : tris)
		s.triangle_grades.push_back(
		    {std::max({vgrade(t[0]).first, vgrade(t[1]).first, vgrade(t[2]).first}),
		     std::max({vgrade(t[0]).second, vgrade(t[1]).second, vgrade(t[2]).second})});
	return finalize(s);
}

firep_bundle gen_random_firep(unsigned n_vertices, double edge_probability, coord_t grade_range,
                              std::uint64_t seed) {
	if (n_vertices < 3 || n_vertices > 15)
		throw std::invalid_argument("n_vertices must be between 3 and 15");
	if (grade_range < 1) throw std::invalid_argument("grade_range must be positive");
	split_mix rng(seed);
	index_t n = n_vertices;

	raw_simplices s;
	s.integer_tokens = true;
	for (index_t i = 0; i < n; ++i)
		s.vertex_grades.push_back({static_cast<double>(rng.below(static_cast<std::uint64_t>(grade_range))),
		                           static_cast<double>(rng.below(static_cast<std::uint64_t>(grade_range)))});

	std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
	std::map<std::array<index_t, 2>, std::size_t> edge_slot;
	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j) {
			if (rng.unit() >= edge_probability) continue;
			adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
			edge_slot[{i, j}] = s.edges.size();
			s.edges.push_back({i, j});
			double bx = static_cast<double>(rng.below(2));
			double by = static_cast<double>(rng.below(2));
			s.edge_grades.push_back(
			    {std::max(s.vertex_grades[static_cast<std::size_t>(i)].first, s.vertex_grades[static_cast<std::size_t>(j)].first) + bx,
			     std::max(s.vertex_grades[static_cast<std::size_t>(i)].second, s.vertex_grades[static_cast<std::size_t>(j)].second) + by});
		}

	for (index_t i = 0; i < n; ++i)
		for (index_t j = i + 1; j < n; ++j)
			for (index_t k = j + 1; k < n; ++k) {
				if (!adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ||
				    !adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ||
				    !adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
					continue;
				s.triangles.push_back({i, j, k});
				double bx = static_cast<double>(rng.below(2));
				double by = static_cast<double>(rng.below(2));
				double gx = std::max({s.vertex_grades[static_cast<std::size_t>(i)].first,
				                      s.vertex_grades[static_cast<std::size_t>(j)].first,
				                      s.vertex_grades[static_cast<std::size_t>(k)].first}) +
				            bx;
				double gy = std::max({s.vertex_grades[static_cast<std::size_t>(i)].second,
				                      s.vertex_grades[static_cast<std::size_t>(j)].second,
				                      s.vertex_grades[static_cast<std::size_t>(k)].second}) +
				            by;
				// monotone repair against the facet edges
				for (auto e : {std::array<index_t, 2>{i, j}, std::array<index_t, 2>{i, k},
				               std::array<index_t, 2>{j, k}}) {
					const auto& eg = s.edge_grades[edge_slot.at(e)];
					gx = std::max(gx, eg.first);
					gy = std::max(gy, eg.second);
				}
				s.triangle_grades.push_back({gx, gy});
			}
	return finalize(s);
}

tri_mesh make_strip_mesh(index_t n_vertices, std::uint64_t seed) {
	if (n_vertices < 3) throw std::invalid_argument("strip mesh needs at least 3 vertices");
	split_mix rng(seed);
	auto shuffled = [&](index_t n) {
		std::vector<index_t> v(static_cast<std::size_t>(n));
		for (index_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
		for (index_t i = n; i-- > 1;) {
			index_t j = rng.below(i + 1);
			std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
		}
		return v;
	};
	std::vector<index_t> px = shuffled(n_vertices);
	std::vector<index_t> py = shuffled(n_vertices);
	tri_mesh m;
	for (index_t i = 0; i < n_vertices; ++i)
		m.vertices.push_back({static_cast<double>(px[static_cast<std::size_t>(i)]),
		                      static_cast<double>(py[static_cast<std::size_t>(i)]), 0.0});
	for (index_t i = 0; i + 2 < n_vertices; ++i) m.triangles.push_back({i, i + 1, i + 2});
	return m;
}

namespace {

std::string next_content_line(std::istream& in, std::size_t& line_no) {
	std::string line;
	while (std::getline(in, line)) {
		++line_no;
		auto hash = line.find('#');
		if (hash != std::string::npos) line.erase(hash);
		if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
	}
	return {};
}

} // namespace

tri_mesh read_off(std::istream& in) {
	std::size_t line_no = 0;
	std::string header = next_content_line(in, line_no);
	std::istringstream hs(header);
	std::string tag;
	hs >> tag;
	if (tag != "OFF") throw mesh_format_error("missing OFF header");

	std::istringstream cs(next_content_line(in, line_no));
	long long nv = -1, nf = -1, ne = 0;
	if (!(cs >> nv >> nf >> ne) || nv < 0 || nf < 0) throw mesh_format_error("bad counts line");

	tri_mesh m;
	for (long long i = 0; i < nv; ++i) {
		std::istringstream vs(next_content_line(in, line_no));
		double x, y, z = 0;
		if (!(vs >> x >> y)) throw mesh_format_error("bad vertex line " + std::to_string(i));
		vs >> z;
		m.vertices.push_back({x, y, z});
	}
	for (long long i = 0; i < nf; ++i) {
		std::istringstream fs(next_content_line(in, line_no));
		long long k = 0;
		if (!(fs >> k)) throw mesh_format_error("bad face line " + std::to_string(i));
		if (k == 2) {
			long long a, b;
			if (!(fs >> a >> b)) throw mesh_format_error("bad edge face " + std::to_string(i));
			m.edges.push_back({static_cast<index_t>(a), static_cast<index_t>(b)});
		} else if (k == 3) {
			long long a, b, c;
			if (!(fs >> a >> b >> c)) throw mesh_format_error("bad triangle face " + std::to_string(i));
			m.triangles.push_back({static_cast<index_t>(a), static_cast<index_t>(b), static_cast<index_t>(c)});
		} else {
			throw mesh_format_error("face with " + std::to_string(k) + " vertices; only edges and triangles are supported");
		}
	}
	return m;
}

point_cloud read_points(std::istream& in, double bandwidth) {
	point_cloud c;
	c.bandwidth = bandwidth;
	std::string line;
	while (std::getline(in, line)) {
		auto hash = line.find('#');
		if (hash != std::string::npos) line.erase(hash);
		std::istringstream ls(line);
		double x, y, z = 0;
		if (!(ls >> x)) continue; // blank
		if (!(ls >> y)) throw mesh_format_error("point line needs at least 2 coordinates");
		ls >> z;
		c.points.push_back({x, y, z});
	}
	return c;
}

} // namespace minpres
