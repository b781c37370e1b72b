#include "minpres/io.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include "minpres/core.hpp"
#include "minpres/errors.hpp"

namespace minpres {

namespace {

struct line_reader {
	std::istream& in;
	std::size_t line_no = 0;

	// next non-blank line with comments stripped
	bool next(std::string& out) {
		std::string line;
		while (std::getline(in, line)) {
			++line_no;
			auto hash = line.find('#');
			if (hash != std::string::npos) line.erase(hash);
			auto last = line.find_last_not_of(" \t\r");
			if (last == std::string::npos) continue;
			out = line.substr(0, last + 1);
			return true;
		}
		return false;
	}

	std::string require(const std::string& what) {
		std::string line;
		if (!next(line)) throw parse_error(line_no, "unexpected end of input, expected " + what);
		return line;
	}
};

double parse_grade_token(const std::string& tok, std::size_t line_no) {
	const char* begin = tok.c_str();
	char* end = nullptr;
	double v = std::strtod(begin, &end);
	if (end == begin || *end != '\0') throw parse_error(line_no, "bad grade value '" + tok + "'");
	return v;
}

struct raw_column {
	std::string x_tok, y_tok;
	double x = 0, y = 0;
	std::vector<index_t> entries;
	std::size_t line_no = 0;
};

raw_column parse_column_line(const std::string& line, std::size_t line_no, index_t index_bound) {
	raw_column c;
	c.line_no = line_no;
	std::istringstream ls(line);
	if (!(ls >> c.x_tok >> c.y_tok)) throw parse_error(line_no, "expected two grade values");
	c.x = parse_grade_token(c.x_tok, line_no);
	c.y = parse_grade_token(c.y_tok, line_no);
	std::string sep;
	if (!(ls >> sep) || sep != ";") throw parse_error(line_no, "expected ';' after the grade");
	long long prev = -1;
	long long v;
	while (ls >> v) {
		if (v < 0) throw parse_error(line_no, "negative row index");
		if (v <= prev) throw parse_error(line_no, "row indices must be strictly ascending");
		if (static_cast<index_t>(v) >= index_bound)
			throw parse_error(line_no, "row index " + std::to_string(v) + " out of range (bound " +
			                               std::to_string(index_bound) + ")");
		c.entries.push_back(static_cast<index_t>(v));
		prev = v;
	}
	if (!ls.eof()) throw parse_error(line_no, "trailing junk in column line");
	return c;
}

} // namespace

firep_bundle parse_firep(std::istream& in, bool strict) {
	line_reader rd{in};

	if (rd.require("the 'firep' header") != "firep") throw parse_error(rd.line_no, "expected 'firep' header");
	firep_bundle out;
	out.x_label = rd.require("the x parameter label");
	out.y_label = rd.require("the y parameter label");

	std::istringstream counts(rd.require("the counts line 't s r'"));
	long long t, s, r;
	if (!(counts >> t >> s >> r) || t < 0 || s < 0 || r < 0)
		throw parse_error(rd.line_no, "expected three non-negative counts 't s r'");

	std::vector<raw_column> a_cols, b_cols;
	a_cols.reserve(static_cast<std::size_t>(t));
	b_cols.reserve(static_cast<std::size_t>(s));
	for (long long i = 0; i < t; ++i) {
		std::string line = rd.require("an A-column line");
		a_cols.push_back(parse_column_line(line, rd.line_no, static_cast<index_t>(s)));
	}
	for (long long i = 0; i < s; ++i) {
		std::string line = rd.require("a B-column line");
		b_cols.push_back(parse_column_line(line, rd.line_no, static_cast<index_t>(r)));
	}

	grade_compressor comp;
	for (const raw_column& c : a_cols) comp.collect(c.x, c.y, c.x_tok, c.y_tok);
	for (const raw_column& c : b_cols) comp.collect(c.x, c.y, c.x_tok, c.y_tok);
	comp.finalize();

	plain_firep f;
	f.b.n_rows = static_cast<index_t>(r);
	for (const raw_column& c : b_cols) {
		f.b.col_grades.push_back(comp.rank_of(c.x, c.y));
		f.b.cols.push_back(c.entries);
	}
	f.a.n_rows = static_cast<index_t>(s);
	for (const raw_column& c : a_cols) {
		f.a.col_grades.push_back(comp.rank_of(c.x, c.y));
		f.a.cols.push_back(c.entries);
	}

	// B's column order fixes A's row order.
	sort_result sb = sort_graded(f.b);
	std::vector<index_t> col_inv(static_cast<std::size_t>(f.b.n_cols()));
	for (index_t j = 0; j < f.b.n_cols(); ++j)
		col_inv[static_cast<std::size_t>(sb.col_perm[static_cast<std::size_t>(j)])] = j;
	f.b = std::move(sb.m);
	for (auto& col : f.a.cols) {
		for (index_t& e : col) e = col_inv[static_cast<std::size_t>(e)];
		std::sort(col.begin(), col.end());
	}
	f.a.row_grades = f.b.col_grades;
	f.a = sort_graded(f.a).m; // validates the entry rule of A

	if (strict && !product_is_zero(f.b, f.a))
		throw ba_product_nonzero("B*A is not zero; the input is not a free implicit representation");

	out.firep = std::move(f);
	out.tables = comp.tables();
	return out;
}

firep_bundle parse_firep_string(const std::string& text, bool strict) {
	std::istringstream in(text);
	return parse_firep(in, strict);
}

namespace {

void write_grade(std::ostringstream& os, const grade_t& g, const grade_tables& tables) {
	os << tables.x_of(g.x) << ' ' << tables.y_of(g.y);
}

void write_column(std::ostringstream& os, const grade_t& g, const std::vector<index_t>& entries,
                  const grade_tables& tables) {
	write_grade(os, g, tables);
	os << " ;";
	for (index_t e : entries) os << ' ' << e;
	os << '\n';
}

} // namespace

std::string write_presentation(const plain_matrix& m, const grade_tables& tables,
                               const std::string& x_label, const std::string& y_label) {
	std::ostringstream os;
	os << "minimal presentation\n" << x_label << '\n' << y_label << '\n';
	os << m.n_rows << ' ' << m.n_cols() << '\n';
	for (const grade_t& g : m.row_grades) {
		write_grade(os, g, tables);
		os << '\n';
	}
	for (index_t j = 0; j < m.n_cols(); ++j)
		write_column(os, m.col_grades[static_cast<std::size_t>(j)], m.cols[static_cast<std::size_t>(j)], tables);
	return os.str();
}

std::string write_firep(const firep_bundle& f) {
	std::ostringstream os;
	os << "firep\n" << f.x_label << '\n' << f.y_label << '\n';
	os << f.firep.a.n_cols() << ' ' << f.firep.b.n_cols() << ' ' << f.firep.b.n_rows << '\n';
	for (index_t j = 0; j < f.firep.a.n_cols(); ++j)
		write_column(os, f.firep.a.col_grades[static_cast<std::size_t>(j)],
		             f.firep.a.cols[static_cast<std::size_t>(j)], f.tables);
	for (index_t j = 0; j < f.firep.b.n_cols(); ++j)
		write_column(os, f.firep.b.col_grades[static_cast<std::size_t>(j)],
		             f.firep.b.cols[static_cast<std::size_t>(j)], f.tables);
	return os.str();
}

} // namespace minpres
