#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"

#ifndef MINPRES_BIN_PATH
#define MINPRES_BIN_PATH "./minpres"
#endif

namespace {

struct command_result {
	int exit_code;
	std::string output;
};

command_result run(const std::string& args) {
	std::string cmd = std::string(MINPRES_BIN_PATH) + " " + args + " 2>&1";
	FILE* pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe != nullptr);
	std::string out;
	char buf[4096];
	while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
	int status = pclose(pipe);
	return {WEXITSTATUS(status), out};
}

std::string temp_dir() {
	static std::string dir = [] {
		char tmpl[] = "/tmp/minpres_tests_XXXXXX";
		REQUIRE(mkdtemp(tmpl) != nullptr);
		return std::string(tmpl);
	}();
	return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
	std::string path = temp_dir() + "/" + name;
	std::ofstream out(path);
	out << content;
	return path;
}

} // namespace

TEST_CASE("cli computes and verifies the 5-vertex complex") {
	std::string path = write_file("complex.firep", fixtures::five_vertex_complex_text());
	auto res = run("--check --strict --compare-baseline " + path);
	CHECK(res.exit_code == 0);
	CHECK(res.output ==
	      "minimal presentation\n"
	      "x\n"
	      "y\n"
	      "2 1\n"
	      "2 2\n"
	      "3 3\n"
	      "3 3 ; 0\n");
}

TEST_CASE("variant flags do not change the checked result") {
	std::string path = write_file("complex 2.firep", fixtures::five_vertex_complex_text());
	auto fast = run("--check \"" + path + "\"");
	auto slow = run("--no-queues --no-chunk --lw-minimize --check \"" + path + "\"");
	CHECK(fast.exit_code == 0);
	CHECK(slow.exit_code == 0);
	CHECK(fast.output == slow.output);
}

TEST_CASE("conflicting flags exit with code 3") {
	std::string path = write_file("complex3.firep", fixtures::five_vertex_complex_text());
	auto res = run("--clearing --parallel-mgkb " + path);
	CHECK(res.exit_code == 3);
}

TEST_CASE("parse failures exit with code 2") {
	std::string path = write_file("broken.firep", "firep\nx\ny\n0 1 1\n1 1 ; 7\n");
	auto res = run(path);
	CHECK(res.exit_code == 2);
	CHECK(res.output.find("line 5") != std::string::npos);
	auto missing = run(temp_dir() + "/does_not_exist.firep");
	CHECK(missing.exit_code == 2);
}

TEST_CASE("gen random is reproducible and feeds the main pipeline") {
	std::string f1 = temp_dir() + "/r1.firep";
	std::string f2 = temp_dir() + "/r2.firep";
	CHECK(run("gen random 7 0.6 --seed 11 -o " + f1).exit_code == 0);
	CHECK(run("gen random 7 0.6 --seed 11 -o " + f2).exit_code == 0);
	std::ifstream a(f1), b(f2);
	std::stringstream sa, sb;
	sa << a.rdbuf();
	sb << b.rdbuf();
	CHECK(sa.str() == sb.str());
	CHECK(run("--check --strict --compare-baseline " + f1).exit_code == 0);
}

TEST_CASE("gen lower-star and rips read their input formats") {
	std::string off = write_file("mesh.off", "OFF\n4 3 0\n0 0 0\n1 0 0\n0 1 0\n2 2 0\n3 0 1 2\n2 0 3\n2 1 3\n");
	std::string firep = temp_dir() + "/mesh.firep";
	CHECK(run("gen lower-star " + off + " -o " + firep).exit_code == 0);
	CHECK(run("--check --strict " + firep).exit_code == 0);

	std::string pts = write_file("pts.txt", "0 0\n1 0\n0 1\n1.5 1.5\n0.2 0.8\n");
	std::string rips = temp_dir() + "/rips.firep";
	CHECK(run("gen rips " + pts + " --bandwidth 0.8 -o " + rips).exit_code == 0);
	CHECK(run("--check --strict --compare-baseline " + rips).exit_code == 0);

	auto capped = run("gen rips " + pts + " --max-triangles 2 -o " + rips);
	CHECK(capped.exit_code == 2);
}

TEST_CASE("stats CSV uses the documented phase order and consistent totals") {
	std::string path = write_file("complex4.firep", fixtures::five_vertex_complex_text());
	std::string csv = temp_dir() + "/stats.csv";
	auto res = run("--stats " + csv + " " + path);
	CHECK(res.exit_code == 0);
	std::ifstream in(csv);
	std::string header;
	std::getline(in, header);
	CHECK(header == "instance,variant,IO,Ch,MG,KB,RP,Min,Time,Mem,Size");
	std::string row;
	std::getline(in, row);
	REQUIRE(!row.empty());
	// total covers the sum of the serial phases up to timer overhead
	std::vector<double> fields;
	std::istringstream ls(row);
	std::string field;
	int idx = 0;
	while (std::getline(ls, field, ',') && idx < 10) {
		if (idx >= 2) fields.push_back(std::stod(field));
		++idx;
	}
	REQUIRE(fields.size() >= 7);
	double phase_sum = fields[0] + fields[1] + fields[2] + fields[3] + fields[4] + fields[5];
	double total = fields[6];
	CHECK(total >= phase_sum - 0.05);
}

TEST_CASE("bench emits one row per size and variant") {
	std::string csv = temp_dir() + "/bench.csv";
	auto res = run("bench --family rips --sizes 10,12,14 --variants baseline,queue_lazy,chunk,parfor "
	               "--reps 1 --out " +
	               csv);
	CHECK(res.exit_code == 0);
	std::ifstream in(csv);
	std::string line;
	int rows = 0;
	std::getline(in, line); // header
	while (std::getline(in, line))
		if (!line.empty()) ++rows;
	CHECK(rows == 12);
}

TEST_CASE("outputs are deterministic across runs, threads and column types") {
	std::string path = write_file("complex5.firep", fixtures::five_vertex_complex_text());
	auto base = run(path);
	for (const std::string& extra :
	     {std::string("--threads 4"), std::string("--column-type heap"), std::string("--column-type bitset"),
	      std::string("--parallel-mgkb --threads 2")}) {
		auto other = run(extra + " " + path);
		CHECK(other.exit_code == 0);
		CHECK(other.output == base.output);
	}
}
