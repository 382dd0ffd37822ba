#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RAMSUM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("csum") {
  CHECK(run("csum --instance z --k 6 --m 4").out == "-1\n");
  CHECK(run("csum --instance z --k 1 --m 7").out == "1\n");
  const auto r = run("csum --instance q:-1 --k p2r --m p2r^2");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(run("csum --k 12 --m 18").out == "-4\n");
}

TEST_CASE("count") {
  const auto r = run("count --instance z --x 1000 --scan");
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "x,count,count_over_x");
  CHECK(ls.back() == "1000,1000,1");
  const auto j = nlohmann::json::parse(run("count --instance q:-1 --x 5 --format json").out);
  CHECK(j[0]["count"] == 5);
}

TEST_CASE("residue") {
  const auto r = run("residue --instance z --k 2 --x 1000000 --grouped");
  CHECK(r.code == 0);
  const auto row = split(lines(r.out).at(1));
  REQUIRE(row.size() == 4);
  CHECK(std::stod(row[1]) == doctest::Approx(-0.6931).epsilon(1e-4));
  CHECK(std::stod(row[3]) <= 1e-3);
  // Lambda(K) = 0: target is 0 even in a field with unknown c.
  const auto zero = split(lines(run("residue --instance q:2 --k 6 --x 10000").out).at(1));
  CHECK(zero[2] == "0");
  // Unknown c and Lambda(K) != 0: no target.
  const auto blank = split(lines(run("residue --instance q:2 --k p7a --x 1000").out + ",").at(1));
  CHECK(blank[2].empty());
  CHECK(run("residue --k 2 --x 100 --grouped --direct").code == 2);
  CHECK(run("residue --k 1 --x 100").code == 2);
}

TEST_CASE("sxy") {
  const auto r = run("sxy --instance z --x 3 --y 2");
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(0) == "x,y,S,S_minus_cx,bound");
  CHECK(lines(r.out).at(1) == "3,2,2,-1,4");
  const auto scan = lines(run("sxy --x 1000 --y 20 --scan").out);
  CHECK(scan.size() == 1 + 3 * 5);
}

TEST_CASE("invariants") {
  const auto r = run("invariants --instance q:-1 --x 1000000");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["c_F"].get<double>() == doctest::Approx(0.7854).epsilon(1e-4));
  CHECK(j["h_rounded"] == 1);
  const auto q2 = nlohmann::json::parse(run("invariants --instance q:2 --x 1000000").out);
  CHECK(q2["h_rounded"] == 1);
  CHECK(q2["c_F"].get<double>() == doctest::Approx(0.623225).epsilon(1e-5));
  CHECK(q2["c_F_h_source"] == "counting");
}

TEST_CASE("atoms and table") {
  const auto atoms = lines(run("atoms --instance q:-1 --x 10").out);
  REQUIRE(atoms.size() == 5);
  CHECK(atoms[1] == "0,p2r,2");
  CHECK(atoms[4] == "3,p3,9");
  const auto table = lines(run("table --instance z --x 6 --y 6").out);
  CHECK(table.size() == 1 + 36);
  CHECK(table[0] == "k,m,c");
  // k = 6, m = 4 is row 5 * 6 + 4.
  CHECK(table[1 + 5 * 6 + 3] == "p2*p3,p2^2,-1");
}

TEST_CASE("check") {
  CHECK(run("check --suite th1 --instance z --bound 2000").code == 0);
  const auto oracle = run("check --suite oracle --instance z --bound 200");
  CHECK(oracle.code == 0);
  CHECK(nlohmann::json::parse(oracle.out)["failures"].empty());
  const auto a = run("check --suite apostol --trials 1000 --seed 42");
  const auto b = run("check --suite apostol --trials 1000 --seed 42");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["trials"] == 1000);
  CHECK(run("check --suite apostol --trials 10 --inject-fault").code == 1);
  CHECK(run("check --suite oracle --instance q:-1").code == 2);
}

TEST_CASE("output is identical across worker counts") {
  for (const char* args : {"count --instance q:-23 --x 100000 --scan", "residue --instance q:-1 --k p5a --x 100000 --scan",
                           "residue --k 12 --x 100000 --direct", "sxy --instance q:-1 --x 10000 --y 30 --scan",
                           "check --suite all --bound 150 --trials 100"}) {
    const auto one = run(std::string(args) + " --workers 1");
    const auto many = run(std::string(args) + " --workers 8");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
  }
}

TEST_CASE("--out writes the same bytes") {
  const std::string path = "cli_out_test.csv";
  CHECK(run("count --x 100 --scan --out " + path).code == 0);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == run("count --x 100 --scan").out);
  std::remove(path.c_str());
}

TEST_CASE("exit codes for bad input") {
  CHECK(run("csum --k foo --m 3").code == 2);
  CHECK(run("csum --instance q:4 --k 2 --m 3").code == 2);
  CHECK(run("csum --instance q:-1 --k p5 --m 3").code == 2);
  CHECK(run("count --x 100000000").code == 2);
  CHECK(run("count --x 100000000 --max-x 1e9 --format json").code == 0);
  CHECK(run("sxy --x 10 --y 5000").code == 2);
  CHECK(run("count --format xml").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}
