#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "ninner/ninner.hpp"
#include "oracles.hpp"

using ninner::ParseError;
using ninner::Rational;
using ninner_test::rq;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

}  // namespace

TEST_CASE("vector files: rationals, decimals, comments, blank lines") {
  write_file("parse_v.vec", "# comment\n1, 0, 0\n\n1/2, -0.25, 2e1\n");
  auto vs = ninner::read_vector_file<Rational>("parse_v.vec");
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].coords == std::vector<Rational>{rq(1), rq(0), rq(0)});
  CHECK(vs[1].coords == std::vector<Rational>{rq(1, 2), rq(-1, 4), rq(20)});

  auto fs = ninner::read_vector_file<double>("parse_v.vec");
  CHECK(fs[1].coords == std::vector<double>{0.5, -0.25, 20.0});
}

TEST_CASE("vector files: parse errors carry the 1-based line number") {
  write_file("parse_bad.vec", "1,2,3\n4,x,6\n");
  try {
    ninner::read_vector_file<Rational>("parse_bad.vec");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(ninner::read_vector_file<Rational>("parse_missing.vec"), ParseError);
}

TEST_CASE("matrix files must be square") {
  write_file("parse_m.mat", "1,2\n3,4\n");
  auto m = ninner::read_matrix_file<Rational>("parse_m.mat");
  CHECK(m.order() == 2);
  CHECK(determinant(m) == rq(-2));

  write_file("parse_rect.mat", "1,2,3\n4,5,6\n");
  CHECK_THROWS_AS(ninner::read_matrix_file<Rational>("parse_rect.mat"), ParseError);
}

TEST_CASE("csv: column selection by name") {
  write_file("parse_d.csv", "a, b, z\n1,2,3\n4,5,6\n7,8,9\n");
  auto csv = ninner::read_csv<Rational>("parse_d.csv");
  CHECK(csv.header == std::vector<std::string>{"a", "b", "z"});
  CHECK(csv.column("b") == std::vector<Rational>{rq(2), rq(5), rq(8)});
  CHECK_THROWS_AS(csv.column("nope"), ParseError);

  auto ds = ninner::make_dataset(csv, "a", "b", "z");
  CHECK(ds.size() == 3);

  write_file("parse_dup.csv", "a,a,z\n1,2,3\n");
  CHECK_THROWS_AS(ninner::read_csv<Rational>("parse_dup.csv"), ParseError);

  write_file("parse_ragged.csv", "a,b,z\n1,2\n");
  CHECK_THROWS_AS(ninner::read_csv<Rational>("parse_ragged.csv"), ParseError);
}

TEST_CASE("exact mode parses decimals as rationals over powers of ten") {
  write_file("parse_dec.vec", "0.1,0.2,0.3\n");
  auto vs = ninner::read_vector_file<Rational>("parse_dec.vec");
  CHECK(vs[0].coords == std::vector<Rational>{rq(1, 10), rq(1, 5), rq(3, 10)});
  // 0.1 + 0.2 == 0.3 holds literally here, unlike in binary floating point.
  CHECK(vs[0][0] + vs[0][1] == vs[0][2]);
}
