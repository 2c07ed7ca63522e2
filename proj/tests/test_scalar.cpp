#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "ninner/ninner.hpp"
#include "oracles.hpp"

using ninner::ParseError;
using ninner::Rational;
using ninner::ScalarTraits;
using ninner::SplitMix64;
using ninner_test::rq;

TEST_CASE("rational parsing covers the shared lexicon") {
  auto p = [](const char* s) { return ScalarTraits<Rational>::parse(s); };
  CHECK(p("3") == rq(3));
  CHECK(p("-7") == rq(-7));
  CHECK(p("+7") == rq(7));
  CHECK(p("2/4") == rq(1, 2));
  CHECK(p("-4/9") == rq(-4, 9));
  CHECK(p("4/-2") == rq(-2));
  CHECK(p("0.1") == rq(1, 10));
  CHECK(p("-0.125") == rq(-1, 8));
  CHECK(p("2.5") == rq(5, 2));
  CHECK(p(".5") == rq(1, 2));
  CHECK(p("1e3") == rq(1000));
  CHECK(p("2.5e-2") == rq(1, 40));
  CHECK(p("25E-1") == rq(5, 2));
}

TEST_CASE("rational parsing rejects junk") {
  auto p = [](const char* s) { return ScalarTraits<Rational>::parse(s); };
  CHECK_THROWS_AS(p(""), ParseError);
  CHECK_THROWS_AS(p("abc"), ParseError);
  CHECK_THROWS_AS(p("1/0"), ParseError);
  CHECK_THROWS_AS(p("1.2.3"), ParseError);
  CHECK_THROWS_AS(p("1e"), ParseError);
  CHECK_THROWS_AS(p("1/2/3"), ParseError);
  CHECK_THROWS_AS(p("nan"), ParseError);
  CHECK_THROWS_AS(p("inf"), ParseError);
}

TEST_CASE("double parsing shares the lexicon and rejects non-finite") {
  auto p = [](const char* s) { return ScalarTraits<double>::parse(s); };
  CHECK(p("3") == 3.0);
  CHECK(p("1/4") == 0.25);
  CHECK(p("2.5e-2") == 0.025);
  CHECK_THROWS_AS(p("inf"), ParseError);
  CHECK_THROWS_AS(p("nan"), ParseError);
  CHECK_THROWS_AS(p("12x"), ParseError);
}

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  SplitMix64 g(2024);
  for (int t = 0; t < 500; ++t) {
    Rational a(g.uniform_int(-40, 40), g.uniform_int(1, 40) * (g.uniform_int(0, 1) ? 1 : -1));
    Rational b(g.uniform_int(-40, 40), g.uniform_int(1, 40));
    for (const Rational& r : {a + b, a - b, a * b, a, b}) {
      CHECK(r.denominator() > 0);
      mpz_class d = gcd(r.numerator(), r.denominator());
      CHECK(d == 1);
    }
  }
}

TEST_CASE("exact arithmetic is associative, commutative and distributive") {
  SplitMix64 g(7);
  for (int t = 0; t < 300; ++t) {
    Rational a = ninner::random_scalar<Rational>(g);
    Rational b = ninner::random_scalar<Rational>(g);
    Rational c = ninner::random_scalar<Rational>(g);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("formatting: integers print bare, fractions as p/q") {
  CHECK(ScalarTraits<Rational>::to_string(rq(9)) == "9");
  CHECK(ScalarTraits<Rational>::to_string(rq(-1, 3)) == "-1/3");
  CHECK(ScalarTraits<double>::to_string(9.0) == "9");
  double v = 0.1;
  CHECK(ScalarTraits<double>::parse(ScalarTraits<double>::to_string(v)) == v);
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(rq(1) / rq(0), ninner::InvalidArgument);
  CHECK_THROWS_AS(Rational(1, 0), ninner::InvalidArgument);
}

TEST_CASE("splitmix64 streams are deterministic and order-independent") {
  SplitMix64 a = SplitMix64::stream(42, 1, 10);
  SplitMix64 b = SplitMix64::stream(42, 1, 10);
  CHECK(a.next() == b.next());
  SplitMix64 c = SplitMix64::stream(42, 1, 11);
  SplitMix64 d = SplitMix64::stream(42, 2, 10);
  CHECK(c.next() != d.next());
}
