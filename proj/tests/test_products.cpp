#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "ninner/ninner.hpp"
#include "oracles.hpp"

using ninner::Axiom;
using ninner::ConditionedPair;
using ninner::InnerSpace;
using ninner::InvalidArgument;
using ninner::ProductKind;
using ninner::Rational;
using ninner::SplitMix64;
using ninner::Vector;
using ninner_test::rq;
using ninner_test::rvec;

namespace {

std::vector<Vector<Rational>> conds(std::initializer_list<Vector<Rational>> vs) {
  return std::vector<Vector<Rational>>(vs);
}

}  // namespace

TEST_CASE("iterated product reproduces the counterexample values") {
  ninner_test::RemarkFixture f;
  // The four 2x2 building blocks of (x,x|u,v): 5, -1, -1, 2.
  CHECK(standard_2_inner(f.space, f.x, f.x, f.v) == rq(5));
  CHECK(standard_2_inner(f.space, f.x, f.u, f.v) == rq(-1));
  CHECK(standard_2_inner(f.space, f.u, f.x, f.v) == rq(-1));
  CHECK(standard_2_inner(f.space, f.u, f.u, f.v) == rq(2));
  auto uv = conds({f.u, f.v});
  CHECK(iterated_2_inner(f.space, f.x, f.x, std::span<const Vector<Rational>>(uv)) == rq(9));

  // And of (v,v|u,x): 5, 3, 3, 2.
  CHECK(standard_2_inner(f.space, f.v, f.v, f.x) == rq(5));
  CHECK(standard_2_inner(f.space, f.v, f.u, f.x) == rq(3));
  CHECK(standard_2_inner(f.space, f.u, f.v, f.x) == rq(3));
  CHECK(standard_2_inner(f.space, f.u, f.u, f.x) == rq(2));
  auto ux = conds({f.u, f.x});
  CHECK(iterated_2_inner(f.space, f.v, f.v, std::span<const Vector<Rational>>(ux)) == rq(1));
}

TEST_CASE("iterated product edge cases") {
  ninner_test::RemarkFixture f;
  auto zero_cond = conds({Vector<Rational>::zero(3), f.v});
  CHECK(iterated_2_inner(f.space, f.x, f.u, std::span<const Vector<Rational>>(zero_cond)) ==
        rq(0));
  std::vector<Vector<Rational>> none;
  CHECK_THROWS_AS(
      iterated_2_inner(f.space, f.x, f.u, std::span<const Vector<Rational>>(none)),
      InvalidArgument);
}

TEST_CASE("standard n-inner product worked values") {
  ninner_test::RemarkFixture f;
  auto uv = conds({f.u, f.v});
  CHECK(standard_n_inner(f.space, f.x, f.x, std::span<const Vector<Rational>>(uv)) == rq(1));

  // n=2 determinant form on the plane: <x,y><z,z> - <x,z><z,y>.
  auto plane = InnerSpace<Rational>::euclidean(2);
  auto z = conds({rvec({1, 1})});
  CHECK(standard_n_inner(plane, rvec({1, 0}), rvec({0, 1}),
                         std::span<const Vector<Rational>>(z)) == rq(-1));

  // First argument inside the conditioner span kills the product.
  Vector<Rational> span_elem = rq(2) * f.u - rq(3, 2) * f.v;
  auto uv2 = conds({f.u, f.v});
  CHECK(standard_n_inner(f.space, span_elem, rvec({4, -3, 7}),
                         std::span<const Vector<Rational>>(uv2)) == rq(0));

  // Empty conditioner list: the n=1 convention gives the plain product.
  std::vector<Vector<Rational>> none;
  CHECK(standard_n_inner(f.space, f.x, f.v, std::span<const Vector<Rational>>(none)) ==
        rq(2));
}

TEST_CASE("standard product is invariant under conditioner permutations") {
  SplitMix64 g(19);
  auto space = InnerSpace<Rational>::euclidean(5);
  for (int t = 0; t < 80; ++t) {
    auto x = ninner::random_vector<Rational>(g, 5);
    auto y = ninner::random_vector<Rational>(g, 5);
    std::vector<Vector<Rational>> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(ninner::random_vector<Rational>(g, 5));
    Rational base = standard_n_inner(space, x, y, std::span<const Vector<Rational>>(cs));
    auto perm = cs;
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1],
                perm[static_cast<std::size_t>(g.uniform_int(0, static_cast<long>(i) - 1))]);
    CHECK(standard_n_inner(space, x, y, std::span<const Vector<Rational>>(perm)) == base);
  }
}

TEST_CASE("norms report exact squares with float roots") {
  ninner_test::RemarkFixture f;
  auto uv = conds({f.u, f.v});
  std::span<const Vector<Rational>> cs(uv);

  auto weak = weak_n_norm(f.space, f.x, cs);
  CHECK(weak.squared == rq(9));
  CHECK(weak.root == doctest::Approx(3.0));

  auto std_norm = standard_n_norm(f.space, f.x, cs);
  CHECK(std_norm.squared == rq(1));
  CHECK(std_norm.root == doctest::Approx(1.0));

  // A conditioner has norm zero against itself.
  CHECK(weak_n_norm(f.space, f.u, cs).squared == rq(0));
  CHECK(standard_n_norm(f.space, f.v, cs).squared == rq(0));
}

TEST_CASE("norm scaling |alpha v| = |alpha| |v| on squares") {
  SplitMix64 g(23);
  auto space = InnerSpace<Rational>::euclidean(4);
  for (int t = 0; t < 50; ++t) {
    auto v = ninner::random_vector<Rational>(g, 4);
    auto cs = ninner::random_independent_vectors(space, g, 2);
    Rational a = ninner::random_scalar<Rational>(g);
    std::span<const Vector<Rational>> sp(cs);
    CHECK(standard_n_norm(space, a * v, sp).squared ==
          a * a * standard_n_norm(space, v, sp).squared);
    CHECK(weak_n_norm(space, a * v, sp).squared ==
          a * a * weak_n_norm(space, v, sp).squared);
  }
}

TEST_CASE("E factor worked values") {
  ninner_test::RemarkFixture f;
  auto uv = conds({f.u, f.v});
  CHECK(e_factor(f.space, uv) == rq(9));  // E_3 = <v,v>

  auto single = conds({f.u});
  CHECK(e_factor(f.space, single) == rq(1));  // E_2 = 1

  // E_4 with conditioners [v', w, z] is <w,w|z> <z,z>^2.
  SplitMix64 g(29);
  auto space = InnerSpace<Rational>::euclidean(4);
  for (int t = 0; t < 30; ++t) {
    auto vp = ninner::random_vector<Rational>(g, 4);
    auto w = ninner::random_vector<Rational>(g, 4);
    auto z = ninner::random_vector<Rational>(g, 4);
    auto c = conds({vp, w, z});
    Rational zz = space.inner(z, z);
    CHECK(e_factor(space, c) == standard_2_inner(space, w, w, z) * zz * zz);
  }
}

TEST_CASE("representation report ties the three routes together") {
  ninner_test::RemarkFixture f;
  ConditionedPair<Rational> p{f.x, f.x, conds({f.u, f.v})};
  auto r = representation_report(f.space, p);
  CHECK(r.value == rq(9));
  CHECK(r.e_factor == rq(9));
  CHECK(r.standard_value == rq(1));
  CHECK(r.residual() == rq(0));

  // n=2: value equals the standard value, E = 1.
  SplitMix64 g(31);
  auto space = InnerSpace<Rational>::euclidean(3);
  for (int t = 0; t < 30; ++t) {
    ConditionedPair<Rational> q{ninner::random_vector<Rational>(g, 3),
                                ninner::random_vector<Rational>(g, 3),
                                {ninner::random_vector<Rational>(g, 3)}};
    auto rep = representation_report(space, q);
    CHECK(rep.e_factor == rq(1));
    CHECK(rep.value == rep.standard_value);
  }
}

TEST_CASE("representation identity holds exactly at n=5, d=6") {
  SplitMix64 g(37);
  auto space = InnerSpace<Rational>::euclidean(6);
  for (int t = 0; t < 40; ++t) {
    ConditionedPair<Rational> p;
    p.x = ninner::random_vector<Rational>(g, 6);
    p.y = ninner::random_vector<Rational>(g, 6);
    for (int i = 0; i < 4; ++i) p.conditioners.push_back(ninner::random_vector<Rational>(g, 6));
    CHECK(representation_report(space, p).residual() == rq(0));
  }
}

TEST_CASE("representation identity is inner-product generic") {
  SplitMix64 g(41);
  auto space = ninner_test::random_weighted_space<Rational>(g, 4);
  for (int t = 0; t < 30; ++t) {
    ConditionedPair<Rational> p;
    p.x = ninner::random_vector<Rational>(g, 4);
    p.y = ninner::random_vector<Rational>(g, 4);
    for (int i = 0; i < 2; ++i) p.conditioners.push_back(ninner::random_vector<Rational>(g, 4));
    CHECK(representation_report(space, p).residual() == rq(0));
  }
}

TEST_CASE("scaling law t^(2^n) holds exactly") {
  SplitMix64 g(43);
  auto space = InnerSpace<Rational>::euclidean(4);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 40; ++t) {
      auto x = ninner::random_vector<Rational>(g, 4);
      auto y = ninner::random_vector<Rational>(g, 4);
      std::vector<Vector<Rational>> cs;
      for (int i = 0; i + 1 < n; ++i) cs.push_back(ninner::random_vector<Rational>(g, 4));
      Rational s = ninner::random_nonzero_scalar<Rational>(g);
      std::vector<Vector<Rational>> scaled;
      for (const auto& c : cs) scaled.push_back(s * c);
      CHECK(iterated_2_inner(space, s * x, s * y, std::span<const Vector<Rational>>(scaled)) ==
            ninner::pow_u(s, 1u << n) *
                iterated_2_inner(space, x, y, std::span<const Vector<Rational>>(cs)));
    }
  }
}

TEST_CASE("parallelogram and polarization hold on squared norms") {
  SplitMix64 g(47);
  auto space = InnerSpace<Rational>::euclidean(4);
  for (int t = 0; t < 60; ++t) {
    auto v = ninner::random_vector<Rational>(g, 4);
    auto w = ninner::random_vector<Rational>(g, 4);
    std::vector<Vector<Rational>> cs{ninner::random_vector<Rational>(g, 4),
                                     ninner::random_vector<Rational>(g, 4)};
    std::span<const Vector<Rational>> sp(cs);
    Rational pp = standard_n_inner(space, v + w, v + w, sp);
    Rational mm = standard_n_inner(space, v - w, v - w, sp);
    CHECK(pp + mm == rq(2) * standard_n_inner(space, v, v, sp) +
                         rq(2) * standard_n_inner(space, w, w, sp));
    CHECK(pp - mm == rq(4) * standard_n_inner(space, v, w, sp));
  }
}

TEST_CASE("annihilation and quotient invariance for the iterated product") {
  SplitMix64 g(53);
  auto space = InnerSpace<Rational>::euclidean(5);
  for (int t = 0; t < 60; ++t) {
    std::vector<Vector<Rational>> cs{ninner::random_vector<Rational>(g, 5),
                                     ninner::random_vector<Rational>(g, 5),
                                     ninner::random_vector<Rational>(g, 5)};
    std::span<const Vector<Rational>> sp(cs);
    auto y = ninner::random_vector<Rational>(g, 5);
    Vector<Rational> combo = ninner::random_combination(g, cs);
    CHECK(iterated_2_inner(space, combo, y, sp) == rq(0));

    auto x = ninner::random_vector<Rational>(g, 5);
    Rational base = iterated_2_inner(space, x, y, sp);
    CHECK(iterated_2_inner(space, x + combo, y, sp) == base);
    CHECK(iterated_2_inner(space, x, y + combo, sp) == base);
  }
}

TEST_CASE("schwarz gap: equality cases and positivity") {
  ninner_test::RemarkFixture f;
  auto space = InnerSpace<Rational>::euclidean(3);

  ConditionedPair<Rational> same{f.x, f.x, conds({f.u})};
  CHECK(schwarz_gap(space, same) == rq(0));
  CHECK(schwarz_equality_case(space, same));

  ConditionedPair<Rational> shifted{f.x, f.x + f.u, conds({f.u})};
  CHECK(schwarz_gap(space, shifted) == rq(0));
  CHECK(schwarz_equality_case(space, shifted));

  // Negative mu attains equality in |.| but is outside the detector's
  // contract, which asks for mu >= 0 specifically.
  ConditionedPair<Rational> negated{f.x, rq(-2) * f.x, conds({f.u})};
  CHECK(schwarz_gap(space, negated) == rq(0));
  CHECK_FALSE(schwarz_equality_case(space, negated));

  SplitMix64 g(59);
  for (int t = 0; t < 60; ++t) {
    ConditionedPair<Rational> p;
    p.x = ninner::random_vector<Rational>(g, 3);
    p.y = ninner::random_vector<Rational>(g, 3);
    p.conditioners = {ninner::random_vector<Rational>(g, 3)};
    CHECK(schwarz_gap(space, p) >= rq(0));
  }
}

TEST_CASE("schwarz gap is positive on generic independent data") {
  SplitMix64 g(61);
  auto space = InnerSpace<Rational>::euclidean(4);
  int positive = 0;
  for (int t = 0; t < 40; ++t) {
    auto tuple = ninner::random_independent_vectors(space, g, 4);
    ConditionedPair<Rational> p{tuple[0], tuple[1], {tuple[2], tuple[3]}};
    Rational gap = schwarz_gap(space, p);
    CHECK(gap >= rq(0));
    if (gap > rq(0)) ++positive;
  }
  CHECK(positive > 30);
}

TEST_CASE("axiom_check: P2 passes, I2 on the standard product passes") {
  auto space = InnerSpace<Rational>::euclidean(4);
  auto p2 = axiom_check(space, Axiom::P2, ProductKind::Iterated, 4, 100, 5);
  CHECK(p2.pass());
  auto i2 = axiom_check(space, Axiom::I2, ProductKind::Standard, 4, 100, 5);
  CHECK(i2.pass());
}

TEST_CASE("axiom_check: I2 on the iterated product fails with the pinned witness") {
  auto space = InnerSpace<Rational>::euclidean(3);
  auto rep = axiom_check(space, Axiom::I2, ProductKind::Iterated, 3, 50, 123);
  CHECK_FALSE(rep.pass());
  CHECK(rep.counterexample.find("(2,1,2)") != std::string::npos);
  CHECK(rep.counterexample.find("9 vs 1") != std::string::npos);
}

TEST_CASE("evaluations are safe to run concurrently") {
  auto space = InnerSpace<Rational>::euclidean(4);
  SplitMix64 g(211);
  ConditionedPair<Rational> p;
  p.x = ninner::random_vector<Rational>(g, 4);
  p.y = ninner::random_vector<Rational>(g, 4);
  p.conditioners = {ninner::random_vector<Rational>(g, 4),
                    ninner::random_vector<Rational>(g, 4),
                    ninner::random_vector<Rational>(g, 4)};
  Rational expect = iterated_2_inner(space, p);
  std::vector<Rational> results(8, rq(0));
  std::vector<std::thread> pool;
  for (auto& slot : results)
    pool.emplace_back([&, out = &slot] { *out = iterated_2_inner(space, p); });
  for (auto& th : pool) th.join();
  for (const auto& r : results) CHECK(r == expect);
}

TEST_CASE("axiom_check: every default pairing passes at n=3") {
  auto space = InnerSpace<Rational>::euclidean(3);
  for (Axiom ax : {Axiom::I1, Axiom::I2, Axiom::I3, Axiom::I4, Axiom::I5, Axiom::I6,
                   Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4, Axiom::P5, Axiom::C1,
                   Axiom::C2, Axiom::C3, Axiom::C4}) {
    auto rep = axiom_check(space, ax, 3, 60, 77);
    INFO("axiom ", ninner::axiom_name(ax));
    CHECK(rep.pass());
  }
}
