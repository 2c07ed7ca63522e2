#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ninner/ninner.hpp"
#include "oracles.hpp"

using ninner::DimensionMismatch;
using ninner::InnerSpace;
using ninner::InvalidArgument;
using ninner::Rational;
using ninner::SplitMix64;
using ninner::SquareMatrix;
using ninner::Vector;
using ninner_test::rq;
using ninner_test::rvec;

TEST_CASE("inner product on the counterexample triple") {
  ninner_test::RemarkFixture f;
  CHECK(inner_product(f.space, f.x, f.v) == rq(2));
  CHECK(inner_product(f.space, f.v, f.v) == rq(9));
  CHECK(inner_product(f.space, Vector<Rational>::zero(3), f.v) == rq(0));
  CHECK(inner_product(f.space, f.x, f.v) == inner_product(f.space, f.v, f.x));
}

TEST_CASE("inner product reports both lengths on mismatch") {
  auto space = InnerSpace<Rational>::euclidean(3);
  try {
    inner_product(space, rvec({1, 2}), rvec({1, 2, 3}));
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(e.expected == 3);
    CHECK(e.got == 2);
  }
}

TEST_CASE("determinant matches the worked 2x2 values") {
  SquareMatrix<Rational> a(2, {rq(5), rq(-1), rq(-1), rq(2)});
  SquareMatrix<Rational> b(2, {rq(5), rq(3), rq(3), rq(2)});
  CHECK(determinant(a) == rq(9));
  CHECK(determinant(b) == rq(1));
  CHECK(determinant(SquareMatrix<Rational>(1, {rq(-7)})) == rq(-7));
  for (std::size_t k = 1; k <= 5; ++k)
    CHECK(determinant(SquareMatrix<Rational>::identity(k)) == rq(1));
}

TEST_CASE("exact determinant equals the cofactor oracle") {
  SplitMix64 g(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t order = static_cast<std::size_t>(g.uniform_int(1, 5));
    auto m = ninner::random_matrix<Rational>(g, order);
    CHECK(determinant(m) == ninner_test::cofactor_determinant(m));
  }
}

TEST_CASE("float determinant tracks the oracle") {
  SplitMix64 g(12);
  for (int t = 0; t < 100; ++t) {
    std::size_t order = static_cast<std::size_t>(g.uniform_int(1, 5));
    auto m = ninner::random_matrix<double>(g, order);
    double d = determinant(m);
    double o = ninner_test::cofactor_determinant(m);
    CHECK(d == doctest::Approx(o).epsilon(1e-9));
  }
}

TEST_CASE("gram matrix of (v,u,x)") {
  ninner_test::RemarkFixture f;
  std::vector<Vector<Rational>> vs{f.v, f.u, f.x};
  auto gm = gram_matrix(f.space, vs);
  std::vector<Rational> expect{rq(9), rq(5), rq(2), rq(5), rq(3), rq(1), rq(2), rq(1), rq(1)};
  CHECK(gm.entries() == expect);

  std::vector<Vector<Rational>> unit{rvec({1, 0, 0})};
  CHECK(gram_matrix(f.space, unit).entries() == std::vector<Rational>{rq(1)});

  std::vector<Vector<Rational>> pair{rvec({1, 0, 0}), rvec({0, 1, 0})};
  CHECK(gram_matrix(f.space, pair).entries() ==
        SquareMatrix<Rational>::identity(2).entries());

  std::vector<Vector<Rational>> none;
  CHECK_THROWS_AS(gram_matrix(f.space, none), InvalidArgument);
}

TEST_CASE("gram determinant: worked values and degeneracies") {
  ninner_test::RemarkFixture f;
  std::vector<Vector<Rational>> xuv{f.x, f.u, f.v};
  CHECK(gram_determinant(f.space, xuv) == rq(1));

  std::vector<Vector<Rational>> with_zero{f.x, Vector<Rational>::zero(3)};
  CHECK(gram_determinant(f.space, with_zero) == rq(0));

  std::vector<Vector<Rational>> basis{rvec({1, 0, 0}), rvec({0, 1, 0})};
  CHECK(gram_determinant(f.space, basis) == rq(1));
}

TEST_CASE("gram determinant is nonnegative and permutation invariant") {
  SplitMix64 g(13);
  auto space = InnerSpace<Rational>::euclidean(4);
  for (int t = 0; t < 150; ++t) {
    std::size_t k = static_cast<std::size_t>(g.uniform_int(1, 4));
    std::vector<Vector<Rational>> vs;
    for (std::size_t i = 0; i < k; ++i) vs.push_back(ninner::random_vector<Rational>(g, 4));
    Rational base = gram_determinant(space, vs);
    CHECK(base >= rq(0));
    for (std::size_t s = 0; s + 1 < k; ++s) {
      auto perm = vs;
      std::swap(perm[s], perm[s + 1]);
      CHECK(gram_determinant(space, perm) == base);
    }
  }
}

TEST_CASE("linear dependence") {
  ninner_test::RemarkFixture f;
  std::vector<Vector<Rational>> xuv{f.x, f.u, f.v};
  CHECK_FALSE(is_linearly_dependent(f.space, xuv));

  std::vector<Vector<Rational>> xx{f.x, rq(2) * f.x};
  CHECK(is_linearly_dependent(f.space, xx));

  std::vector<Vector<Rational>> four{f.x, f.u, f.v, rvec({1, 2, 3})};
  CHECK(is_linearly_dependent(f.space, four));
}

TEST_CASE("weight matrix validation") {
  CHECK_THROWS_AS(InnerSpace<Rational>(SquareMatrix<Rational>(
                      2, {rq(1), rq(2), rq(0), rq(1)})),
                  InvalidArgument);
  CHECK_THROWS_AS(InnerSpace<Rational>(SquareMatrix<Rational>(
                      2, {rq(1), rq(2), rq(2), rq(1)})),
                  InvalidArgument);  // symmetric but indefinite
  // SPD weight: <x,y> = x^T W y.
  InnerSpace<Rational> w(SquareMatrix<Rational>(2, {rq(2), rq(1), rq(1), rq(2)}));
  CHECK(w.inner(rvec({1, 0}), rvec({0, 1})) == rq(1));
  CHECK(w.inner(rvec({1, 1}), rvec({1, 1})) == rq(6));
}

TEST_CASE("weighted inner product is symmetric and bilinear exactly") {
  SplitMix64 g(17);
  auto space = ninner_test::random_weighted_space<Rational>(g, 3);
  for (int t = 0; t < 100; ++t) {
    auto x = ninner::random_vector<Rational>(g, 3);
    auto y = ninner::random_vector<Rational>(g, 3);
    auto z = ninner::random_vector<Rational>(g, 3);
    Rational a = ninner::random_scalar<Rational>(g);
    CHECK(space.inner(x, y) == space.inner(y, x));
    CHECK(space.inner(a * x + y, z) == a * space.inner(x, z) + space.inner(y, z));
  }
}
