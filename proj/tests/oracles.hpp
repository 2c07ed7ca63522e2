// Test-only helpers: independent oracles and shared fixtures. The cofactor
// determinant is deliberately naive so it cannot share a bug with the
// elimination-based implementation it checks.
#pragma once

#include <initializer_list>
#include <vector>

#include "ninner/ninner.hpp"

namespace ninner_test {

using ninner::InnerSpace;
using ninner::Rational;
using ninner::SquareMatrix;
using ninner::Vector;

template <class S>
S cofactor_determinant(const SquareMatrix<S>& m) {
  const std::size_t n = m.order();
  if (n == 1) return m.at(0, 0);
  S acc = ninner::ScalarTraits<S>::zero();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<S> sub;
    sub.reserve((n - 1) * (n - 1));
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) sub.push_back(m.at(r, c));
    S term = m.at(0, j) * cofactor_determinant(SquareMatrix<S>(n - 1, std::move(sub)));
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

inline Rational rq(long num, long den = 1) { return Rational(num, den); }

inline Vector<Rational> rvec(std::initializer_list<long> coords) {
  std::vector<Rational> c;
  for (long v : coords) c.emplace_back(v);
  return Vector<Rational>(std::move(c));
}

// The permutation-symmetry counterexample triple x, u, v.
struct RemarkFixture {
  Vector<Rational> x = rvec({1, 0, 0});
  Vector<Rational> u = rvec({1, 1, 1});
  Vector<Rational> v = rvec({2, 1, 2});
  InnerSpace<Rational> space = InnerSpace<Rational>::euclidean(3);
};

// Random symmetric positive definite weight: B^T B + I.
template <class S>
InnerSpace<S> random_weighted_space(ninner::SplitMix64& g, std::size_t dim) {
  SquareMatrix<S> b = ninner::random_matrix<S>(g, dim);
  SquareMatrix<S> w = SquareMatrix<S>::identity(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      S acc = ninner::ScalarTraits<S>::zero();
      for (std::size_t k = 0; k < dim; ++k) acc += b.at(k, i) * b.at(k, j);
      w.at(i, j) += acc;
    }
  return InnerSpace<S>(std::move(w));
}

}  // namespace ninner_test
