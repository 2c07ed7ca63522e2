#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ninner/linalg.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

// SplitMix64. Chosen because it is trivially portable: identical output on
// every platform for a given seed, with cheap derivation of independent
// streams per (check, trial) so trial results are order-independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Inclusive range. Modulo bias is irrelevant at the tiny ranges used here.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t check_id,
                           std::uint64_t trial) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (check_id + 1)));
    std::uint64_t s = g.next() ^ (trial * 0xD1B54A32D192ED03ull + 0x2545F4914F6CDD1Dull);
    return SplitMix64(s);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

// Random rationals are kept small (numerators in [-9,9], denominators in
// [1,9]) so exact-mode identity suites stay fast; float mode draws the same
// values as doubles.
template <class S>
S random_scalar(SplitMix64& g) {
  long num = g.uniform_int(-9, 9);
  long den = g.uniform_int(1, 9);
  return ScalarTraits<S>::from_fraction(num, den);
}

template <class S>
S random_nonzero_scalar(SplitMix64& g) {
  for (;;) {
    S v = random_scalar<S>(g);
    if (!ScalarTraits<S>::is_zero(v)) return v;
  }
}

template <class S>
S random_nonneg_scalar(SplitMix64& g) {
  S v = random_scalar<S>(g);
  return scalar_abs(v);
}

template <class S>
Vector<S> random_vector(SplitMix64& g, std::size_t dim) {
  std::vector<S> c;
  c.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) c.push_back(random_scalar<S>(g));
  return Vector<S>(std::move(c));
}

template <class S>
Vector<S> random_nonzero_vector(SplitMix64& g, std::size_t dim) {
  for (;;) {
    Vector<S> v = random_vector<S>(g, dim);
    if (!v.is_zero()) return v;
  }
}

template <class S>
SquareMatrix<S> random_matrix(SplitMix64& g, std::size_t order) {
  std::vector<S> e;
  e.reserve(order * order);
  for (std::size_t i = 0; i < order * order; ++i) e.push_back(random_scalar<S>(g));
  return SquareMatrix<S>(order, std::move(e));
}

// Degenerate draws are rejected and redrawn, with a cap before erroring.
template <class S>
std::vector<Vector<S>> random_independent_vectors(const InnerSpace<S>& space,
                                                  SplitMix64& g, std::size_t count,
                                                  double tol = 1e-9, int cap = 100) {
  for (int attempt = 0; attempt < cap; ++attempt) {
    std::vector<Vector<S>> vs;
    vs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) vs.push_back(random_vector<S>(g, space.dim()));
    if (!is_linearly_dependent(space, vs, tol)) return vs;
  }
  throw Error("failed to draw a linearly independent tuple after 100 attempts");
}

// Random vector in the span of `basis` with small rational coefficients.
template <class S>
Vector<S> random_combination(SplitMix64& g, const std::vector<Vector<S>>& basis) {
  Vector<S> acc = Vector<S>::zero(basis.empty() ? 0 : basis[0].dim());
  for (const auto& b : basis) {
    S coeff = random_scalar<S>(g);
    acc = acc + coeff * b;
  }
  return acc;
}

}  // namespace ninner
