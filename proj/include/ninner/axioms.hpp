#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ninner/products.hpp"
#include "ninner/rng.hpp"

namespace ninner {

enum class Axiom { I1, I2, I3, I4, I5, I6, P1, P2, P3, P4, P5, C1, C2, C3, C4 };
enum class ProductKind { Standard, Iterated };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::I1: return "I1";
    case Axiom::I2: return "I2";
    case Axiom::I3: return "I3";
    case Axiom::I4: return "I4";
    case Axiom::I5: return "I5";
    case Axiom::I6: return "I6";
    case Axiom::P1: return "P1";
    case Axiom::P2: return "P2";
    case Axiom::P3: return "P3";
    case Axiom::P4: return "P4";
    case Axiom::P5: return "P5";
    case Axiom::C1: return "C1";
    case Axiom::C2: return "C2";
    case Axiom::C3: return "C3";
    case Axiom::C4: return "C4";
  }
  return "?";
}

inline std::optional<Axiom> axiom_from_name(std::string_view s) {
  static constexpr Axiom all[] = {Axiom::I1, Axiom::I2, Axiom::I3, Axiom::I4, Axiom::I5,
                                  Axiom::I6, Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4,
                                  Axiom::P5, Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4};
  for (Axiom a : all)
    if (s == axiom_name(a)) return a;
  return std::nullopt;
}

// I-family axioms are stated for the standard product, P- and C-families for
// the iterated one. The interesting cross pairing is I2 against the iterated
// product, which is expected to fail for n >= 3.
inline ProductKind default_product(Axiom a) {
  switch (a) {
    case Axiom::I1:
    case Axiom::I2:
    case Axiom::I3:
    case Axiom::I4:
    case Axiom::I5:
    case Axiom::I6:
      return ProductKind::Standard;
    default:
      return ProductKind::Iterated;
  }
}

inline const char* product_name(ProductKind p) {
  return p == ProductKind::Standard ? "standard" : "iterated";
}

struct CheckReport {
  Axiom axiom;
  ProductKind product;
  int n = 0;
  int trials = 0;
  int failures = 0;
  std::string counterexample;  // first failure, empty when none

  bool pass() const { return failures == 0; }
};

namespace detail {

template <class S>
std::string fmt_vector(const Vector<S>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ",";
    os << ScalarTraits<S>::to_string(v[i]);
  }
  os << ")";
  return os.str();
}

template <class S>
std::string fmt_tuple(const std::vector<Vector<S>>& vs) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ",";
    os << fmt_vector(vs[i]);
  }
  os << ")";
  return os.str();
}

template <class S>
S product_of(const InnerSpace<S>& space, ProductKind pk, const Vector<S>& a,
             const Vector<S>& b, std::span<const Vector<S>> conds) {
  return pk == ProductKind::Standard ? standard_n_inner(space, a, b, conds)
                                     : iterated_2_inner(space, a, b, conds);
}

template <class S>
double product_scale(const InnerSpace<S>& space, ProductKind pk, const Vector<S>& a,
                     const Vector<S>& b, std::span<const Vector<S>> conds) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return 1.0;
  } else {
    double ls = pk == ProductKind::Standard ? log_scale_standard(space, a, b, conds)
                                            : log_scale_iterated(space, a, b, conds);
    return std::exp(std::min(ls, 700.0));
  }
}

// Remark-style fixture that violates full conditioner-permutation symmetry
// for the iterated product: x=(1,0,0), u=(1,1,1), v=(2,1,2).
template <class S>
std::vector<Vector<S>> permutation_fixture(std::size_t dim) {
  auto lift = [&](std::initializer_list<long> c) {
    Vector<S> v = Vector<S>::zero(dim);
    std::size_t i = 0;
    for (long x : c) v[i++] = ScalarTraits<S>::from_int(x);
    return v;
  };
  return {lift({1, 0, 0}), lift({1, 1, 1}), lift({2, 1, 2})};
}

}  // namespace detail

// Randomized conformance check of one axiom against one product, with
// deterministic per-trial streams. Returns pass/fail counts plus the first
// counterexample; the caller decides whether a failure was expected.
template <class S>
CheckReport axiom_check(const InnerSpace<S>& space, Axiom ax, ProductKind pk, int n,
                        int samples, std::uint64_t seed, double tol = 1e-9) {
  if (samples < 1) throw InvalidArgument("axiom check needs samples >= 1");
  if (n < 2) throw InvalidArgument("axiom check needs n >= 2");
  const std::size_t m = static_cast<std::size_t>(n) - 1;
  const std::size_t d = space.dim();
  if (d < static_cast<std::size_t>(n))
    throw InvalidArgument("axiom check needs dim >= n");

  CheckReport report{ax, pk, n, samples, 0, ""};
  const std::uint64_t check_id =
      fnv1a64(std::string(axiom_name(ax)) + "/" + product_name(pk));

  auto record = [&](const std::string& why) {
    ++report.failures;
    if (report.counterexample.empty()) report.counterexample = why;
  };

  auto prod = [&](const Vector<S>& a, const Vector<S>& b,
                  std::span<const Vector<S>> conds) {
    return detail::product_of(space, pk, a, b, conds);
  };

  for (int trial = 0; trial < samples; ++trial) {
    SplitMix64 g = SplitMix64::stream(seed, check_id, static_cast<std::uint64_t>(trial));
    switch (ax) {
      case Axiom::I1:
      case Axiom::P1:
      case Axiom::C1: {
        auto tuple = random_independent_vectors(space, g, static_cast<std::size_t>(n), tol);
        std::vector<Vector<S>> conds(tuple.begin() + 1, tuple.end());
        S val = prod(tuple[0], tuple[0], conds);
        double scale = detail::product_scale(space, pk, tuple[0], tuple[0],
                                             std::span<const Vector<S>>(conds));
        bool ok;
        if constexpr (ScalarTraits<S>::is_exact) {
          ok = val > ScalarTraits<S>::zero();
        } else {
          ok = near_nonneg(val, tol, scale);
        }
        if (!ok)
          record("independent tuple " + detail::fmt_tuple(tuple) +
                 " gives non-positive value " + ScalarTraits<S>::to_string(val));
        std::vector<Vector<S>> dep_conds;
        for (std::size_t i = 0; i < m; ++i) dep_conds.push_back(random_vector<S>(g, d));
        Vector<S> v = random_combination(g, dep_conds);
        S val2 = prod(v, v, dep_conds);
        double scale2 =
            detail::product_scale(space, pk, v, v, std::span<const Vector<S>>(dep_conds));
        if (!near_zero(val2, tol, scale2))
          record("dependent tuple gives nonzero value " + ScalarTraits<S>::to_string(val2));
        break;
      }
      case Axiom::I2: {
        std::vector<Vector<S>> tuple;
        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        const bool pinned = pk == ProductKind::Iterated && n == 3 && trial == 0 && d >= 3;
        if (pinned) {
          tuple = detail::permutation_fixture<S>(d);
          perm = {2, 1, 0};
        } else {
          for (int i = 0; i < n; ++i) tuple.push_back(random_vector<S>(g, d));
          for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
          for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1],
                      perm[static_cast<std::size_t>(g.uniform_int(0, static_cast<long>(i) - 1))]);
          if (std::is_sorted(perm.begin(), perm.end()))
            std::swap(perm[0], perm[perm.size() - 1]);
        }
        std::vector<Vector<S>> base_conds(tuple.begin() + 1, tuple.end());
        std::vector<Vector<S>> permuted;
        for (std::size_t i : perm) permuted.push_back(tuple[i]);
        std::vector<Vector<S>> perm_conds(permuted.begin() + 1, permuted.end());
        S lhs = prod(tuple[0], tuple[0], base_conds);
        S rhs = prod(permuted[0], permuted[0], perm_conds);
        if (!near_equal(lhs, rhs, tol))
          record("tuple " + detail::fmt_tuple(tuple) + " permuted to " +
                 detail::fmt_tuple(permuted) + ": values " +
                 ScalarTraits<S>::to_string(lhs) + " vs " + ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::I3:
      case Axiom::P3: {
        Vector<S> v = random_vector<S>(g, d), w = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        S lhs = prod(v, w, conds), rhs = prod(w, v, conds);
        if (!near_equal(lhs, rhs, tol))
          record("symmetry broken: " + ScalarTraits<S>::to_string(lhs) + " vs " +
                 ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::I4:
      case Axiom::P4: {
        Vector<S> v = random_vector<S>(g, d), w = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        S alpha = random_scalar<S>(g);
        S lhs = prod(alpha * v, w, conds);
        S rhs = alpha * prod(v, w, conds);
        if (!near_equal(lhs, rhs, tol))
          record("homogeneity broken for alpha=" + ScalarTraits<S>::to_string(alpha) +
                 ": " + ScalarTraits<S>::to_string(lhs) + " vs " +
                 ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::I5:
      case Axiom::P5: {
        Vector<S> v = random_vector<S>(g, d), v2 = random_vector<S>(g, d),
                  w = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        S lhs = prod(v + v2, w, conds);
        S rhs = prod(v, w, conds) + prod(v2, w, conds);
        if (!near_equal(lhs, rhs, tol))
          record("additivity broken: " + ScalarTraits<S>::to_string(lhs) + " vs " +
                 ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::I6: {
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        Vector<S> w = random_vector<S>(g, d);
        Vector<S> v;
        if (trial % 2 == 0 || m < 2) {
          v = random_combination(g, conds);
        } else {
          std::vector<Vector<S>> head(conds.begin(), conds.end() - 1);
          conds.back() = random_combination(g, head);
          v = random_vector<S>(g, d);
        }
        S val = prod(v, w, conds);
        double scale =
            detail::product_scale(space, pk, v, w, std::span<const Vector<S>>(conds));
        if (!near_zero(val, tol, scale))
          record("dependent left tuple gives nonzero value " +
                 ScalarTraits<S>::to_string(val));
        break;
      }
      case Axiom::P2:
      case Axiom::C2: {
        Vector<S> x = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        std::vector<Vector<S>> swapped;
        swapped.push_back(x);
        for (std::size_t i = 1; i < m; ++i) swapped.push_back(conds[i]);
        S lhs = prod(x, x, conds);
        S rhs = prod(conds[0], conds[0], swapped);
        if (!near_equal(lhs, rhs, tol))
          record("interchangeability broken: " + ScalarTraits<S>::to_string(lhs) +
                 " vs " + ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::C3: {
        Vector<S> x = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        S alpha = random_scalar<S>(g);
        S lhs = prod(alpha * x, alpha * x, conds);
        S rhs = alpha * alpha * prod(x, x, conds);
        if (!near_equal(lhs, rhs, tol))
          record("norm scaling broken (squared): " + ScalarTraits<S>::to_string(lhs) +
                 " vs " + ScalarTraits<S>::to_string(rhs));
        break;
      }
      case Axiom::C4: {
        Vector<S> x = random_vector<S>(g, d), y = random_vector<S>(g, d);
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(random_vector<S>(g, d));
        S a = prod(x + y, x + y, conds);
        S b = prod(x, x, conds);
        S c = prod(y, y, conds);
        bool ok;
        if constexpr (ScalarTraits<S>::is_exact) {
          // sqrt(a) <= sqrt(b) + sqrt(c), rationally: either a <= b + c, or
          // (a - b - c)^2 <= 4 b c.
          S excess = a - b - c;
          ok = excess <= ScalarTraits<S>::zero() || excess * excess <= 4 * b * c;
        } else {
          double ra = std::sqrt(std::max<double>(a, 0.0));
          double rb = std::sqrt(std::max<double>(b, 0.0));
          double rc = std::sqrt(std::max<double>(c, 0.0));
          ok = ra <= rb + rc + tol * std::max(1.0, rb + rc);
        }
        if (!ok)
          record("triangle inequality broken: squared norms " +
                 ScalarTraits<S>::to_string(a) + ", " + ScalarTraits<S>::to_string(b) +
                 ", " + ScalarTraits<S>::to_string(c));
        break;
      }
    }
  }
  return report;
}

template <class S>
CheckReport axiom_check(const InnerSpace<S>& space, Axiom ax, int n, int samples,
                        std::uint64_t seed, double tol = 1e-9) {
  return axiom_check(space, ax, default_product(ax), n, samples, seed, tol);
}

}  // namespace ninner
