#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ninner/errors.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

template <class S>
struct Vector {
  std::vector<S> coords;

  Vector() = default;
  explicit Vector(std::vector<S> c) : coords(std::move(c)) {}
  Vector(std::initializer_list<S> c) : coords(c) {}

  static Vector zero(std::size_t dim) {
    return Vector(std::vector<S>(dim, ScalarTraits<S>::zero()));
  }

  std::size_t dim() const { return coords.size(); }
  const S& operator[](std::size_t i) const { return coords[i]; }
  S& operator[](std::size_t i) { return coords[i]; }

  bool is_zero() const {
    for (const S& c : coords)
      if (!ScalarTraits<S>::is_zero(c)) return false;
    return true;
  }
};

template <class S>
Vector<S> operator+(const Vector<S>& a, const Vector<S>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  Vector<S> r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

template <class S>
Vector<S> operator-(const Vector<S>& a, const Vector<S>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  Vector<S> r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

template <class S>
Vector<S> operator*(const S& s, const Vector<S>& v) {
  Vector<S> r = v;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] *= s;
  return r;
}

template <class S>
bool operator==(const Vector<S>& a, const Vector<S>& b) {
  return a.coords == b.coords;
}

// Dense square matrix, row-major.
template <class S>
class SquareMatrix {
 public:
  SquareMatrix() : order_(0) {}
  SquareMatrix(std::size_t order, std::vector<S> entries)
      : order_(order), e_(std::move(entries)) {
    if (order_ == 0) throw InvalidArgument("matrix order must be positive");
    if (e_.size() != order_ * order_)
      throw InvalidArgument("matrix entries: expected " +
                            std::to_string(order_ * order_) + ", got " +
                            std::to_string(e_.size()));
  }

  static SquareMatrix identity(std::size_t order) {
    std::vector<S> e(order * order, ScalarTraits<S>::zero());
    for (std::size_t i = 0; i < order; ++i) e[i * order + i] = ScalarTraits<S>::one();
    return SquareMatrix(order, std::move(e));
  }

  std::size_t order() const { return order_; }
  const S& at(std::size_t i, std::size_t j) const { return e_[i * order_ + j]; }
  S& at(std::size_t i, std::size_t j) { return e_[i * order_ + j]; }
  const std::vector<S>& entries() const { return e_; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < order_; ++j) std::swap(at(a, j), at(b, j));
  }

 private:
  std::size_t order_;
  std::vector<S> e_;
};

namespace detail {

// Fraction-free (Bareiss) elimination. Every division is exact, which keeps
// intermediate rationals from growing beyond the final minors.
template <class S>
S determinant_bareiss(SquareMatrix<S> a) {
  const std::size_t n = a.order();
  bool negate = false;
  S prev = ScalarTraits<S>::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && ScalarTraits<S>::is_zero(a.at(pivot, k))) ++pivot;
    if (pivot == n) return ScalarTraits<S>::zero();
    if (pivot != k) {
      a.swap_rows(pivot, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  S det = a.at(n - 1, n - 1);
  return negate ? -det : det;
}

template <class S>
S determinant_partial_pivot(SquareMatrix<S> a) {
  const std::size_t n = a.order();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::fabs(static_cast<double>(a.at(k, k)));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::fabs(static_cast<double>(a.at(i, k)));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      a.swap_rows(pivot, k);
      det = -det;
    }
    det *= static_cast<double>(a.at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = static_cast<double>(a.at(i, k)) / static_cast<double>(a.at(k, k));
      for (std::size_t j = k; j < n; ++j)
        a.at(i, j) -= f * static_cast<double>(a.at(k, j));
    }
  }
  return det;
}

}  // namespace detail

template <class S>
S determinant(const SquareMatrix<S>& m) {
  if (m.order() == 1) return m.at(0, 0);
  if constexpr (ScalarTraits<S>::is_exact) {
    return detail::determinant_bareiss(m);
  } else {
    return detail::determinant_partial_pivot(m);
  }
}

// Ambient inner-product structure: dimension plus a symmetric positive
// definite weight matrix W, giving <x,y> = x^T W y. The identity weight is
// the plain dot product.
template <class S>
class InnerSpace {
 public:
  explicit InnerSpace(SquareMatrix<S> weight, double tol = 1e-9)
      : w_(std::move(weight)) {
    const std::size_t d = w_.order();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (!near_equal(w_.at(i, j), w_.at(j, i), tol))
          throw InvalidArgument("weight matrix is not symmetric at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    for (std::size_t k = 1; k <= d; ++k) {
      std::vector<S> sub;
      sub.reserve(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.push_back(w_.at(i, j));
      S minor_det = determinant(SquareMatrix<S>(k, std::move(sub)));
      if (!(minor_det > ScalarTraits<S>::zero()))
        throw InvalidArgument("weight matrix is not positive definite (leading minor " +
                              std::to_string(k) + " is not > 0)");
    }
    identity_ = true;
    for (std::size_t i = 0; i < d && identity_; ++i)
      for (std::size_t j = 0; j < d && identity_; ++j) {
        const S expect = i == j ? ScalarTraits<S>::one() : ScalarTraits<S>::zero();
        if (!(w_.at(i, j) == expect)) identity_ = false;
      }
  }

  static InnerSpace euclidean(std::size_t dim) {
    return InnerSpace(SquareMatrix<S>::identity(dim), kTrustedTag{});
  }

  std::size_t dim() const { return w_.order(); }
  const SquareMatrix<S>& weight() const { return w_; }

  S inner(const Vector<S>& x, const Vector<S>& y) const {
    if (x.dim() != dim()) throw DimensionMismatch(dim(), x.dim());
    if (y.dim() != dim()) throw DimensionMismatch(dim(), y.dim());
    S acc = ScalarTraits<S>::zero();
    if (identity_) {
      for (std::size_t i = 0; i < dim(); ++i) acc += x[i] * y[i];
      return acc;
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      S row = ScalarTraits<S>::zero();
      for (std::size_t j = 0; j < dim(); ++j) row += w_.at(i, j) * y[j];
      acc += x[i] * row;
    }
    return acc;
  }

  S norm_squared(const Vector<S>& v) const { return inner(v, v); }

 private:
  struct kTrustedTag {};
  InnerSpace(SquareMatrix<S> weight, kTrustedTag) : w_(std::move(weight)), identity_(true) {}

  SquareMatrix<S> w_;
  bool identity_ = false;
};

template <class S>
S inner_product(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y) {
  return space.inner(x, y);
}

template <class S>
SquareMatrix<S> gram_matrix(const InnerSpace<S>& space, std::span<const Vector<S>> vs) {
  if (vs.empty()) throw InvalidArgument("gram matrix of an empty vector list");
  const std::size_t k = vs.size();
  std::vector<S> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e.push_back(space.inner(vs[i], vs[j]));
  return SquareMatrix<S>(k, std::move(e));
}

template <class S>
SquareMatrix<S> gram_matrix(const InnerSpace<S>& space, const std::vector<Vector<S>>& vs) {
  return gram_matrix(space, std::span<const Vector<S>>(vs));
}

template <class S>
S gram_determinant(const InnerSpace<S>& space, std::span<const Vector<S>> vs) {
  return determinant(gram_matrix(space, vs));
}

template <class S>
S gram_determinant(const InnerSpace<S>& space, const std::vector<Vector<S>>& vs) {
  return gram_determinant(space, std::span<const Vector<S>>(vs));
}

// Exact mode: Gram determinant is zero iff the vectors are dependent.
// Float mode: compares against tol scaled by the product of squared norms,
// since Gram determinants grow with that product.
template <class S>
bool is_linearly_dependent(const InnerSpace<S>& space, std::span<const Vector<S>> vs,
                           double tol = 1e-9) {
  if (vs.empty()) throw InvalidArgument("dependence test on an empty vector list");
  if (vs.size() > space.dim()) return true;
  S g = gram_determinant(space, vs);
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    return g.is_zero();
  } else {
    double scale = 1.0;
    for (const auto& v : vs) scale *= std::max(space.norm_squared(v), 0.0);
    return g <= tol * std::max(scale, 0.0);
  }
}

template <class S>
bool is_linearly_dependent(const InnerSpace<S>& space, const std::vector<Vector<S>>& vs,
                           double tol = 1e-9) {
  return is_linearly_dependent(space, std::span<const Vector<S>>(vs), tol);
}

}  // namespace ninner
