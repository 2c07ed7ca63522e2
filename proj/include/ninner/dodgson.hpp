#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "ninner/linalg.hpp"
#include "ninner/products.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

// Sub-determinant selector in the classical compact notation: 1-based row and
// column index lists, strictly increasing, of equal length.
struct MinorSpec {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

namespace detail {

// Minor with rows/cols taken in the given order (not necessarily sorted), so
// the value carries the sign of the row and column permutations. This is the
// helper the cyclic-shift sign bookkeeping rests on.
template <class S>
S generalized_minor(const SquareMatrix<S>& m, std::span<const std::size_t> rows0,
                    std::span<const std::size_t> cols0) {
  const std::size_t k = rows0.size();
  std::vector<S> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e.push_back(m.at(rows0[i], cols0[j]));
  return determinant(SquareMatrix<S>(k, std::move(e)));
}

inline std::vector<std::size_t> iota_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> r(last - first + 1);
  std::iota(r.begin(), r.end(), first);
  return r;
}

// Hadamard-style magnitude bound for a sub-determinant; used only to scale
// float-mode residual tolerances.
template <class S>
double minor_scale(const SquareMatrix<S>& m, std::span<const std::size_t> rows0,
                   std::span<const std::size_t> cols0) {
  double bound = 1.0;
  for (std::size_t i : rows0) {
    double row_sq = 0.0;
    for (std::size_t j : cols0) {
      double v = ScalarTraits<S>::to_double(m.at(i, j));
      row_sq += v * v;
    }
    bound *= std::sqrt(row_sq);
  }
  return bound;
}

}  // namespace detail

template <class S>
S minor(const SquareMatrix<S>& m, const MinorSpec& spec) {
  if (spec.rows.empty() || spec.rows.size() != spec.cols.size())
    throw InvalidArgument("minor spec needs equally many rows and columns");
  auto validate = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 1 || idx[i] > m.order())
        throw InvalidArgument("minor index " + std::to_string(idx[i]) +
                              " out of range for order " + std::to_string(m.order()));
      if (i > 0 && idx[i] <= idx[i - 1])
        throw InvalidArgument("minor indices must be strictly increasing");
    }
  };
  validate(spec.rows);
  validate(spec.cols);
  std::vector<std::size_t> rows0(spec.rows), cols0(spec.cols);
  for (auto& r : rows0) --r;
  for (auto& c : cols0) --c;
  return detail::generalized_minor(m, std::span<const std::size_t>(rows0),
                                   std::span<const std::size_t>(cols0));
}

namespace detail {

template <class S>
struct DodgsonSides {
  S lhs;
  S rhs;
  double scale;  // float-mode magnitude of the terms involved
};

// Identity with the leading (n-2)x(n-2) block as the interior factor:
//   |A_{1..n-2}| * |A|  =  | M(1..n-1 ; 1..n-1)      M(1..n-1 ; 1..n-2,n) |
//                          | M(1..n-2,n ; 1..n-1)    M(1..n-2,n ; 1..n-2,n) |
template <class S>
DodgsonSides<S> dodgson_sides_leading(const SquareMatrix<S>& m) {
  const std::size_t n = m.order();
  auto lead = iota_range(0, n - 3);            // rows/cols 1..n-2 (1-based)
  auto head = iota_range(0, n - 2);            // 1..n-1
  auto head_last = iota_range(0, n - 3);       // 1..n-2, n
  head_last.push_back(n - 1);

  S interior = generalized_minor(m, std::span<const std::size_t>(lead),
                                 std::span<const std::size_t>(lead));
  S det_a = determinant(m);
  S m11 = generalized_minor(m, std::span<const std::size_t>(head),
                            std::span<const std::size_t>(head));
  S m12 = generalized_minor(m, std::span<const std::size_t>(head),
                            std::span<const std::size_t>(head_last));
  S m21 = generalized_minor(m, std::span<const std::size_t>(head_last),
                            std::span<const std::size_t>(head));
  S m22 = generalized_minor(m, std::span<const std::size_t>(head_last),
                            std::span<const std::size_t>(head_last));
  double scale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact) {
    scale = minor_scale(m, std::span<const std::size_t>(lead),
                        std::span<const std::size_t>(lead)) *
                minor_scale(m, std::span<const std::size_t>(iota_range(0, n - 1)),
                            std::span<const std::size_t>(iota_range(0, n - 1))) +
            minor_scale(m, std::span<const std::size_t>(head),
                        std::span<const std::size_t>(head)) *
                minor_scale(m, std::span<const std::size_t>(head_last),
                            std::span<const std::size_t>(head_last)) +
            minor_scale(m, std::span<const std::size_t>(head),
                        std::span<const std::size_t>(head_last)) *
                minor_scale(m, std::span<const std::size_t>(head_last),
                            std::span<const std::size_t>(head));
  }
  return {interior * det_a, m11 * m22 - m12 * m21, scale};
}

// Variant with the central (n-2)x(n-2) block as the interior factor; the
// 2x2 right-hand side pairs the four contiguous (n-1)x(n-1) corner minors.
template <class S>
DodgsonSides<S> dodgson_sides_central(const SquareMatrix<S>& m) {
  const std::size_t n = m.order();
  auto center = iota_range(1, n - 2);  // rows/cols 2..n-1 (1-based)
  auto head = iota_range(0, n - 2);    // 1..n-1
  auto tail = iota_range(1, n - 1);    // 2..n

  S interior = generalized_minor(m, std::span<const std::size_t>(center),
                                 std::span<const std::size_t>(center));
  S det_a = determinant(m);
  S m11 = generalized_minor(m, std::span<const std::size_t>(head),
                            std::span<const std::size_t>(head));
  S m12 = generalized_minor(m, std::span<const std::size_t>(head),
                            std::span<const std::size_t>(tail));
  S m21 = generalized_minor(m, std::span<const std::size_t>(tail),
                            std::span<const std::size_t>(head));
  S m22 = generalized_minor(m, std::span<const std::size_t>(tail),
                            std::span<const std::size_t>(tail));
  double scale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact) {
    auto all = iota_range(0, n - 1);
    scale = minor_scale(m, std::span<const std::size_t>(center),
                        std::span<const std::size_t>(center)) *
                minor_scale(m, std::span<const std::size_t>(all),
                            std::span<const std::size_t>(all)) +
            minor_scale(m, std::span<const std::size_t>(head),
                        std::span<const std::size_t>(head)) *
                minor_scale(m, std::span<const std::size_t>(tail),
                            std::span<const std::size_t>(tail)) +
            minor_scale(m, std::span<const std::size_t>(head),
                        std::span<const std::size_t>(tail)) *
                minor_scale(m, std::span<const std::size_t>(tail),
                            std::span<const std::size_t>(head));
  }
  return {interior * det_a, m11 * m22 - m12 * m21, scale};
}

}  // namespace detail

// Residual (always zero) of the Dodgson-type identity anchored at the
// leading block.
template <class S>
S dodgson_residual_e40(const SquareMatrix<S>& m) {
  if (m.order() < 3) throw InvalidArgument("Dodgson identity needs order >= 3");
  auto sides = detail::dodgson_sides_leading(m);
  return sides.lhs - sides.rhs;
}

// Residual (always zero) of the central-block variant the condensation
// scheme divides by.
template <class S>
S dodgson_residual_e41(const SquareMatrix<S>& m) {
  if (m.order() < 3) throw InvalidArgument("Dodgson identity needs order >= 3");
  auto sides = detail::dodgson_sides_central(m);
  return sides.lhs - sides.rhs;
}

// Float-mode magnitude scale matching the residuals above.
template <class S>
double dodgson_residual_scale(const SquareMatrix<S>& m) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)m;
    return 1.0;
  } else {
    return std::max(detail::dodgson_sides_leading(m).scale,
                    detail::dodgson_sides_central(m).scale);
  }
}

namespace detail {

// One full condensation pipeline; nullopt when an interior divisor is zero.
template <class S>
std::optional<S> condense(const SquareMatrix<S>& a) {
  const std::size_t n = a.order();
  if (n == 1) return a.at(0, 0);
  SquareMatrix<S> prev = a;
  std::size_t cur_order = n - 1;
  std::vector<S> cur_e;
  cur_e.reserve(cur_order * cur_order);
  for (std::size_t i = 0; i < cur_order; ++i)
    for (std::size_t j = 0; j < cur_order; ++j)
      cur_e.push_back(a.at(i, j) * a.at(i + 1, j + 1) - a.at(i, j + 1) * a.at(i + 1, j));
  SquareMatrix<S> cur(cur_order, std::move(cur_e));
  while (cur.order() > 1) {
    const std::size_t k = cur.order() - 1;
    std::vector<S> next_e;
    next_e.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const S& divisor = prev.at(i + 1, j + 1);
        if (ScalarTraits<S>::is_zero(divisor)) return std::nullopt;
        next_e.push_back((cur.at(i, j) * cur.at(i + 1, j + 1) -
                          cur.at(i, j + 1) * cur.at(i + 1, j)) /
                         divisor);
      }
    prev = std::move(cur);
    cur = SquareMatrix<S>(k, std::move(next_e));
  }
  return cur.at(0, 0);
}

template <class S>
SquareMatrix<S> rotate_rows_up(const SquareMatrix<S>& a) {
  const std::size_t n = a.order();
  std::vector<S> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = (i + 1) % n;
    for (std::size_t j = 0; j < n; ++j) e.push_back(a.at(src, j));
  }
  return SquareMatrix<S>(n, std::move(e));
}

}  // namespace detail

// Determinant by Dodgson condensation. Zero interior divisors trigger a
// cyclic row rotation (det picks up (-1)^(n-1) per rotation); if zeros
// persist after order-many rotations the core determinant takes over, so the
// function is total and always agrees with determinant().
template <class S>
S condensation_determinant(const SquareMatrix<S>& m) {
  const std::size_t n = m.order();
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  SquareMatrix<S> work = m;
  bool negate = false;
  for (std::size_t rot = 0; rot < n; ++rot) {
    if (auto v = detail::condense(work)) return negate ? -*v : *v;
    work = detail::rotate_rows_up(work);
    if (n % 2 == 0) negate = !negate;  // cyclic shift of n rows has sign (-1)^(n-1)
  }
  return determinant(m);
}

// Residual of the bridge identity behind the representation theorem's
// induction step: with conditioners [c_0, c_1, ..., c_{m-1}],
//   | <x,y|rest>    <x,c_0|rest>   |
//   | <c_0,y|rest>  <c_0,c_0|rest> |  =  <x,y|all> * <c_1,c_1|tail>,
// where rest drops c_0 and tail drops c_0, c_1.
template <class S>
S representation_bridge_check(const InnerSpace<S>& space, const ConditionedPair<S>& p) {
  if (p.conditioners.size() < 2)
    throw InvalidArgument("bridge identity needs at least two conditioners");
  std::span<const Vector<S>> all(p.conditioners);
  auto rest = all.subspan(1);
  auto tail = all.subspan(2);
  const Vector<S>& c0 = p.conditioners[0];
  const Vector<S>& c1 = p.conditioners[1];
  S lhs = standard_n_inner(space, p.x, p.y, rest) * standard_n_inner(space, c0, c0, rest) -
          standard_n_inner(space, p.x, c0, rest) * standard_n_inner(space, c0, p.y, rest);
  S rhs = standard_n_inner(space, p.x, p.y, all) * standard_n_inner(space, c1, c1, tail);
  return lhs - rhs;
}

}  // namespace ninner
