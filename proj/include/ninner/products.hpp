#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ninner/linalg.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

// Argument tuple (x, y | x_n, ..., x_2). Conditioners are stored in the
// written right-to-left order: element 0 is x_n, the one the iterated
// recursion peels first. The standard product is invariant under conditioner
// permutations; the iterated one and its E factor are NOT, so the order of
// this list matters.
template <class S>
struct ConditionedPair {
  Vector<S> x, y;
  std::vector<Vector<S>> conditioners;
};

// Standard 2-inner product <x,y|z> = <x,y><z,z> - <x,z><z,y>.
template <class S>
S standard_2_inner(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
                   const Vector<S>& z) {
  return space.inner(x, y) * space.inner(z, z) - space.inner(x, z) * space.inner(z, y);
}

namespace detail {

template <class S>
void check_pair_dims(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
                     std::span<const Vector<S>> conds) {
  if (x.dim() != space.dim()) throw DimensionMismatch(space.dim(), x.dim());
  if (y.dim() != space.dim()) throw DimensionMismatch(space.dim(), y.dim());
  for (const auto& c : conds)
    if (c.dim() != space.dim()) throw DimensionMismatch(space.dim(), c.dim());
}

// Evaluates the iterated 2-inner product by the 2x2 determinant recursion,
// memoized on (left argument, right argument, peel depth). The memo is local
// to one evaluation; without it the call tree has Theta(4^n) leaves.
template <class S>
class IteratedEval {
 public:
  IteratedEval(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
               std::span<const Vector<S>> conds)
      : space_(space), x_(x), y_(y), conds_(conds) {}

  S run() { return eval(kX, kY, 0); }

 private:
  static constexpr int kX = -1;
  static constexpr int kY = -2;

  const Vector<S>& arg(int id) const {
    if (id == kX) return x_;
    if (id == kY) return y_;
    return conds_[static_cast<std::size_t>(id)];
  }

  static std::uint64_t key(int a, int b, std::size_t k) {
    return (static_cast<std::uint64_t>(k) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a + 2)) << 16) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(b + 2));
  }

  S eval(int a, int b, std::size_t k) {
    const std::uint64_t id = key(a, b, k);
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    S value = ScalarTraits<S>::zero();
    if (k + 1 == conds_.size()) {
      value = standard_2_inner(space_, arg(a), arg(b), conds_[k]);
    } else {
      const int peel = static_cast<int>(k);
      S t11 = eval(a, b, k + 1);
      S t22 = eval(peel, peel, k + 1);
      S t12 = eval(a, peel, k + 1);
      S t21 = eval(peel, b, k + 1);
      value = t11 * t22 - t12 * t21;
    }
    memo_.emplace(id, value);
    return value;
  }

  const InnerSpace<S>& space_;
  const Vector<S>& x_;
  const Vector<S>& y_;
  std::span<const Vector<S>> conds_;
  std::map<std::uint64_t, S> memo_;
};

// Homogeneity scales for float-mode tolerances, kept in log space so n = 8
// does not overflow a double. The iterated product has degree 2 in x and y
// and degree 2^(k+1) in the k-th conditioner; the standard product has
// degree 1 in x and y and 2 in each conditioner.
inline double log_term(double squared_norm) {
  return std::log(std::max(std::fabs(squared_norm), DBL_MIN));
}

template <class S>
double log_scale_iterated(const InnerSpace<S>& space, const Vector<S>& x,
                          const Vector<S>& y, std::span<const Vector<S>> conds) {
  double lx = log_term(ScalarTraits<S>::to_double(space.norm_squared(x)));
  double ly = log_term(ScalarTraits<S>::to_double(space.norm_squared(y)));
  double ls = 0.5 * lx + 0.5 * ly;
  double w = 2.0;
  for (const auto& c : conds) {
    ls += (w / 2.0) * log_term(ScalarTraits<S>::to_double(space.norm_squared(c)));
    w *= 2.0;
  }
  return ls;
}

template <class S>
double log_scale_standard(const InnerSpace<S>& space, const Vector<S>& x,
                          const Vector<S>& y, std::span<const Vector<S>> conds) {
  double ls = 0.5 * log_term(ScalarTraits<S>::to_double(space.norm_squared(x))) +
              0.5 * log_term(ScalarTraits<S>::to_double(space.norm_squared(y)));
  for (const auto& c : conds)
    ls += log_term(ScalarTraits<S>::to_double(space.norm_squared(c)));
  return ls;
}

}  // namespace detail

// Standard n-inner product: the n x n determinant whose first row is
// <x,y>, <x,c_0>, ..., and whose later rows are indexed by the conditioners.
// An empty conditioner list falls back to the plain inner product (the n=1
// convention used by the representation factor).
template <class S>
S standard_n_inner(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
                   std::span<const Vector<S>> conds) {
  detail::check_pair_dims(space, x, y, conds);
  const std::size_t m = conds.size();
  if (m == 0) return space.inner(x, y);
  std::vector<S> e;
  e.reserve((m + 1) * (m + 1));
  e.push_back(space.inner(x, y));
  for (std::size_t j = 0; j < m; ++j) e.push_back(space.inner(x, conds[j]));
  for (std::size_t i = 0; i < m; ++i) {
    e.push_back(space.inner(conds[i], y));
    for (std::size_t j = 0; j < m; ++j) e.push_back(space.inner(conds[i], conds[j]));
  }
  return determinant(SquareMatrix<S>(m + 1, std::move(e)));
}

template <class S>
S standard_n_inner(const InnerSpace<S>& space, const ConditionedPair<S>& p) {
  return standard_n_inner(space, p.x, p.y, std::span<const Vector<S>>(p.conditioners));
}

// Iterated 2-inner product (the standard weak n-inner product), defined by
// the 2x2 recursion that peels conditioners front to back.
template <class S>
S iterated_2_inner(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
                   std::span<const Vector<S>> conds) {
  if (conds.empty())
    throw InvalidArgument("iterated 2-inner product needs at least one conditioner");
  detail::check_pair_dims(space, x, y, conds);
  return detail::IteratedEval<S>(space, x, y, conds).run();
}

template <class S>
S iterated_2_inner(const InnerSpace<S>& space, const ConditionedPair<S>& p) {
  return iterated_2_inner(space, p.x, p.y, std::span<const Vector<S>>(p.conditioners));
}

// Norms report the exact squared value alongside a double approximation of
// the root: square roots of rationals are generally irrational, so all
// exact-mode identity checks are phrased on the squared field.
template <class S>
struct NormValue {
  S squared;
  double root;
};

namespace detail {

template <class S>
double root_of(const S& squared, double log_scale, double tol) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)log_scale;
    (void)tol;
    if (squared < ScalarTraits<S>::zero())
      throw InternalConsistency("exact squared norm is negative: " +
                                ScalarTraits<S>::to_string(squared));
    return std::sqrt(ScalarTraits<S>::to_double(squared));
  } else {
    double sq = squared;
    if (sq >= 0.0) return std::sqrt(sq);
    // Clamp roundoff-sized negatives; anything larger means non-PSD input
    // or a bug.
    if (std::log(-sq) <= std::log(tol) + log_scale) return 0.0;
    throw InvalidArgument("squared norm " + ScalarTraits<S>::to_string(squared) +
                          " is negative beyond tolerance");
  }
}

}  // namespace detail

template <class S>
NormValue<S> standard_n_norm(const InnerSpace<S>& space, const Vector<S>& v,
                             std::span<const Vector<S>> conds, double tol = 1e-9) {
  S sq = standard_n_inner(space, v, v, conds);
  double ls = detail::log_scale_standard(space, v, v, conds);
  return NormValue<S>{sq, detail::root_of(sq, ls, tol)};
}

template <class S>
NormValue<S> weak_n_norm(const InnerSpace<S>& space, const Vector<S>& v,
                         std::span<const Vector<S>> conds, double tol = 1e-9) {
  S sq = iterated_2_inner(space, v, v, conds);
  double ls = detail::log_scale_iterated(space, v, v, conds);
  return NormValue<S>{sq, detail::root_of(sq, ls, tol)};
}

// E factor of the representation theorem: with conditioners [x_n,...,x_2],
// E_2 = 1 and E_n = prod over the inner conditioners c_i (i >= 1) of
// <c_i, c_i | c_{i+1}, ...> raised to 2^(i-1). The innermost factor reduces
// to the plain <x_2,x_2> via the empty-conditioner convention.
template <class S>
S e_factor(const InnerSpace<S>& space, std::span<const Vector<S>> conds) {
  if (conds.empty())
    throw InvalidArgument("E factor needs at least one conditioner");
  const std::size_t m = conds.size();
  S acc = ScalarTraits<S>::one();
  for (std::size_t i = 1; i < m; ++i) {
    S base = standard_n_inner(space, conds[i], conds[i], conds.subspan(i + 1));
    acc *= scalar_pow_u(base, 1u << (i - 1));
  }
  return acc;
}

template <class S>
S e_factor(const InnerSpace<S>& space, const std::vector<Vector<S>>& conds) {
  return e_factor(space, std::span<const Vector<S>>(conds));
}

// All three quantities of the representation identity, computed by
// independent routes. value = e_factor * standard_value is the invariant.
template <class S>
struct ProductReport {
  S value;
  S e_factor;
  S standard_value;

  S residual() const { return value - e_factor * standard_value; }
};

template <class S>
ProductReport<S> representation_report(const InnerSpace<S>& space,
                                       const ConditionedPair<S>& p, double tol = 1e-9) {
  std::span<const Vector<S>> conds(p.conditioners);
  ProductReport<S> r{iterated_2_inner(space, p.x, p.y, conds), e_factor(space, conds),
                     standard_n_inner(space, p.x, p.y, conds)};
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    if (!r.residual().is_zero())
      throw InternalConsistency(
          "representation identity violated: value=" + ScalarTraits<S>::to_string(r.value) +
          " e=" + ScalarTraits<S>::to_string(r.e_factor) +
          " standard=" + ScalarTraits<S>::to_string(r.standard_value));
  }
  return r;
}

// Schwarz gap (x,x|...)(y,y|...) - (x,y|...)^2 for the iterated product;
// nonnegative for every input.
template <class S>
S schwarz_gap(const InnerSpace<S>& space, const ConditionedPair<S>& p) {
  std::span<const Vector<S>> conds(p.conditioners);
  S xx = iterated_2_inner(space, p.x, p.x, conds);
  S yy = iterated_2_inner(space, p.y, p.y, conds);
  S xy = iterated_2_inner(space, p.x, p.y, conds);
  return xx * yy - xy * xy;
}

namespace detail {

// Decides whether y = mu*x + u with mu >= 0 and u in span(conds) by row
// reducing [x | conds | y]. When the mu column is free, or depends on a free
// column, some nonnegative mu works; otherwise mu is pinned and its sign
// decides.
template <class S>
bool nonneg_leading_combination(const Vector<S>& x, std::span<const Vector<S>> conds,
                                const Vector<S>& y, double tol) {
  const std::size_t d = x.dim();
  const std::size_t cols = conds.size() + 1;  // mu column + conditioner columns
  std::vector<std::vector<S>> mat(d, std::vector<S>(cols + 1, ScalarTraits<S>::zero()));
  double max_abs = 1.0;
  for (std::size_t r = 0; r < d; ++r) {
    mat[r][0] = x[r];
    for (std::size_t c = 0; c < conds.size(); ++c) mat[r][c + 1] = conds[c][r];
    mat[r][cols] = y[r];
    for (std::size_t c = 0; c <= cols; ++c)
      max_abs = std::max(max_abs, std::fabs(ScalarTraits<S>::to_double(mat[r][c])));
  }
  const double zero_tol = tol * max_abs;
  auto is_negligible = [&](const S& v) {
    if constexpr (ScalarTraits<S>::is_exact) {
      return v.is_zero();
    } else {
      return std::fabs(v) <= zero_tol;
    }
  };

  std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < d; ++col) {
    std::size_t pr = SIZE_MAX;
    if constexpr (ScalarTraits<S>::is_exact) {
      for (std::size_t r = rank; r < d; ++r)
        if (!mat[r][col].is_zero()) {
          pr = r;
          break;
        }
    } else {
      double best = zero_tol;
      for (std::size_t r = rank; r < d; ++r) {
        double v = std::fabs(ScalarTraits<S>::to_double(mat[r][col]));
        if (v > best) {
          best = v;
          pr = r;
        }
      }
    }
    if (pr == SIZE_MAX) continue;
    std::swap(mat[rank], mat[pr]);
    S inv_pivot = ScalarTraits<S>::one() / mat[rank][col];
    for (std::size_t c = col; c <= cols; ++c) mat[rank][c] *= inv_pivot;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == rank || is_negligible(mat[r][col])) continue;
      S f = mat[r][col];
      for (std::size_t c = col; c <= cols; ++c) mat[r][c] -= f * mat[rank][c];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }

  for (std::size_t r = rank; r < d; ++r)
    if (!is_negligible(mat[r][cols])) return false;  // inconsistent: y not in span

  if (pivot_row_of_col[0] == SIZE_MAX) return true;  // mu is a free variable
  const std::size_t r0 = pivot_row_of_col[0];
  for (std::size_t col = 1; col < cols; ++col)
    if (pivot_row_of_col[col] == SIZE_MAX && !is_negligible(mat[r0][col]))
      return true;  // mu trades off against a free conditioner coefficient
  const S mu = mat[r0][cols];
  if constexpr (ScalarTraits<S>::is_exact) {
    return mu >= ScalarTraits<S>::zero();
  } else {
    return mu >= -zero_tol;
  }
}

}  // namespace detail

// Equality-case detector for the Schwarz inequality: true iff y - mu*x lies
// in the conditioner span for some mu >= 0.
template <class S>
bool schwarz_equality_case(const InnerSpace<S>& space, const ConditionedPair<S>& p,
                           double tol = 1e-9) {
  detail::check_pair_dims(space, p.x, p.y, std::span<const Vector<S>>(p.conditioners));
  return detail::nonneg_leading_combination(
      p.x, std::span<const Vector<S>>(p.conditioners), p.y, tol);
}

}  // namespace ninner
