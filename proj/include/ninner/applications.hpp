#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ninner/linalg.hpp"
#include "ninner/products.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

namespace detail {

template <class S>
void consistency(bool ok, const std::string& what) {
  if (!ok) throw InternalConsistency(what);
}

}  // namespace detail

// Slack of the Lupu-Schwarz inequality,
//   |x|^2<w,z>^2 + |w|^2<z,x>^2 + |z|^2<x,w>^2
//     <= |x|^2|w|^2|z|^2 + 2<w,z><z,x><x,w>,
// returned as RHS - LHS (always >= 0). Cross-checked against the iterated
// product via gap * |z|^2 = (x,x|w,z).
template <class S>
S lupu_gap(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& w,
           const Vector<S>& z, double tol = 1e-9) {
  const S xx = space.inner(x, x), ww = space.inner(w, w), zz = space.inner(z, z);
  const S wz = space.inner(w, z), zx = space.inner(z, x), xw = space.inner(x, w);
  S gap = xx * ww * zz + 2 * wz * zx * xw - xx * wz * wz - ww * zx * zx - zz * xw * xw;
  std::vector<Vector<S>> conds{w, z};
  S iter = iterated_2_inner(space, x, x, std::span<const Vector<S>>(conds));
  double scale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact)
    scale = std::exp(std::min(
        detail::log_scale_iterated(space, x, x, std::span<const Vector<S>>(conds)), 700.0));
  detail::consistency<S>(near_equal(gap * zz, iter, tol) ||
                             near_zero(gap * zz - iter, tol, scale),
                         "lupu gap does not match (x,x|w,z)");
  detail::consistency<S>(near_nonneg(gap, tol, scale), "lupu gap is negative");
  return gap;
}

// Residual of (x,x|z,w)|z|^2 = (x,x|w,z)|w|^2; zero because both reduce to
// the same Gram determinant.
template <class S>
S gram_swap_residual(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& w,
                     const Vector<S>& z) {
  std::vector<Vector<S>> zw{z, w}, wz{w, z};
  S lhs = iterated_2_inner(space, x, x, std::span<const Vector<S>>(zw)) * space.inner(z, z);
  S rhs = iterated_2_inner(space, x, x, std::span<const Vector<S>>(wz)) * space.inner(w, w);
  return lhs - rhs;
}

// Residual of Gamma(x,w,v|z) = Gamma(x,w,v,z)|z|^4, where the left side is
// the Gram determinant built from 2-inner products against z and the right
// one is the plain Gram determinant of all four vectors (both sides have
// degree 6 in z). Also cross-checks the multiplied form of
// det * <w,w|z> = (x,x|v,w,z).
template <class S>
S gram_wrt_residual(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& w,
                    const Vector<S>& v, const Vector<S>& z, double tol = 1e-9) {
  const Vector<S>* a[3] = {&x, &w, &v};
  std::vector<S> e;
  e.reserve(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e.push_back(standard_2_inner(space, *a[i], *a[j], z));
  S det_wrt = determinant(SquareMatrix<S>(3, std::move(e)));

  std::vector<Vector<S>> xs{x, w, v, z};
  S gram = gram_determinant(space, std::span<const Vector<S>>(xs));
  const S zz = space.inner(z, z);
  S residual = det_wrt - gram * zz * zz;

  std::vector<Vector<S>> vwz{v, w, z};
  S iter = iterated_2_inner(space, x, x, std::span<const Vector<S>>(vwz));
  S wwz = standard_2_inner(space, w, w, z);
  double scale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact)
    scale = std::exp(std::min(
        detail::log_scale_iterated(space, x, x, std::span<const Vector<S>>(vwz)), 700.0));
  detail::consistency<S>(near_zero(det_wrt * wwz - iter, tol, scale),
                         "Gram-with-respect-to determinant does not match (x,x|v,w,z)");
  return residual;
}

// Chebyshev functional T_z(x,y) = |z|^2<x,y> - <x,z><y,z>; identical to the
// 2-inner product with conditioner z.
template <class S>
S chebyshev(const InnerSpace<S>& space, const Vector<S>& x, const Vector<S>& y,
            const Vector<S>& z, double tol = 1e-9) {
  S t = space.inner(z, z) * space.inner(x, y) - space.inner(x, z) * space.inner(y, z);
  std::vector<Vector<S>> conds{z};
  S iter = iterated_2_inner(space, x, y, std::span<const Vector<S>>(conds));
  detail::consistency<S>(near_equal(t, iter, tol),
                         "Chebyshev functional does not match the 2-inner product");
  return t;
}

namespace detail {

template <class S>
S chebyshev_recursion(const InnerSpace<S>& space, const Vector<S>& a, const Vector<S>& b,
                      std::span<const Vector<S>> conds) {
  if (conds.size() == 1) {
    const Vector<S>& z = conds[0];
    return space.inner(z, z) * space.inner(a, b) - space.inner(a, z) * space.inner(b, z);
  }
  auto rest = conds.subspan(1);
  const Vector<S>& xn = conds[0];
  return chebyshev_recursion(space, a, b, rest) * chebyshev_recursion(space, xn, xn, rest) -
         chebyshev_recursion(space, a, xn, rest) * chebyshev_recursion(space, xn, b, rest);
}

}  // namespace detail

// n-Chebyshev functional: the same 2x2 recursion as the iterated product,
// evaluated independently (no memo) and asserted equal to it. Conditioners
// must be nonzero here, unlike for the iterated product itself.
template <class S>
S n_chebyshev(const InnerSpace<S>& space, const ConditionedPair<S>& p, double tol = 1e-9) {
  if (p.conditioners.empty())
    throw InvalidArgument("n-Chebyshev functional needs at least one conditioner");
  for (std::size_t i = 0; i < p.conditioners.size(); ++i)
    if (p.conditioners[i].is_zero())
      throw InvalidArgument("n-Chebyshev functional requires nonzero conditioners (got zero at " +
                            std::to_string(i) + ")");
  std::span<const Vector<S>> conds(p.conditioners);
  S t = detail::chebyshev_recursion(space, p.x, p.y, conds);
  S iter = iterated_2_inner(space, p.x, p.y, conds);
  detail::consistency<S>(near_equal(t, iter, tol),
                         "n-Chebyshev recursion does not match the iterated product");
  return t;
}

// Two predictor columns and a response, sampled uniformly (probability 1/n).
template <class S>
struct Dataset {
  std::vector<S> x, y, z;

  Dataset(std::vector<S> xs, std::vector<S> ys, std::vector<S> zs)
      : x(std::move(xs)), y(std::move(ys)), z(std::move(zs)) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
    if (x.size() != z.size()) throw DimensionMismatch(x.size(), z.size());
    if (x.size() < 3) throw InvalidArgument("dataset needs at least 3 samples");
  }

  std::size_t size() const { return x.size(); }
};

namespace detail {

// Statistics are defined through 2-inner products against e = u/|u| with
// u = (1,...,1). The normalization is deferred so everything stays rational:
// mean = <x,u>/n, var = (x,x|u)/n^2, cov = (x,y|u)/n^2.
template <class S>
struct StatEmbedding {
  InnerSpace<S> space;
  Vector<S> u;
  S n;

  explicit StatEmbedding(std::size_t count)
      : space(InnerSpace<S>::euclidean(count)),
        u(Vector<S>(std::vector<S>(count, ScalarTraits<S>::one()))),
        n(ScalarTraits<S>::from_int(static_cast<long>(count))) {}
};

}  // namespace detail

template <class S>
S mean(const std::vector<S>& data) {
  if (data.empty()) throw InvalidArgument("mean of empty data");
  S direct = ScalarTraits<S>::zero();
  double mag = 0.0;
  for (const S& v : data) {
    direct += v;
    mag += std::fabs(ScalarTraits<S>::to_double(v));
  }
  const S n = ScalarTraits<S>::from_int(static_cast<long>(data.size()));
  direct /= n;
  detail::StatEmbedding<S> emb(data.size());
  S via_inner = emb.space.inner(Vector<S>(data), emb.u) / emb.n;
  detail::consistency<S>(near_zero(direct - via_inner, 1e-9, mag),
                         "mean construction paths disagree");
  return direct;
}

template <class S>
S variance(const std::vector<S>& data) {
  if (data.empty()) throw InvalidArgument("variance of empty data");
  S m = ScalarTraits<S>::zero(), sq = ScalarTraits<S>::zero();
  for (const S& v : data) {
    m += v;
    sq += v * v;
  }
  const S n = ScalarTraits<S>::from_int(static_cast<long>(data.size()));
  m /= n;
  S direct = sq / n - m * m;
  // Both routes cancel against sq/n, so that is the comparison scale.
  double mag = std::fabs(ScalarTraits<S>::to_double(sq)) /
               static_cast<double>(data.size());
  detail::StatEmbedding<S> emb(data.size());
  std::vector<Vector<S>> conds{emb.u};
  S via_inner = iterated_2_inner(emb.space, Vector<S>(data), Vector<S>(data),
                                 std::span<const Vector<S>>(conds)) /
                (emb.n * emb.n);
  detail::consistency<S>(near_zero(direct - via_inner, 1e-9, mag),
                         "variance construction paths disagree");
  return direct;
}

template <class S>
S covariance(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.empty()) throw InvalidArgument("covariance of empty data");
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  S ma = ScalarTraits<S>::zero(), mb = ScalarTraits<S>::zero(), sab = ScalarTraits<S>::zero();
  double mag = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
    sab += a[i] * b[i];
    mag += std::fabs(ScalarTraits<S>::to_double(a[i]) * ScalarTraits<S>::to_double(b[i]));
  }
  const S n = ScalarTraits<S>::from_int(static_cast<long>(a.size()));
  S direct = sab / n - (ma / n) * (mb / n);
  mag /= static_cast<double>(a.size());
  detail::StatEmbedding<S> emb(a.size());
  std::vector<Vector<S>> conds{emb.u};
  S via_inner = iterated_2_inner(emb.space, Vector<S>(a), Vector<S>(b),
                                 std::span<const Vector<S>>(conds)) /
                (emb.n * emb.n);
  detail::consistency<S>(near_zero(direct - via_inner, 1e-9, mag),
                         "covariance construction paths disagree");
  return direct;
}

// Standard deviation: exact mode reports the exact variance plus a double
// approximation of the root.
template <class S>
NormValue<S> stddev(const std::vector<S>& data) {
  S var = variance(data);
  double v = ScalarTraits<S>::to_double(var);
  return NormValue<S>{var, std::sqrt(std::max(v, 0.0))};
}

enum class FitMethod { VectorCramer, StatisticsForm, NormalEquations };

inline const char* fit_method_name(FitMethod m) {
  switch (m) {
    case FitMethod::VectorCramer: return "vector_cramer";
    case FitMethod::StatisticsForm: return "statistics_form";
    case FitMethod::NormalEquations: return "normal_equations";
  }
  return "?";
}

template <class S>
struct RegressionFit {
  S a, b, c;
  FitMethod method;
  S residual_sum_squares;
};

namespace detail {

template <class S>
S dataset_rss(const Dataset<S>& ds, const S& a, const S& b, const S& c) {
  S rss = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    S r = ds.z[i] - a * ds.x[i] - b * ds.y[i] - c;
    rss += r * r;
  }
  return rss;
}

}  // namespace detail

// Fits w ~ a x + b y + c e by Cramer quotients of iterated 2-inner products:
//   a = (w,x|y,e)/(x,x|y,e), b = (w,y|x,e)/(x,x|y,e),
//   c = |e|^2 (w,e|x,y) / (|y|^2 (x,x|y,e)).
// The returned coefficients satisfy the 3x3 normal system; exact mode checks
// this literally.
template <class S>
RegressionFit<S> fit_vector_method(const InnerSpace<S>& space, const Vector<S>& x,
                                   const Vector<S>& y, const Vector<S>& e,
                                   const Vector<S>& w, double tol = 1e-9) {
  if (y.is_zero()) throw InvalidArgument("vector-method fit requires y != 0");
  std::vector<Vector<S>> ye{y, e}, xe{x, e}, xy{x, y};
  S denom = iterated_2_inner(space, x, x, std::span<const Vector<S>>(ye));
  double dscale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact)
    dscale = std::exp(std::min(
        detail::log_scale_iterated(space, x, x, std::span<const Vector<S>>(ye)), 700.0));
  if (near_zero(denom, tol, dscale))
    throw SingularSystem("vectors {e,x,y} are linearly dependent",
                         "(x,x|y,e) = " + ScalarTraits<S>::to_string(denom));
  S a = iterated_2_inner(space, w, x, std::span<const Vector<S>>(ye)) / denom;
  S b = iterated_2_inner(space, w, y, std::span<const Vector<S>>(xe)) / denom;
  const S ee = space.inner(e, e), yy = space.inner(y, y);
  S c = ee * iterated_2_inner(space, w, e, std::span<const Vector<S>>(xy)) / (yy * denom);

  // The normal system itself: A (a,b,c)^T = (<w,x>,<w,y>,<w,e>)^T.
  const Vector<S>* basis[3] = {&x, &y, &e};
  const S coef[3] = {a, b, c};
  for (int row = 0; row < 3; ++row) {
    S lhs = ScalarTraits<S>::zero();
    for (int col = 0; col < 3; ++col)
      lhs += coef[col] * space.inner(*basis[col], *basis[row]);
    detail::consistency<S>(near_equal(lhs, space.inner(w, *basis[row]), tol),
                           "vector-method fit does not satisfy the normal system");
  }
  if (ee == ScalarTraits<S>::one()) {
    S c_unit = space.inner(w, e) - a * space.inner(x, e) - b * space.inner(y, e);
    detail::consistency<S>(near_equal(c, c_unit, tol),
                           "unit-e shortcut for c disagrees with the Cramer form");
  }
  Vector<S> resid = w - a * x - b * y - c * e;
  return RegressionFit<S>{a, b, c, FitMethod::VectorCramer, space.inner(resid, resid)};
}

// Independent oracle: solve the three normal equations of least squares for
// z ~ a x + b y + c by Cramer's rule on the 3x3 system.
template <class S>
RegressionFit<S> fit_normal_equations(const Dataset<S>& ds, double tol = 1e-9) {
  const S n = ScalarTraits<S>::from_int(static_cast<long>(ds.size()));
  S sx = ScalarTraits<S>::zero(), sy = sx, sz = sx, sxx = sx, sxy = sx, syy = sx,
    sxz = sx, syz = sx;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    sx += ds.x[i];
    sy += ds.y[i];
    sz += ds.z[i];
    sxx += ds.x[i] * ds.x[i];
    sxy += ds.x[i] * ds.y[i];
    syy += ds.y[i] * ds.y[i];
    sxz += ds.x[i] * ds.z[i];
    syz += ds.y[i] * ds.z[i];
  }
  auto det3 = [](std::vector<S> e) { return determinant(SquareMatrix<S>(3, std::move(e))); };
  S d = det3({sxx, sxy, sx, sxy, syy, sy, sx, sy, n});
  double dscale = 1.0;
  if constexpr (!ScalarTraits<S>::is_exact)
    dscale = std::max({1.0, std::fabs(sxx * syy * n), std::fabs(sxy * sxy * n)});
  if (near_zero(d, tol, dscale))
    throw SingularSystem("normal-equation matrix is rank deficient",
                         "det = " + ScalarTraits<S>::to_string(d));
  S a = det3({sxz, sxy, sx, syz, syy, sy, sz, sy, n}) / d;
  S b = det3({sxx, sxz, sx, sxy, syz, sy, sx, sz, n}) / d;
  S c = det3({sxx, sxy, sxz, sxy, syy, syz, sx, sy, sz}) / d;
  return RegressionFit<S>{a, b, c, FitMethod::NormalEquations, detail::dataset_rss(ds, a, b, c)};
}

// Statistics form: coefficients from variances and covariances, asserted to
// agree with the normal-equation oracle and with the vector method applied
// to the embedded columns (conditioning on the all-ones direction).
template <class S>
RegressionFit<S> fit_statistics_form(const Dataset<S>& ds, double tol = 1e-9) {
  S vx = variance(ds.x), vy = variance(ds.y);
  S cxy = covariance(ds.x, ds.y), cxz = covariance(ds.x, ds.z), cyz = covariance(ds.y, ds.z);
  S d = vx * vy - cxy * cxy;
  bool singular;
  if constexpr (ScalarTraits<S>::is_exact) {
    singular = d.is_zero();
  } else {
    // Conditioning guard: reject once the centered 2x2 determinant drops
    // below 1e-12 of its natural scale.
    singular = std::fabs(d) < 1e-12 * std::max(vx * vy, 0.0) || vx * vy == 0.0;
  }
  if (singular)
    throw SingularSystem("predictors are collinear after centering",
                         "var(x)var(y) - cov^2(x,y) = " + ScalarTraits<S>::to_string(d));
  S a = (vy * cxz - cxy * cyz) / d;
  S b = (vx * cyz - cxy * cxz) / d;
  S c = mean(ds.z) - a * mean(ds.x) - b * mean(ds.y);
  RegressionFit<S> fit{a, b, c, FitMethod::StatisticsForm, detail::dataset_rss(ds, a, b, c)};

  RegressionFit<S> oracle = fit_normal_equations(ds, tol);
  detail::consistency<S>(near_equal(fit.a, oracle.a, tol) && near_equal(fit.b, oracle.b, tol) &&
                             near_equal(fit.c, oracle.c, tol),
                         "statistics form disagrees with the normal-equation oracle");

  detail::StatEmbedding<S> emb(ds.size());
  RegressionFit<S> vec = fit_vector_method(emb.space, Vector<S>(ds.x), Vector<S>(ds.y),
                                           emb.u, Vector<S>(ds.z), tol);
  detail::consistency<S>(near_equal(fit.a, vec.a, tol) && near_equal(fit.b, vec.b, tol) &&
                             near_equal(fit.c, vec.c, tol),
                         "statistics form disagrees with the vector method");
  return fit;
}

}  // namespace ninner
