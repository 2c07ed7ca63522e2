#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ninner/applications.hpp"
#include "ninner/axioms.hpp"
#include "ninner/dodgson.hpp"
#include "ninner/products.hpp"
#include "ninner/rng.hpp"

namespace ninner {

enum class SuiteKind { Axioms, Schwarz, Representation, Scaling, Dodgson, Gram, Chebyshev, All };

inline const char* suite_name(SuiteKind k) {
  switch (k) {
    case SuiteKind::Axioms: return "axioms";
    case SuiteKind::Schwarz: return "schwarz";
    case SuiteKind::Representation: return "representation";
    case SuiteKind::Scaling: return "scaling";
    case SuiteKind::Dodgson: return "dodgson";
    case SuiteKind::Gram: return "gram";
    case SuiteKind::Chebyshev: return "chebyshev";
    case SuiteKind::All: return "all";
  }
  return "?";
}

inline std::optional<SuiteKind> suite_from_name(std::string_view s) {
  static constexpr SuiteKind all[] = {SuiteKind::Axioms,  SuiteKind::Schwarz,
                                      SuiteKind::Representation, SuiteKind::Scaling,
                                      SuiteKind::Dodgson, SuiteKind::Gram,
                                      SuiteKind::Chebyshev, SuiteKind::All};
  for (SuiteKind k : all)
    if (s == suite_name(k)) return k;
  return std::nullopt;
}

struct SuiteConfig {
  SuiteKind suite = SuiteKind::All;
  int dim = 3;
  int n = 3;
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

// The dodgson suite works on matrices of orders 3..dim and ignores n; every
// other suite draws (n-1)-conditioner tuples in dimension dim.
inline void validate_config(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (cfg.suite != SuiteKind::Dodgson) {
    if (cfg.n < 2 || cfg.n > 8) throw InvalidArgument("n must satisfy 2 <= n <= 8");
    if (cfg.dim < cfg.n)
      throw InvalidArgument("dim must be >= n so independent conditioners exist");
  }
  if (cfg.suite == SuiteKind::Dodgson || cfg.suite == SuiteKind::All) {
    if (cfg.dim < 3)
      throw InvalidArgument("dodgson suite needs dim >= 3 (matrix orders 3..dim)");
  }
}

struct CheckResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  bool expected_fail = false;
  std::string witness;  // first counterexample, empty when none

  bool ok() const { return expected_fail ? failures > 0 : failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

namespace detail {

// Runs `body` once per trial on an independent deterministic stream; the
// body returns a description of the failure, if any.
inline CheckResult run_check(const std::string& name, int trials, std::uint64_t seed,
                             const std::function<std::optional<std::string>(SplitMix64&)>& body,
                             bool expected_fail = false) {
  CheckResult r{name, trials, 0, expected_fail, ""};
  const std::uint64_t check_id = fnv1a64(name);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 g = SplitMix64::stream(seed, check_id, static_cast<std::uint64_t>(t));
    std::optional<std::string> fail;
    try {
      fail = body(g);
    } catch (const Error& e) {
      fail = std::string("exception: ") + e.what();
    }
    if (fail) {
      ++r.failures;
      if (r.witness.empty()) r.witness = *fail;
    }
  }
  return r;
}

template <class S>
double iterated_tol_scale(const InnerSpace<S>& space, const Vector<S>& x,
                          const Vector<S>& y, std::span<const Vector<S>> conds) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return 1.0;
  } else {
    return std::exp(std::min(log_scale_iterated(space, x, y, conds), 700.0));
  }
}

template <class S>
double standard_tol_scale(const InnerSpace<S>& space, const Vector<S>& x,
                          const Vector<S>& y, std::span<const Vector<S>> conds) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return 1.0;
  } else {
    return std::exp(std::min(log_scale_standard(space, x, y, conds), 700.0));
  }
}

// The products have total degree 2^n in their inputs, so float mode would
// overflow past roughly n = 6 on integer-sized draws. Suite draws therefore
// rescale each float vector to max-entry 1; the identities under test are
// homogeneous, so nothing is lost.
template <class S>
Vector<S> draw_vector(SplitMix64& g, std::size_t d) {
  Vector<S> v = random_vector<S>(g, d);
  if constexpr (!ScalarTraits<S>::is_exact) {
    double peak = 0.0;
    for (std::size_t i = 0; i < d; ++i) peak = std::max(peak, std::fabs(v[i]));
    if (peak > 1.0)
      for (std::size_t i = 0; i < d; ++i) v[i] /= peak;
  }
  return v;
}

template <class S>
Vector<S> draw_nonzero_vector(SplitMix64& g, std::size_t d) {
  for (;;) {
    Vector<S> v = draw_vector<S>(g, d);
    if (!v.is_zero()) return v;
  }
}

template <class S>
std::vector<Vector<S>> draw_conditioners(SplitMix64& g, std::size_t m, std::size_t d) {
  std::vector<Vector<S>> conds;
  conds.reserve(m);
  for (std::size_t i = 0; i < m; ++i) conds.push_back(draw_vector<S>(g, d));
  return conds;
}

}  // namespace detail

template <class S>
SuiteReport run_axioms_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  SuiteReport rep{suite_name(SuiteKind::Axioms), {}};
  auto push = [&](Axiom ax, ProductKind pk, bool expected_fail) {
    CheckReport cr = axiom_check(space, ax, pk, cfg.n, cfg.trials, cfg.seed, cfg.tol);
    std::string name = std::string("axiom ") + axiom_name(ax) + " (" + product_name(pk) +
                       ", n=" + std::to_string(cfg.n) + ")";
    rep.checks.push_back(CheckResult{name, cr.trials, cr.failures, expected_fail,
                                     cr.counterexample});
  };
  for (Axiom ax : {Axiom::I1, Axiom::I2, Axiom::I3, Axiom::I4, Axiom::I5, Axiom::I6})
    push(ax, ProductKind::Standard, false);
  for (Axiom ax : {Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4, Axiom::P5})
    push(ax, ProductKind::Iterated, false);
  for (Axiom ax : {Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4})
    push(ax, ProductKind::Iterated, false);
  // Full conditioner-permutation symmetry genuinely fails for the iterated
  // product once n >= 3; the suite demands a reported violation.
  push(Axiom::I2, ProductKind::Iterated, cfg.n >= 3);
  return rep;
}

template <class S>
SuiteReport run_schwarz_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  const std::size_t m = static_cast<std::size_t>(cfg.n) - 1;
  SuiteReport rep{suite_name(SuiteKind::Schwarz), {}};

  rep.checks.push_back(detail::run_check(
      "schwarz gap >= 0 (iterated, n=" + std::to_string(cfg.n) + ")", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        ConditionedPair<S> p{detail::draw_vector<S>(g, d), detail::draw_vector<S>(g, d),
                             detail::draw_conditioners<S>(g, m, d)};
        S gap = schwarz_gap(space, p);
        double scale = detail::iterated_tol_scale(space, p.x, p.x,
                                                  std::span<const Vector<S>>(p.conditioners));
        if (!near_nonneg(gap, cfg.tol, scale * scale))
          return "gap " + ScalarTraits<S>::to_string(gap) + " for x=" +
                 detail::fmt_vector(p.x) + " y=" + detail::fmt_vector(p.y);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "schwarz equality case y = mu*x + span (n=" + std::to_string(cfg.n) + ")", cfg.trials,
      cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        auto conds = detail::draw_conditioners<S>(g, m, d);
        Vector<S> x = detail::draw_vector<S>(g, d);
        S mu = random_nonneg_scalar<S>(g);
        Vector<S> y = mu * x + random_combination(g, conds);
        ConditionedPair<S> p{x, y, conds};
        S gap = schwarz_gap(space, p);
        double scale = detail::iterated_tol_scale(space, p.x, p.y,
                                                  std::span<const Vector<S>>(p.conditioners));
        if (!near_zero(gap, cfg.tol, scale * scale))
          return "constructed equality case has gap " + ScalarTraits<S>::to_string(gap);
        if (!schwarz_equality_case(space, p, cfg.tol))
          return "detector missed equality case mu=" + ScalarTraits<S>::to_string(mu);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "n-chebyshev cauchy-schwarz gap >= 0 (n=" + std::to_string(cfg.n) + ")", cfg.trials,
      cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(detail::draw_nonzero_vector<S>(g, d));
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d);
        ConditionedPair<S> pxx{x, x, conds}, pyy{y, y, conds}, pxy{x, y, conds};
        S txx = n_chebyshev(space, pxx, cfg.tol);
        S tyy = n_chebyshev(space, pyy, cfg.tol);
        S txy = n_chebyshev(space, pxy, cfg.tol);
        S gap = txx * tyy - txy * txy;
        double scale = detail::iterated_tol_scale(space, x, y,
                                                  std::span<const Vector<S>>(conds));
        if (!near_nonneg(gap, cfg.tol, scale * scale))
          return "chebyshev CS gap " + ScalarTraits<S>::to_string(gap);
        return std::nullopt;
      }));
  return rep;
}

template <class S>
SuiteReport run_representation_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  const std::size_t m = static_cast<std::size_t>(cfg.n) - 1;
  SuiteReport rep{suite_name(SuiteKind::Representation), {}};

  rep.checks.push_back(detail::run_check(
      "representation identity (n=" + std::to_string(cfg.n) + ")", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        ConditionedPair<S> p{detail::draw_vector<S>(g, d), detail::draw_vector<S>(g, d),
                             detail::draw_conditioners<S>(g, m, d)};
        ProductReport<S> r = representation_report(space, p, cfg.tol);
        double scale = detail::iterated_tol_scale(space, p.x, p.y,
                                                  std::span<const Vector<S>>(p.conditioners));
        if (!near_zero(r.residual(), cfg.tol, scale))
          return "residual " + ScalarTraits<S>::to_string(r.residual()) + " (value=" +
                 ScalarTraits<S>::to_string(r.value) + ", e=" +
                 ScalarTraits<S>::to_string(r.e_factor) + ", standard=" +
                 ScalarTraits<S>::to_string(r.standard_value) + ")";
        return std::nullopt;
      }));

  if (cfg.n >= 3) {
    rep.checks.push_back(detail::run_check(
        "bridge identity of standard products (n=" + std::to_string(cfg.n) + ")", cfg.trials,
        cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
          ConditionedPair<S> p{detail::draw_vector<S>(g, d), detail::draw_vector<S>(g, d),
                               detail::draw_conditioners<S>(g, m, d)};
          S res = representation_bridge_check(space, p);
          double scale = detail::standard_tol_scale(space, p.x, p.y,
                                                    std::span<const Vector<S>>(p.conditioners));
          if (!near_zero(res, cfg.tol, scale * scale))
            return "bridge residual " + ScalarTraits<S>::to_string(res);
          return std::nullopt;
        }));
  }
  return rep;
}

template <class S>
SuiteReport run_scaling_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  const std::size_t m = static_cast<std::size_t>(cfg.n) - 1;
  SuiteReport rep{suite_name(SuiteKind::Scaling), {}};

  rep.checks.push_back(detail::run_check(
      "scaling law t^(2^n) (n=" + std::to_string(cfg.n) + ")", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d);
        auto conds = detail::draw_conditioners<S>(g, m, d);
        S t = random_nonzero_scalar<S>(g);
        if constexpr (!ScalarTraits<S>::is_exact) {
          if (std::fabs(t) > 1.0) t = 1.0 / t;  // keep t^(2^n) inside double range
        }
        std::vector<Vector<S>> scaled;
        for (const auto& c : conds) scaled.push_back(t * c);
        S lhs = iterated_2_inner(space, t * x, t * y, std::span<const Vector<S>>(scaled));
        S rhs = scalar_pow_u(t, 1u << static_cast<unsigned>(cfg.n)) *
                iterated_2_inner(space, x, y, std::span<const Vector<S>>(conds));
        if (!near_equal(lhs, rhs, cfg.tol))
          return "t=" + ScalarTraits<S>::to_string(t) + ": " +
                 ScalarTraits<S>::to_string(lhs) + " vs " + ScalarTraits<S>::to_string(rhs);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "parallelogram law (standard, squared, n=" + std::to_string(cfg.n) + ")", cfg.trials,
      cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> v = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d);
        auto conds = detail::draw_conditioners<S>(g, m, d);
        std::span<const Vector<S>> cs(conds);
        S lhs = standard_n_inner(space, v + w, v + w, cs) +
                standard_n_inner(space, v - w, v - w, cs);
        S rhs = 2 * standard_n_inner(space, v, v, cs) + 2 * standard_n_inner(space, w, w, cs);
        if (!near_equal(lhs, rhs, cfg.tol))
          return ScalarTraits<S>::to_string(lhs) + " vs " + ScalarTraits<S>::to_string(rhs);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "polarization identity (standard, squared, n=" + std::to_string(cfg.n) + ")",
      cfg.trials, cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> v = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d);
        auto conds = detail::draw_conditioners<S>(g, m, d);
        std::span<const Vector<S>> cs(conds);
        S lhs = standard_n_inner(space, v + w, v + w, cs) -
                standard_n_inner(space, v - w, v - w, cs);
        S rhs = 4 * standard_n_inner(space, v, w, cs);
        if (!near_equal(lhs, rhs, cfg.tol))
          return ScalarTraits<S>::to_string(lhs) + " vs " + ScalarTraits<S>::to_string(rhs);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "annihilation when x lies in the conditioner span (n=" + std::to_string(cfg.n) + ")",
      cfg.trials, cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        auto conds = detail::draw_conditioners<S>(g, m, d);
        Vector<S> x = random_combination(g, conds);
        Vector<S> y = detail::draw_vector<S>(g, d);
        S val = iterated_2_inner(space, x, y, std::span<const Vector<S>>(conds));
        double scale = detail::iterated_tol_scale(space, x, y,
                                                  std::span<const Vector<S>>(conds));
        if (!near_zero(val, cfg.tol, scale))
          return "value " + ScalarTraits<S>::to_string(val);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "quotient translation invariance (n=" + std::to_string(cfg.n) + ")", cfg.trials,
      cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        auto conds = detail::draw_conditioners<S>(g, m, d);
        std::span<const Vector<S>> cs(conds);
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d);
        Vector<S> u = random_combination(g, conds);
        S base = iterated_2_inner(space, x, y, cs);
        S left = iterated_2_inner(space, x + u, y, cs);
        S right = iterated_2_inner(space, x, y + u, cs);
        if (!near_equal(base, left, cfg.tol) || !near_equal(base, right, cfg.tol))
          return "base " + ScalarTraits<S>::to_string(base) + ", x-shifted " +
                 ScalarTraits<S>::to_string(left) + ", y-shifted " +
                 ScalarTraits<S>::to_string(right);
        return std::nullopt;
      }));
  return rep;
}

namespace detail {

// Matrix flavors exercised by the dodgson suite: plain random, zeroed
// interior entries (zero condensation divisors), duplicated adjacent rows
// (zero second-stage divisors), and rank-deficient.
template <class S>
SquareMatrix<S> flavored_matrix(SplitMix64& g, std::size_t order, int flavor) {
  SquareMatrix<S> m = random_matrix<S>(g, order);
  switch (flavor % 4) {
    case 1:
      for (std::size_t i = 1; i + 1 < order; ++i)
        for (std::size_t j = 1; j + 1 < order; ++j)
          if (g.uniform_int(0, 1) == 0) m.at(i, j) = ScalarTraits<S>::zero();
      break;
    case 2: {
      std::size_t r = static_cast<std::size_t>(g.uniform_int(0, static_cast<long>(order) - 2));
      for (std::size_t j = 0; j < order; ++j) m.at(r + 1, j) = m.at(r, j);
      break;
    }
    case 3: {
      for (std::size_t j = 0; j < order; ++j) {
        S sum = ScalarTraits<S>::zero();
        for (std::size_t i = 0; i + 1 < order; ++i) sum += m.at(i, j);
        m.at(order - 1, j) = sum;
      }
      break;
    }
    default:
      break;
  }
  return m;
}

}  // namespace detail

template <class S>
SuiteReport run_dodgson_suite(const SuiteConfig& cfg) {
  SuiteReport rep{suite_name(SuiteKind::Dodgson), {}};
  const std::size_t max_order = static_cast<std::size_t>(std::max(cfg.dim, 3));

  for (std::size_t order = 3; order <= max_order; ++order) {
    rep.checks.push_back(detail::run_check(
        "dodgson identity, leading block (order " + std::to_string(order) + ")", cfg.trials,
        cfg.seed, [&, order](SplitMix64& g) -> std::optional<std::string> {
          auto m = detail::flavored_matrix<S>(g, order, static_cast<int>(g.uniform_int(0, 3)));
          S res = dodgson_residual_e40(m);
          if (!near_zero(res, cfg.tol, dodgson_residual_scale(m)))
            return "residual " + ScalarTraits<S>::to_string(res);
          return std::nullopt;
        }));
    rep.checks.push_back(detail::run_check(
        "dodgson identity, central block (order " + std::to_string(order) + ")", cfg.trials,
        cfg.seed, [&, order](SplitMix64& g) -> std::optional<std::string> {
          auto m = detail::flavored_matrix<S>(g, order, static_cast<int>(g.uniform_int(0, 3)));
          S res = dodgson_residual_e41(m);
          if (!near_zero(res, cfg.tol, dodgson_residual_scale(m)))
            return "residual " + ScalarTraits<S>::to_string(res);
          return std::nullopt;
        }));
    rep.checks.push_back(detail::run_check(
        "condensation matches determinant (order " + std::to_string(order) + ")", cfg.trials,
        cfg.seed, [&, order](SplitMix64& g) -> std::optional<std::string> {
          auto m = detail::flavored_matrix<S>(g, order, static_cast<int>(g.uniform_int(0, 3)));
          S lhs = condensation_determinant(m);
          S rhs = determinant(m);
          if (!near_equal(lhs, rhs, cfg.tol))
            return "condensation " + ScalarTraits<S>::to_string(lhs) + " vs determinant " +
                   ScalarTraits<S>::to_string(rhs);
          return std::nullopt;
        }));
  }
  return rep;
}

template <class S>
SuiteReport run_gram_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  SuiteReport rep{suite_name(SuiteKind::Gram), {}};

  rep.checks.push_back(detail::run_check(
      "lupu gap >= 0 and gap*|z|^2 = (x,x|w,z)", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d),
                  z = detail::draw_vector<S>(g, d);
        S gap = lupu_gap(space, x, w, z, cfg.tol);
        std::vector<Vector<S>> wz{w, z};
        std::span<const Vector<S>> cs(wz);
        S iter = iterated_2_inner(space, x, x, cs);
        double scale = detail::iterated_tol_scale(space, x, x, cs);
        if (!near_nonneg(gap, cfg.tol, scale)) return "gap " + ScalarTraits<S>::to_string(gap);
        if (!near_zero(gap * space.inner(z, z) - iter, cfg.tol, scale))
          return "gap*|z|^2 = " + ScalarTraits<S>::to_string(gap * space.inner(z, z)) +
                 " vs (x,x|w,z) = " + ScalarTraits<S>::to_string(iter);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "gram swap residual (x,x|z,w)|z|^2 - (x,x|w,z)|w|^2", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d),
                  z = detail::draw_vector<S>(g, d);
        S res = gram_swap_residual(space, x, w, z);
        std::vector<Vector<S>> wz{w, z};
        double scale = detail::iterated_tol_scale(space, x, x, std::span<const Vector<S>>(wz)) *
                       std::max(1.0, std::fabs(ScalarTraits<S>::to_double(space.inner(w, w))));
        if (!near_zero(res, cfg.tol, scale)) return "residual " + ScalarTraits<S>::to_string(res);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "gram determinant form (x,x|w,z) = Gamma(x,w,z)|z|^2", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d),
                  z = detail::draw_vector<S>(g, d);
        std::vector<Vector<S>> wz{w, z};
        std::span<const Vector<S>> cs(wz);
        S iter = iterated_2_inner(space, x, x, cs);
        std::vector<Vector<S>> xs{x, w, z};
        S gram = gram_determinant(space, std::span<const Vector<S>>(xs));
        S res = iter - gram * space.inner(z, z);
        double scale = detail::iterated_tol_scale(space, x, x, cs);
        if (!near_zero(res, cfg.tol, scale)) return "residual " + ScalarTraits<S>::to_string(res);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "gram determinant form (x,x|v,w,z) = Gamma(x,v,w,z)|w|z|^2|z|^4", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), v = detail::draw_vector<S>(g, d),
                  w = detail::draw_vector<S>(g, d), z = detail::draw_vector<S>(g, d);
        std::vector<Vector<S>> vwz{v, w, z};
        std::span<const Vector<S>> cs(vwz);
        S iter = iterated_2_inner(space, x, x, cs);
        std::vector<Vector<S>> xs{x, v, w, z};
        S gram = gram_determinant(space, std::span<const Vector<S>>(xs));
        const S zz = space.inner(z, z);
        S res = iter - gram * standard_2_inner(space, w, w, z) * zz * zz;
        double scale = detail::iterated_tol_scale(space, x, x, cs);
        if (!near_zero(res, cfg.tol, scale)) return "residual " + ScalarTraits<S>::to_string(res);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "gram with-respect-to residual Gamma(x,w,v|z) - Gamma(x,w,v,z)|z|^4", cfg.trials,
      cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), w = detail::draw_vector<S>(g, d),
                  v = detail::draw_vector<S>(g, d), z = detail::draw_vector<S>(g, d);
        S res = gram_wrt_residual(space, x, w, v, z, cfg.tol);
        std::vector<Vector<S>> vwz{v, w, z};
        double scale = detail::iterated_tol_scale(space, x, x,
                                                  std::span<const Vector<S>>(vwz));
        if (!near_zero(res, cfg.tol, scale)) return "residual " + ScalarTraits<S>::to_string(res);
        return std::nullopt;
      }));
  return rep;
}

template <class S>
SuiteReport run_chebyshev_suite(const SuiteConfig& cfg) {
  const InnerSpace<S> space = InnerSpace<S>::euclidean(static_cast<std::size_t>(cfg.dim));
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  const std::size_t m = static_cast<std::size_t>(cfg.n) - 1;
  SuiteReport rep{suite_name(SuiteKind::Chebyshev), {}};

  rep.checks.push_back(detail::run_check(
      "chebyshev functional matches the 2-inner product", cfg.trials, cfg.seed,
      [&](SplitMix64& g) -> std::optional<std::string> {
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d),
                  z = detail::draw_nonzero_vector<S>(g, d);
        S t = chebyshev(space, x, y, z, cfg.tol);
        S direct = standard_2_inner(space, x, y, z);
        if (!near_equal(t, direct, cfg.tol))
          return ScalarTraits<S>::to_string(t) + " vs " + ScalarTraits<S>::to_string(direct);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "n-chebyshev equals the iterated product (n=" + std::to_string(cfg.n) + ")",
      cfg.trials, cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(detail::draw_nonzero_vector<S>(g, d));
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d);
        ConditionedPair<S> p{x, y, conds};
        S t = n_chebyshev(space, p, cfg.tol);
        S iter = iterated_2_inner(space, x, y, std::span<const Vector<S>>(conds));
        if (!near_equal(t, iter, cfg.tol))
          return ScalarTraits<S>::to_string(t) + " vs " + ScalarTraits<S>::to_string(iter);
        return std::nullopt;
      }));

  rep.checks.push_back(detail::run_check(
      "n-chebyshev cauchy-schwarz |T(x,y)|^2 <= T(x,x)T(y,y) (n=" + std::to_string(cfg.n) +
          ")",
      cfg.trials, cfg.seed, [&](SplitMix64& g) -> std::optional<std::string> {
        std::vector<Vector<S>> conds;
        for (std::size_t i = 0; i < m; ++i) conds.push_back(detail::draw_nonzero_vector<S>(g, d));
        Vector<S> x = detail::draw_vector<S>(g, d), y = detail::draw_vector<S>(g, d);
        S txx = n_chebyshev(space, ConditionedPair<S>{x, x, conds}, cfg.tol);
        S tyy = n_chebyshev(space, ConditionedPair<S>{y, y, conds}, cfg.tol);
        S txy = n_chebyshev(space, ConditionedPair<S>{x, y, conds}, cfg.tol);
        S gap = txx * tyy - txy * txy;
        double scale = detail::iterated_tol_scale(space, x, y,
                                                  std::span<const Vector<S>>(conds));
        if (!near_nonneg(gap, cfg.tol, scale * scale))
          return "gap " + ScalarTraits<S>::to_string(gap);
        return std::nullopt;
      }));
  return rep;
}

template <class S>
std::vector<SuiteReport> run_suites(const SuiteConfig& cfg) {
  validate_config(cfg);
  std::vector<SuiteReport> out;
  auto want = [&](SuiteKind k) { return cfg.suite == k || cfg.suite == SuiteKind::All; };
  if (want(SuiteKind::Axioms)) out.push_back(run_axioms_suite<S>(cfg));
  if (want(SuiteKind::Schwarz)) out.push_back(run_schwarz_suite<S>(cfg));
  if (want(SuiteKind::Representation)) out.push_back(run_representation_suite<S>(cfg));
  if (want(SuiteKind::Scaling)) out.push_back(run_scaling_suite<S>(cfg));
  if (want(SuiteKind::Dodgson)) out.push_back(run_dodgson_suite<S>(cfg));
  if (want(SuiteKind::Gram)) out.push_back(run_gram_suite<S>(cfg));
  if (want(SuiteKind::Chebyshev)) out.push_back(run_chebyshev_suite<S>(cfg));
  return out;
}

}  // namespace ninner
