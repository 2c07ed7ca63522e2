#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "ninner/errors.hpp"
#include "ninner/rational.hpp"

namespace ninner {

// The two scalar modes share one lexicon: integers, "p/q" fractions and
// decimal literals (optionally with an exponent). Exact mode parses decimals
// as rationals over powers of ten, so "0.1" is literally 1/10.
template <class S>
struct ScalarTraits;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Splits "[+-]digits[.digits][eE[+-]digits]" into a base-10 integer mantissa
// and a power-of-ten exponent. Returns false when the token is not a decimal.
inline bool split_decimal(std::string_view tok, std::string& mantissa, long& exp10) {
  std::size_t i = 0;
  mantissa.clear();
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) {
    if (tok[i] == '-') mantissa.push_back('-');
    ++i;
  }
  std::size_t int_digits = 0, frac_digits = 0;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
    mantissa.push_back(tok[i]);
    ++int_digits;
    ++i;
  }
  if (i < tok.size() && tok[i] == '.') {
    ++i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
      mantissa.push_back(tok[i]);
      ++frac_digits;
      ++i;
    }
  }
  if (int_digits + frac_digits == 0) return false;
  exp10 = -static_cast<long>(frac_digits);
  if (i < tok.size() && (tok[i] == 'e' || tok[i] == 'E')) {
    ++i;
    std::size_t start = i;
    if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) ++i;
    std::size_t exp_start = i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i == exp_start) return false;
    long e = std::strtol(std::string(tok.substr(start, i - start)).c_str(), nullptr, 10);
    exp10 += e;
  }
  return i == tok.size();
}

inline mpz_class pow10_z(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10u, k);
  return r;
}

}  // namespace detail

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static const char* mode_name() { return "exact"; }

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_fraction(long n, long d) { return Rational(n, d); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static std::string to_string(const Rational& v) { return v.str(); }

  static Rational parse(std::string_view tok) {
    if (tok.empty()) throw ParseError("empty scalar token");
    if (auto slash = tok.find('/'); slash != std::string_view::npos) {
      std::string_view ns = tok.substr(0, slash);
      std::string_view ds = tok.substr(slash + 1);
      std::string_view nd = ns;
      if (!nd.empty() && (nd[0] == '+' || nd[0] == '-')) nd.remove_prefix(1);
      std::string_view dd = ds;
      if (!dd.empty() && (dd[0] == '+' || dd[0] == '-')) dd.remove_prefix(1);
      if (!detail::all_digits(nd) || !detail::all_digits(dd))
        throw ParseError("invalid rational '" + std::string(tok) + "'");
      mpz_class num(std::string(ns), 10), den(std::string(ds), 10);
      if (den == 0) throw ParseError("zero denominator in '" + std::string(tok) + "'");
      return Rational::from_mpz(num, den);
    }
    std::string mant;
    long exp10 = 0;
    if (!detail::split_decimal(tok, mant, exp10))
      throw ParseError("invalid scalar '" + std::string(tok) + "'");
    mpz_class m(mant.empty() || mant == "-" ? std::string("0") : mant, 10);
    if (exp10 >= 0) return Rational::from_mpz(m * detail::pow10_z(exp10), 1);
    return Rational::from_mpz(m, detail::pow10_z(static_cast<unsigned long>(-exp10)));
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static const char* mode_name() { return "float"; }

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long n) { return static_cast<double>(n); }
  static double from_fraction(long n, long d) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  static double to_double(double v) { return v; }
  static bool is_zero(double v) { return v == 0.0; }

  // Shortest decimal that round-trips.
  static std::string to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }

  static double parse(std::string_view tok) {
    if (tok.empty()) throw ParseError("empty scalar token");
    if (auto slash = tok.find('/'); slash != std::string_view::npos) {
      double n = parse(tok.substr(0, slash));
      double d = parse(tok.substr(slash + 1));
      if (d == 0.0) throw ParseError("zero denominator in '" + std::string(tok) + "'");
      return n / d;
    }
    std::string s(tok);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
      throw ParseError("invalid scalar '" + std::string(tok) + "'");
    if (!std::isfinite(v))
      throw ParseError("non-finite scalar '" + std::string(tok) + "'");
    return v;
  }
};

template <class S>
S scalar_abs(const S& v) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return abs(v);
  } else {
    return std::fabs(v);
  }
}

template <class S>
S scalar_pow_u(const S& base, unsigned exp) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return pow_u(base, exp);
  } else {
    S acc = 1.0, b = base;
    while (exp > 0) {
      if (exp & 1u) acc *= b;
      b *= b;
      exp >>= 1u;
    }
    return acc;
  }
}

// Literal equality in exact mode, relative comparison in float mode.
template <class S>
bool near_equal(const S& a, const S& b, double tol) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    return a == b;
  } else {
    double x = a, y = b;
    return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
  }
}

// Zero test against a caller-supplied magnitude scale.
template <class S>
bool near_zero(const S& a, double tol, double scale = 1.0) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    (void)scale;
    return ScalarTraits<S>::is_zero(a);
  } else {
    return std::fabs(a) <= tol * std::max(scale, 1.0);
  }
}

template <class S>
bool near_nonneg(const S& a, double tol, double scale = 1.0) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    (void)scale;
    return a >= ScalarTraits<S>::zero();
  } else {
    return a >= -tol * std::max(scale, 1.0);
  }
}

}  // namespace ninner
