#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "ninner/errors.hpp"

namespace ninner {

// Arbitrary-precision rational. Invariant: always in lowest terms with a
// positive denominator (GMP's canonical form), so operator== is literal
// equality of values.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}

  Rational(long num, long den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    v_ = mpq_class(static_cast<signed long>(num), 1L);
    v_ /= mpq_class(static_cast<signed long>(den), 1L);
  }

  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rational from_mpz(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    mpq_class q(num);
    q /= mpq_class(den);
    return Rational(std::move(q), already_canonical{});
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  // "p" when the denominator is 1, otherwise "p/q".
  std::string str() const { return v_.get_str(); }

  // GMP arithmetic on canonical operands yields canonical results, so the
  // operators skip re-canonicalizing.
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_), already_canonical{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_), already_canonical{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_), already_canonical{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InvalidArgument("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_), already_canonical{});
  }
  Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  struct already_canonical {};
  Rational(mpq_class v, already_canonical) : v_(std::move(v)) {}

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow_u(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

}  // namespace ninner
