#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

namespace symflow {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" and finite decimals such as "-0.125".
Rational parseRational(std::string_view text);
// canonicalized n/d
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
std::string to_string(const Rational& r);

// Exact element a + b*sqrt(d) of Q[sqrt d] for a square-free d >= 2.
// Values with b == 0 are plain rationals and mix with any field.
class QuadraticReal {
 public:
  QuadraticReal() = default;
  QuadraticReal(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadraticReal(const Rational& a) : a_(a) {}  // NOLINT
  QuadraticReal(const Rational& a, const Rational& b, long d = 2);

  static QuadraticReal sqrt(long d) { return QuadraticReal(0, 1, d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }
  bool isRational() const { return sgn(b_) == 0; }

  int sign() const;
  double toDouble() const;
  long double toLongDouble() const;
  Integer floor() const;
  Integer ceil() const;
  QuadraticReal frac() const { return *this - QuadraticReal(Rational(floor())); }
  QuadraticReal conjugate() const { return QuadraticReal(a_, -b_, d_); }
  // a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  QuadraticReal operator-() const { return QuadraticReal(-a_, -b_, d_); }
  QuadraticReal& operator+=(const QuadraticReal& o);
  QuadraticReal& operator-=(const QuadraticReal& o);
  QuadraticReal& operator*=(const QuadraticReal& o);
  QuadraticReal& operator/=(const QuadraticReal& o);

  friend QuadraticReal operator+(QuadraticReal x, const QuadraticReal& y) { return x += y; }
  friend QuadraticReal operator-(QuadraticReal x, const QuadraticReal& y) { return x -= y; }
  friend QuadraticReal operator*(QuadraticReal x, const QuadraticReal& y) { return x *= y; }
  friend QuadraticReal operator/(QuadraticReal x, const QuadraticReal& y) { return x /= y; }

  friend bool operator==(const QuadraticReal& x, const QuadraticReal& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.isRational() || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadraticReal& x, const QuadraticReal& y) { return !(x == y); }
  friend bool operator<(const QuadraticReal& x, const QuadraticReal& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticReal& x, const QuadraticReal& y) { return y < x; }
  friend bool operator<=(const QuadraticReal& x, const QuadraticReal& y) { return !(y < x); }
  friend bool operator>=(const QuadraticReal& x, const QuadraticReal& y) { return !(x < y); }

 private:
  void adoptField(const QuadraticReal& o);

  Rational a_{0};
  Rational b_{0};
  long d_ = 2;
};

// p and q are rationally independent iff (a_p, b_p) and (a_q, b_q) are not
// proportional over Q. Zero is dependent on everything.
bool rationalIndependent(const QuadraticReal& p, const QuadraticReal& q);

// "a", "b*sqrt(d)" or "a+b*sqrt(d)"
std::string to_string(const QuadraticReal& x);
QuadraticReal parseQuadratic(std::string_view text, long d = 2);

inline std::ostream& operator<<(std::ostream& os, const QuadraticReal& x) { return os << to_string(x); }

}  // namespace symflow
