#include "symflow/quadratic.hpp"

#include <cmath>
#include <sstream>

#include "symflow/error.hpp"

namespace symflow {

Rational parseRational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) fail(ErrorCode::Parse, "empty rational");
  Rational r;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = s[0] == '-';
    std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    size_t scale = body.size() - dot - 1;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::Parse, "bad decimal '" + s + "'");
    Integer num(digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    r = ratio(num, den);
    if (neg) r = -r;
  } else {
    if (s.find_first_not_of("+-0123456789/") != std::string::npos ||
        r.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      fail(ErrorCode::Parse, "bad rational '" + s + "'");
    if (sgn(r.get_den()) == 0) fail(ErrorCode::Parse, "zero denominator in '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

QuadraticReal::QuadraticReal(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "field parameter d must be >= 2");
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) fail(ErrorCode::InvalidArgument, "field parameter d must be square-free");
}

void QuadraticReal::adoptField(const QuadraticReal& o) {
  if (o.isRational()) return;
  if (isRational()) {
    d_ = o.d_;
    return;
  }
  if (d_ != o.d_) fail(ErrorCode::InvalidArgument, "mixing quadratic fields with different d");
}

QuadraticReal& QuadraticReal::operator+=(const QuadraticReal& o) {
  adoptField(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticReal& QuadraticReal::operator-=(const QuadraticReal& o) {
  adoptField(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticReal& QuadraticReal::operator*=(const QuadraticReal& o) {
  adoptField(o);
  if (o.isRational()) {
    a_ *= o.a_;
    b_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  return *this;
}

QuadraticReal& QuadraticReal::operator/=(const QuadraticReal& o) {
  if (o.sign() == 0) fail(ErrorCode::InvalidArgument, "division by zero");
  if (o.isRational()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  Rational n = o.norm();  // nonzero since sqrt(d) is irrational
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

int QuadraticReal::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with d b^2
  int c = cmp(a_ * a_, Rational(d_) * b_ * b_);
  return c > 0 ? sa : sb;
}

double QuadraticReal::toDouble() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

long double QuadraticReal::toLongDouble() const {
  return static_cast<long double>(a_.get_d()) +
         static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(d_));
}

Integer QuadraticReal::floor() const {
  if (isRational()) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return f;
  }
  Integer f(std::floor(toDouble()));
  while (*this < QuadraticReal(Rational(f))) f -= 1;
  while (*this >= QuadraticReal(Rational(f + 1))) f += 1;
  return f;
}

Integer QuadraticReal::ceil() const {
  Integer f = floor();
  if (*this == QuadraticReal(Rational(f))) return f;
  return f + 1;
}

bool rationalIndependent(const QuadraticReal& p, const QuadraticReal& q) {
  if (p.sign() == 0 || q.sign() == 0) return false;
  if (!p.isRational() && !q.isRational() && p.d() != q.d()) return true;
  return sgn(p.a() * q.b() - q.a() * p.b()) != 0;
}

std::string to_string(const QuadraticReal& x) {
  std::ostringstream os;
  std::string rad = "sqrt(" + std::to_string(x.d()) + ")";
  if (x.isRational()) return x.a().get_str();
  if (sgn(x.a()) != 0) {
    os << x.a().get_str();
    if (sgn(x.b()) > 0) os << "+";
  }
  os << x.b().get_str() << "*" << rad;
  return os.str();
}

QuadraticReal parseQuadratic(std::string_view text, long d) {
  // accepts the output format of toString
  std::string s(text);
  auto pos = s.find("*sqrt(");
  if (pos == std::string::npos) return QuadraticReal(parseRational(s));
  auto close = s.find(')', pos);
  if (close == std::string::npos) fail(ErrorCode::Parse, "bad quadratic '" + s + "'");
  long dd = std::stol(s.substr(pos + 6, close - pos - 6));
  (void)d;
  std::string head = s.substr(0, pos);
  // split head into a and b at the last sign that is not leading
  size_t split = std::string::npos;
  for (size_t i = head.size(); i-- > 1;)
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  if (split == std::string::npos) return QuadraticReal(0, parseRational(head), dd);
  return QuadraticReal(parseRational(head.substr(0, split)), parseRational(head.substr(split)), dd);
}

}  // namespace symflow
