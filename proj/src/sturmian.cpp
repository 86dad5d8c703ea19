#include "symflow/sturmian.hpp"

#include <cmath>

#include "symflow/error.hpp"

namespace symflow {

namespace {
constexpr long double kTol = 1e-9L;
}

SturmianCoder::SturmianCoder(QuadraticReal alpha, SturmianConvention convention)
    : alpha_(std::move(alpha)), convention_(convention), alphaL_(alpha_.toLongDouble()) {
  if (alpha_.isRational()) fail(ErrorCode::InvalidArgument, "rotation number must be irrational");
  if (alpha_.sign() <= 0 || alpha_ >= QuadraticReal(1))
    fail(ErrorCode::InvalidArgument, "rotation number must lie in (0,1)");
}

Symbol SturmianCoder::exactSymbol(const QuadraticReal& phase, std::int64_t i) const {
  QuadraticReal y = phase + alpha_ * QuadraticReal(Rational(static_cast<long>(i)));
  QuadraticReal f = y.frac();
  if (convention_ == SturmianConvention::LeftClosed) return f < alpha_ ? 1 : 0;
  return (f.sign() > 0 && f <= alpha_) ? 1 : 0;
}

Symbol SturmianCoder::symbol(const QuadraticReal& phase, std::int64_t i) const {
  long double y = phase.toLongDouble() + static_cast<long double>(i) * alphaL_;
  long double f = y - std::floor(y);
  if (f < kTol || 1.0L - f < kTol || std::fabs(f - alphaL_) < kTol) return exactSymbol(phase, i);
  return f < alphaL_ ? 1 : 0;
}

Word SturmianCoder::word(const QuadraticReal& phase, std::int64_t from, std::int64_t to) const {
  if (to < from) fail(ErrorCode::InvalidArgument, "reversed window");
  Word w(static_cast<std::size_t>(to - from));
  long double th = phase.toLongDouble();
  for (std::int64_t i = from; i < to; ++i) {
    long double y = th + static_cast<long double>(i) * alphaL_;
    long double f = y - std::floor(y);
    Symbol s;
    if (f < kTol || 1.0L - f < kTol || std::fabs(f - alphaL_) < kTol)
      s = exactSymbol(phase, i);
    else
      s = f < alphaL_ ? 1 : 0;
    w[static_cast<std::size_t>(i - from)] = s;
  }
  return w;
}

}  // namespace symflow

#include <algorithm>

namespace symflow {

std::vector<SturmianFactor> sturmianFactors(const SturmianCoder& coder, std::size_t n) {
  if (n == 0) return {SturmianFactor{Word{}, QuadraticReal(1), QuadraticReal(0)}};
  // word boundaries sit at {-i*alpha} for i = -1 .. n-1
  struct Point {
    QuadraticReal v;
    double approx;
  };
  std::vector<Point> pts;
  pts.reserve(n + 1);
  for (long i = -1; i < static_cast<long>(n); ++i) {
    QuadraticReal v = (coder.alpha() * QuadraticReal(Rational(-i))).frac();
    pts.push_back({v, v.toDouble()});
  }
  std::sort(pts.begin(), pts.end(), [](const Point& x, const Point& y) {
    if (std::fabs(x.approx - y.approx) > 1e-12) return x.approx < y.approx;
    return x.v < y.v;
  });
  std::vector<SturmianFactor> out;
  out.reserve(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    QuadraticReal lo = pts[j].v;
    QuadraticReal hi = j + 1 < pts.size() ? pts[j + 1].v : pts[0].v + QuadraticReal(1);
    QuadraticReal mid = ((lo + hi) / QuadraticReal(2)).frac();
    out.push_back({coder.word(mid, 0, static_cast<std::int64_t>(n)), hi - lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const SturmianFactor& a, const SturmianFactor& b) { return a.word < b.word; });
  return out;
}

}  // namespace symflow
