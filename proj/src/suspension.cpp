#include "symflow/suspension.hpp"

#include <algorithm>

#include "symflow/error.hpp"

namespace symflow {

Roof Roof::constant(const QuadraticReal& c, std::size_t alphabet) {
  std::vector<QuadraticReal> v(alphabet, c);
  Roof r = bySymbol(v);
  r.label_ = "constant(" + to_string(c) + ")";
  return r;
}

Roof Roof::bySymbol(const std::vector<QuadraticReal>& values) {
  std::map<Word, QuadraticReal> t;
  for (std::size_t a = 0; a < values.size(); ++a) t.emplace(Word{static_cast<Symbol>(a)}, values[a]);
  return table(0, std::move(t));
}

Roof Roof::table(std::size_t radius, std::map<Word, QuadraticReal> values) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "empty roof table");
  Roof r;
  r.radius_ = radius;
  bool first = true;
  for (const auto& [w, v] : values) {
    if (w.size() != 2 * radius + 1) fail(ErrorCode::InvalidArgument, "roof table word of wrong length");
    if (v.sign() <= 0) fail(ErrorCode::InvalidArgument, "roof values must be positive");
    if (first || v < r.min_) r.min_ = v;
    first = false;
  }
  r.table_ = std::move(values);
  r.label_ = "table(radius=" + std::to_string(radius) + ")";
  return r;
}

Roof Roof::rule(std::size_t radius, Rule rule, const QuadraticReal& minValue, std::string label) {
  if (minValue.sign() <= 0) fail(ErrorCode::InvalidArgument, "roof lower bound must be positive");
  Roof r;
  r.radius_ = radius;
  r.rule_ = std::move(rule);
  r.min_ = minValue;
  r.label_ = std::move(label);
  return r;
}

QuadraticReal Roof::maxValue() const {
  if (!isTable()) fail(ErrorCode::InvalidArgument, "maximum of a rule roof is not tabulated");
  QuadraticReal m = min_;
  for (const auto& [w, v] : table_)
    if (v > m) m = v;
  return m;
}

QuadraticReal Roof::valueOn(const Word& window) const {
  if (window.size() != 2 * radius_ + 1) fail(ErrorCode::InvalidArgument, "roof window of wrong length");
  if (rule_) return rule_(window);
  auto it = table_.find(window);
  if (it == table_.end()) fail(ErrorCode::InvalidArgument, "roof undefined on " + to_string(window));
  return it->second;
}

QuadraticReal Roof::at(const PointOracle& x, std::int64_t i) const {
  const auto m = static_cast<std::int64_t>(radius_);
  return valueOn(x.window(i - m, i + m + 1));
}

std::vector<QuadraticReal> Roof::values(const PointOracle& x, std::int64_t from, std::int64_t to) const {
  const auto m = static_cast<std::int64_t>(radius_);
  Word w = x.window(from - m, to + m);
  std::vector<QuadraticReal> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, to - from)));
  Word win(2 * radius_ + 1);
  for (std::int64_t i = 0; i < to - from; ++i) {
    std::copy(w.begin() + i, w.begin() + i + 2 * m + 1, win.begin());
    out.push_back(valueOn(win));
  }
  return out;
}

LocallyConstant Roof::asLocallyConstant() const {
  if (!isTable()) fail(ErrorCode::InvalidArgument, "rule roofs have no finite table");
  return LocallyConstant{2 * radius_ + 1, table_};
}

void Roof::validate(const Subshift& base) const {
  if (!isTable()) return;
  for (const Word& w : base.language(2 * radius_ + 1)) {
    auto it = table_.find(w);
    if (it == table_.end()) fail(ErrorCode::InvalidArgument, "roof undefined on admissible word " + to_string(w));
  }
}

std::string Roof::describe() const { return label_; }

SuspensionFlow::SuspensionFlow(Subshift base, Roof roof, bool validate) : base_(std::move(base)), roof_(std::move(roof)) {
  if (!base_.valid()) fail(ErrorCode::InvalidArgument, "suspension needs a base subshift");
  if (validate) {
    if (base_.language(1).empty()) fail(ErrorCode::EmptySubshift, "empty base");
    roof_.validate(base_);
  }
}

void checkFlowPoint(const SuspensionFlow& f, const FlowPoint& p) {
  if (p.height.sign() < 0 || p.height >= f.roof().at(p.base))
    fail(ErrorCode::InvalidArgument, "flow point height outside [0, r(x))");
}

FlowPoint flow(const SuspensionFlow& f, const FlowPoint& p, const QuadraticReal& s, const FlowOptions& opt) {
  QuadraticReal h = p.height + s;
  std::int64_t i = 0;
  std::size_t shifts = 0;
  std::size_t chunk = 16;
  if (h.sign() >= 0) {
    while (true) {
      auto vals = f.roof().values(p.base, i, i + static_cast<std::int64_t>(chunk));
      for (const auto& r : vals) {
        if (h < r) return {p.base.shifted(i), h};
        h -= r;
        ++i;
        if (++shifts > opt.maxBaseShifts) fail(ErrorCode::HorizonExceeded, "flow normalization exceeded shift bound");
      }
      chunk = std::min<std::size_t>(chunk * 2, 4096);
    }
  }
  while (true) {
    auto vals = f.roof().values(p.base, i - static_cast<std::int64_t>(chunk), i);
    for (auto it = vals.rbegin(); it != vals.rend(); ++it) {
      --i;
      h += *it;
      if (h.sign() >= 0) return {p.base.shifted(i), h};
      if (++shifts > opt.maxBaseShifts) fail(ErrorCode::HorizonExceeded, "flow normalization exceeded shift bound");
    }
    chunk = std::min<std::size_t>(chunk * 2, 4096);
  }
}

double abramovEntropy(double hBase, double roofIntegral) {
  if (!(roofIntegral > 0)) fail(ErrorCode::InvalidArgument, "roof integral must be positive");
  return hBase / roofIntegral;
}

SlabMass thetaSlabMass(const SuspensionFlow& f, const Measure& mu, const Cylinder& b, const QuadraticReal& c,
                       const QuadraticReal& h) {
  const Roof& roof = f.roof();
  if (!roof.isTable()) fail(ErrorCode::InvalidArgument, "slab masses need a tabulated roof");
  const auto m = static_cast<std::int64_t>(roof.radius());
  Integral total = integrateLocallyConstant(roof.asLocallyConstant(), mu);
  // words covering both the roof window and the cylinder
  std::int64_t lo = std::min(-m, b.anchor);
  std::int64_t hi = std::max(m + 1, b.anchor + static_cast<std::int64_t>(b.word.size()));
  QuadraticReal acc;
  double accD = 0;
  bool exact = total.exact.has_value();
  for (const auto& [w, mass] : mu.blockDistribution(static_cast<std::size_t>(hi - lo))) {
    if (!std::equal(b.word.begin(), b.word.end(), w.begin() + (b.anchor - lo))) continue;
    Word win(w.begin() + (-m - lo), w.begin() + (m + 1 - lo));
    QuadraticReal r = roof.valueOn(win);
    // length of [c, c+h) inside [0, r)
    QuadraticReal top = std::min(c + h, r);
    QuadraticReal bottom = std::max(c, QuadraticReal(0));
    QuadraticReal len = top > bottom ? top - bottom : QuadraticReal(0);
    accD += mass * len.toDouble();
    if (exact) {
      auto e = mu.exactMass(w);
      if (e)
        acc += *e * len;
      else
        exact = false;
    }
  }
  SlabMass out;
  out.value = accD / total.value;
  if (exact) {
    out.exact = acc / *total.exact;
    out.value = out.exact->toDouble();
  }
  return out;
}

}  // namespace symflow
