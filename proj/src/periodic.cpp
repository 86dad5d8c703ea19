#include "symflow/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "symflow/error.hpp"

namespace symflow {

namespace {

double logInteger(const Integer& v) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

PeriodicCensus baseCensus(const Subshift& s, std::size_t maxPeriod, const DMetricConfig& d) {
  if (maxPeriod == 0) fail(ErrorCode::InvalidArgument, "census needs a positive period bound");
  PeriodicCensus c;
  c.maxPeriod = maxPeriod;
  c.dConfig = d;
  c.alphabet = s.alphabetSize();
  c.fixedCounts.assign(maxPeriod + 1, Integer(0));
  std::vector<Word> family;
  for (std::size_t i = 1; i <= d.terms; ++i) family.push_back(dFamilyWord(c.alphabet, i));
  for (std::size_t n = 1; n <= maxPeriod; ++n) {
    std::vector<Word> words = s.periodicWords(n);
    c.fixedCounts[n] = Integer(static_cast<unsigned long>(words.size()));
    for (const Word& u : words) {
      if (primitivePeriod(u) != n || minimalRotation(u) != u) continue;
      PeriodicOrbit o;
      o.word = u;
      o.basePeriod = n;
      o.period = QuadraticReal(static_cast<long>(n));
      o.measure = EmpiricalMeasure::periodic(u, c.alphabet);
      for (const Word& w : family) o.signature.push_back(o.measure->frequency(w));
      c.orbits.push_back(std::move(o));
    }
  }
  return c;
}

void sortOrbits(PeriodicCensus& c) {
  std::stable_sort(c.orbits.begin(), c.orbits.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.period != b.period) return a.period < b.period;
    return lengthLexLess(a.word, b.word);
  });
}

}  // namespace

QuadraticReal PeriodicCensus::completeUpTo() const {
  QuadraticReal n(static_cast<long>(maxPeriod));
  return flow ? n * *minRoof : n;
}

PeriodicCensus periodicCensus(const Subshift& s, std::size_t maxPeriod, const DMetricConfig& d) {
  PeriodicCensus c = baseCensus(s, maxPeriod, d);
  sortOrbits(c);
  return c;
}

PeriodicCensus periodicCensus(const SuspensionFlow& f, std::size_t maxPeriod, const DMetricConfig& d) {
  PeriodicCensus c = baseCensus(f.base(), maxPeriod, d);
  c.flow = true;
  c.minRoof = f.roof().minValue();
  for (PeriodicOrbit& o : c.orbits) {
    QuadraticReal sum(0);
    for (const QuadraticReal& v : f.roof().values(o.point(), 0, static_cast<std::int64_t>(o.basePeriod))) sum += v;
    o.period = sum;
  }
  sortOrbits(c);
  return c;
}

PeriodicGrowth globalPeriodicGrowth(const PeriodicCensus& c) {
  PeriodicGrowth g;
  const QuadraticReal top = c.completeUpTo();
  const QuadraticReal half = top * QuadraticReal(ratio(1, 2));
  // F(t): each primitive orbit of base period d and time tau puts d points at k tau
  std::map<QuadraticReal, Integer> exact;
  for (const PeriodicOrbit& o : c.orbits)
    for (QuadraticReal t = o.period; t <= top; t += o.period)
      exact[t] += Integer(static_cast<unsigned long>(o.basePeriod));
  bool any = false;
  for (const auto& [t, count] : exact) {
    if (t < half) continue;
    double v = logInteger(count) / t.toDouble();
    if (!any || v > g.value) {
      g.value = v;
      g.argmax = t;
      any = true;
    }
  }
  Integer cumulative(0);
  std::size_t i = 0;
  while (i < c.orbits.size()) {
    QuadraticReal t = c.orbits[i].period;
    for (; i < c.orbits.size() && c.orbits[i].period == t; ++i)
      cumulative += Integer(static_cast<unsigned long>(c.orbits[i].basePeriod));
    if (t > top) break;
    g.cumulativeSup = std::max(g.cumulativeSup, logInteger(cumulative) / t.toDouble());
  }
  return g;
}

double censusDistance(const PeriodicCensus& c, std::size_t i, std::size_t j) {
  const auto& a = c.orbits.at(i).signature;
  const auto& b = c.orbits.at(j).signature;
  double d = 0, w = 1;
  for (std::size_t n = 0; n < a.size(); ++n) {
    w *= 0.5;
    Rational diff = a[n] - b[n];
    d += std::fabs(diff.get_d()) * w;
  }
  return d;
}

double pk(const PeriodicCensus& c, std::size_t orbit, double eps, PkCount mode) {
  if (orbit >= c.orbits.size()) fail(ErrorCode::IndexOutOfRange, "orbit index outside the census");
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const QuadraticReal& t = c.orbits[orbit].period;
  if (t > c.completeUpTo()) fail(ErrorCode::DepthExceeded, "census does not cover periods up to t(gamma)");
  std::size_t count = 0;
  std::set<std::vector<Rational>> seen;
  for (std::size_t j = 0; j < c.orbits.size() && c.orbits[j].period <= t; ++j) {
    if (censusDistance(c, orbit, j) >= eps) continue;
    if (mode == PkCount::Measures && !seen.insert(c.orbits[j].signature).second) continue;
    ++count;
  }
  return std::log(static_cast<double>(count)) / t.toDouble();
}

U1Table u1Estimate(const PeriodicCensus& c, const std::vector<double>& eps, PkCount mode) {
  for (std::size_t k = 1; k < eps.size(); ++k)
    if (!(eps[k] < eps[k - 1])) fail(ErrorCode::InvalidArgument, "eps sequence must decrease");
  U1Table out;
  out.eps = eps;
  for (std::size_t i = 0; i < c.orbits.size(); ++i) {
    U1Row row;
    row.orbit = i;
    for (double e : eps) row.pk.push_back(pk(c, i, e, mode));
    out.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < c.orbits.size(); ++i)
    for (std::size_t k = 0; k < eps.size(); ++k) {
      double m = out.rows[i].pk[k];
      for (std::size_t j = 0; j < c.orbits.size(); ++j)
        if (censusDistance(c, i, j) < eps[k]) m = std::max(m, out.rows[j].pk[k]);
      out.rows[i].envelope.push_back(m);
    }
  return out;
}

}  // namespace symflow
