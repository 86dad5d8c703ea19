#include <cmath>

#include "support.hpp"
#include "symflow/error.hpp"
#include "symflow/periodic.hpp"

using namespace symflow;

namespace {
const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);

// Lucas numbers by their recurrence
Integer lucas(std::size_t n) {
  Integer a(2), b(1);
  for (std::size_t i = 0; i < n; ++i) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// #Fix(sigma^n) by brute force over all binary words
std::size_t bruteGoldenFix(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = !(((m >> i) & 1) && ((m >> ((i + 1) % n)) & 1));
    if (ok) ++count;
  }
  return count;
}
}  // namespace

TEST_CASE("golden mean fixed-point counts are Lucas numbers") {
  PeriodicCensus c = periodicCensus(Subshift::goldenMean(), 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(c.fixedCounts[n] == lucas(n));
    CHECK(c.fixedCounts[n] == Integer(static_cast<unsigned long>(bruteGoldenFix(n))));
  }
  // orbits of each minimal period account for all fixed points
  for (std::size_t n = 1; n <= 12; ++n) {
    Integer sum(0);
    for (const auto& o : c.orbits)
      if (n % o.basePeriod == 0) sum += Integer(static_cast<unsigned long>(o.basePeriod));
    CHECK(sum == c.fixedCounts[n]);
  }
  for (const auto& o : c.orbits) CHECK(primitivePeriod(o.word) == o.basePeriod);
}

TEST_CASE("global periodic growth") {
  PeriodicGrowth full = globalPeriodicGrowth(periodicCensus(Subshift::fullShift(2), 10));
  CHECK(full.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(full.horizonLimited);
  PeriodicGrowth golden = globalPeriodicGrowth(periodicCensus(Subshift::goldenMean(), 12));
  CHECK(std::abs(golden.value - kLogPhi) < 0.05);
  // cumulative counts overshoot at this horizon
  CHECK(golden.cumulativeSup > golden.value);
  PeriodicCensus st = periodicCensus(Subshift::sturmian(QuadraticReal(-1, 1)), 12);
  CHECK(st.orbits.empty());
  CHECK(globalPeriodicGrowth(st).value == 0);
}

TEST_CASE("flow census rescales periods by the roof") {
  SuspensionFlow f(Subshift::fullShift(2), Roof::constant(QuadraticReal(2), 2));
  PeriodicCensus c = periodicCensus(f, 10);
  for (const auto& o : c.orbits) CHECK(o.period == QuadraticReal(static_cast<long>(2 * o.basePeriod)));
  CHECK(globalPeriodicGrowth(c).value == doctest::Approx(std::log(2.0) / 2).epsilon(1e-12));

  // unit roof agrees with the discrete census
  SuspensionFlow unit(Subshift::goldenMean(), Roof::constant(QuadraticReal(1), 2));
  PeriodicCensus cf = periodicCensus(unit, 9);
  PeriodicCensus cd = periodicCensus(Subshift::goldenMean(), 9);
  REQUIRE(cf.orbits.size() == cd.orbits.size());
  for (std::size_t i = 0; i < cd.orbits.size(); ++i) {
    CHECK(cf.orbits[i].word == cd.orbits[i].word);
    CHECK(pk(cf, i, 0.2) == doctest::Approx(pk(cd, i, 0.2)));
  }
}

TEST_CASE("p_k examples") {
  PeriodicCensus g = periodicCensus(Subshift::goldenMean(), 8);
  std::size_t alt = 0;
  while (g.orbits[alt].word != parseWord("01")) ++alt;
  CHECK(pk(g, alt, 1e-6) == 0);

  PeriodicCensus full = periodicCensus(Subshift::fullShift(2), 8);
  REQUIRE(full.orbits[0].word == parseWord("0"));
  CHECK(pk(full, 0, 100.0) == doctest::Approx(std::log(2.0)));
  // below the least positive pairwise distance only D-twins remain, and they share a measure
  double least = 1e9;
  bool twins = false;
  for (std::size_t i = 0; i < full.orbits.size(); ++i)
    for (std::size_t j = i + 1; j < full.orbits.size(); ++j) {
      double d = censusDistance(full, i, j);
      if (d > 0) least = std::min(least, d);
      twins = twins || d == 0;
    }
  CHECK(twins);  // e.g. 001011 and 001101 agree on the first 16 family words
  for (std::size_t i = 0; i < full.orbits.size(); ++i) CHECK(pk(full, i, least, PkCount::Measures) == 0);
  CHECK_THROWS_AS(pk(full, 0, 0.0), Error);
}

TEST_CASE("orbit and measure counts") {
  // a short D-family cannot separate long orbits, so measures collapse
  DMetricConfig coarse;
  coarse.terms = 2;
  PeriodicCensus c = periodicCensus(Subshift::fullShift(2), 6, coarse);
  std::size_t half = 0;
  while (c.orbits[half].word != parseWord("000111")) ++half;
  // 01, 0011, 000111, 001011, 001101 all have half their symbols equal to 1
  CHECK(pk(c, half, 1e-9, PkCount::Orbits) == doctest::Approx(std::log(5.0) / 6));
  CHECK(pk(c, half, 1e-9, PkCount::Measures) == 0);
}

TEST_CASE("u1 table") {
  std::vector<double> eps;
  for (int k = 1; k <= 12; ++k) eps.push_back(std::ldexp(1.0, -k));
  PeriodicCensus full = periodicCensus(Subshift::fullShift(2), 8);
  U1Table t = u1Estimate(full, eps);
  CHECK(t.censusLimited);
  REQUIRE(t.rows.size() == full.orbits.size());
  const double growth = globalPeriodicGrowth(full).value;
  for (const auto& row : t.rows)
    for (std::size_t k = 0; k < eps.size(); ++k) {
      if (k > 0) CHECK(row.pk[k] <= row.pk[k - 1] + 1e-15);
      CHECK(row.pk[k] <= growth + 1e-12);
      CHECK(row.envelope[k] >= row.pk[k]);
    }
  // the fixed point 0 is separated from 1 at a finite scale
  std::size_t k0 = eps.size();
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (t.rows[0].pk[k] == 0) {
      k0 = k;
      break;
    }
  REQUIRE(k0 < eps.size());
  for (std::size_t k = k0; k < eps.size(); ++k) CHECK(t.rows[0].pk[k] == 0);
  CHECK(eps[k0] <= censusDistance(full, 0, 1));

  CHECK(u1Estimate(periodicCensus(Subshift::sturmian(QuadraticReal(-1, 1)), 10), eps).rows.empty());
  CHECK_THROWS_AS(u1Estimate(full, {0.1, 0.2}), Error);
}
