#pragma once

#include <optional>
#include <vector>

#include "symflow/measure.hpp"
#include "symflow/suspension.hpp"

namespace symflow {

struct PeriodicOrbit {
  Word word;  // least rotation of a primitive period
  std::size_t basePeriod = 0;
  QuadraticReal period;  // t(gamma): base period, or the roof sum for a flow census
  std::shared_ptr<const EmpiricalMeasure> measure;
  std::vector<Rational> signature;  // masses of the D-family words, exact
  PointOracle point() const { return PointOracle::periodic(word); }
};

struct PeriodicCensus {
  std::size_t maxPeriod = 0;  // base periods 1..maxPeriod are complete
  bool flow = false;
  std::optional<QuadraticReal> minRoof;  // flow census: t <= maxPeriod * minRoof is complete
  std::vector<Integer> fixedCounts;      // [n] = #Fix(sigma^n), index 0 unused
  std::vector<PeriodicOrbit> orbits;     // sorted by (period, word)
  DMetricConfig dConfig;
  std::size_t alphabet = 0;

  QuadraticReal completeUpTo() const;
};

PeriodicCensus periodicCensus(const Subshift& s, std::size_t maxPeriod, const DMetricConfig& d = {});
// periods are the roof sums over each base orbit
PeriodicCensus periodicCensus(const SuspensionFlow& f, std::size_t maxPeriod, const DMetricConfig& d = {});

struct PeriodicGrowth {
  // max of (1/t) log F(t) over t in the upper half of the complete range;
  // F(t) counts base points returning exactly at time t
  double value = 0;
  // max over t of (1/t) log #{periodic base points with t(gamma) <= t}
  double cumulativeSup = 0;
  std::optional<QuadraticReal> argmax;
  bool horizonLimited = true;
};
PeriodicGrowth globalPeriodicGrowth(const PeriodicCensus& c);

double censusDistance(const PeriodicCensus& c, std::size_t i, std::size_t j);

enum class PkCount { Orbits, Measures };

// (1/t(gamma)) log #{gamma' : D < eps, t(gamma') <= t(gamma)}
double pk(const PeriodicCensus& c, std::size_t orbit, double eps, PkCount mode = PkCount::Orbits);

struct U1Row {
  std::size_t orbit = 0;
  std::vector<double> pk;        // per eps_k
  std::vector<double> envelope;  // max of p_k over census orbits within eps_k
};
struct U1Table {
  std::vector<double> eps;
  std::vector<U1Row> rows;
  bool censusLimited = true;
};
U1Table u1Estimate(const PeriodicCensus& c, const std::vector<double>& eps, PkCount mode = PkCount::Orbits);

}  // namespace symflow
