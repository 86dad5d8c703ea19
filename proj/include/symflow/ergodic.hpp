#pragma once

#include <cstdint>
#include <vector>

#include "symflow/measure.hpp"
#include "symflow/suspension.hpp"

namespace symflow {

// Itinerary entropy of the time-delta map of the suspension under Theta(mu)
// w.r.t. {top levels} + {B x [0, delta) : B in P}, where P groups the
// 0-coordinate symbols by `partition`. Exact chain enumeration.
struct TowerEntropy {
  double rate = 0;       // H_n - H_{n-1}, per step of the time-delta map
  double blockRate = 0;  // H_n / n
  double perUnitTime = 0;  // rate / delta
  double roofIntegral = 0;
  std::size_t levels = 0;  // maximal tower height in delta steps
  std::size_t n = 0;
};

TowerEntropy timeDeltaTowerEntropy(const Measure& mu, const Roof& roof, const Rational& delta,
                                   const std::vector<std::size_t>& partition, std::size_t n);

// entropy of the symbol partition P (labels by `partition`) for a Markov measure,
// (H_n - H_{n-1}) at the given n, exact forward recursion
double partitionEntropyRate(const MarkovMeasure& mu, const std::vector<std::size_t>& partition, std::size_t n);

struct InducedCheck {
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
  std::size_t n = 0;
  std::size_t truncation = 0;  // return times above this are dropped
  double tailMass = 0;         // mass of the dropped return times
  double measureOfA = 0;
};

// A is a set of symbols (the 1-cylinders); partitionOfA labels them and must separate them.
InducedCheck inducedEntropyIdentityCheck(const MarkovMeasure& mu, const std::vector<Symbol>& a,
                                         const std::vector<std::size_t>& partitionOfA, std::size_t n,
                                         std::size_t truncation = 0);

struct ReturnLaw {
  std::vector<double> probability;  // index tau - 1
  double tailMass = 0;
  std::size_t truncation = 0;
  double measureOfA = 0;
  double truncatedMean = 0;
};

// law of the first return time to A under mu conditioned on A, truncated
// at the first T with tail < tailBound
ReturnLaw returnTimeLaw(const MarkovMeasure& mu, const std::vector<Symbol>& a, double tailBound = 0x1.0p-30);

struct KacResult {
  double simulatedMean = 0;
  std::size_t returns = 0;
  double exactMean = 0;   // truncated-chain value
  double tailMass = 0;
  std::size_t truncation = 0;
  double measureOfA = 0;
};

// mean return time to the section A x {0} of the unit-roof suspension
KacResult kacCheck(const MarkovMeasure& mu, const std::vector<Symbol>& a, std::size_t returns, std::uint64_t seed);

}  // namespace symflow
