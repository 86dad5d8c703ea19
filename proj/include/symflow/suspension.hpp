#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symflow/measure.hpp"
#include "symflow/point.hpp"
#include "symflow/quadratic.hpp"
#include "symflow/subshift.hpp"

namespace symflow {

// Locally constant roof r(x) = f(x[-m, m]).
class Roof {
 public:
  // window has length 2m+1 with the coordinate 0 symbol at index m
  using Rule = std::function<QuadraticReal(const Word& window)>;

  static Roof constant(const QuadraticReal& c, std::size_t alphabet);
  static Roof bySymbol(const std::vector<QuadraticReal>& values);
  static Roof table(std::size_t radius, std::map<Word, QuadraticReal> values);
  static Roof rule(std::size_t radius, Rule rule, const QuadraticReal& minValue, std::string label);

  std::size_t radius() const { return radius_; }
  const QuadraticReal& minValue() const { return min_; }
  QuadraticReal maxValue() const;
  bool isTable() const { return !rule_; }
  const std::map<Word, QuadraticReal>& tableValues() const { return table_; }

  QuadraticReal valueOn(const Word& window) const;
  QuadraticReal at(const PointOracle& x, std::int64_t i = 0) const;
  // r(sigma^i x) for i in [from, to), one window fetch
  std::vector<QuadraticReal> values(const PointOracle& x, std::int64_t from, std::int64_t to) const;
  // the roof as a function of x[0, 2m+1); integrals are shift invariant
  LocallyConstant asLocallyConstant() const;
  // positive and defined on every admissible (2m+1)-word
  void validate(const Subshift& base) const;
  std::string describe() const;

 private:
  std::size_t radius_ = 0;
  std::map<Word, QuadraticReal> table_;
  Rule rule_;
  QuadraticReal min_;
  std::string label_;
};

class SuspensionFlow {
 public:
  SuspensionFlow(Subshift base, Roof roof, bool validate = true);
  const Subshift& base() const { return base_; }
  const Roof& roof() const { return roof_; }

 private:
  Subshift base_;
  Roof roof_;
};

struct FlowPoint {
  PointOracle base;
  QuadraticReal height;

  bool samePoint(const FlowPoint& o) const { return base.samePoint(o.base) && height == o.height; }
};

struct FlowOptions {
  std::size_t maxBaseShifts = 10'000'000;
};

// The normalized representative of phi_s(p); exact.
FlowPoint flow(const SuspensionFlow& f, const FlowPoint& p, const QuadraticReal& s, const FlowOptions& opt = {});
void checkFlowPoint(const SuspensionFlow& f, const FlowPoint& p);

double abramovEntropy(double hBase, double roofIntegral);

// Theta(mu)-mass of the slab B x [c, c+h), by direct integration over roof windows
struct SlabMass {
  double value = 0;
  std::optional<QuadraticReal> exact;
};
SlabMass thetaSlabMass(const SuspensionFlow& f, const Measure& mu, const Cylinder& b, const QuadraticReal& c,
                       const QuadraticReal& h);

}  // namespace symflow
