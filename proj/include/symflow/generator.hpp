#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symflow/recode.hpp"

namespace symflow {

// For every s in [0, q): s + u p = v q + beta with 0 <= u < M, 0 <= v <= u + 1, 0 <= beta < alpha.
struct MCondition {
  bool holds = false;
  std::size_t M = 0;
  std::optional<QuadraticReal> uncovered;  // least s in [0, q) with no (u, v)
  std::vector<QuadraticReal> breakpoints;  // left ends of the covering intervals inside [0, q)
};
MCondition checkMCondition(const QuadraticReal& p, const QuadraticReal& q, std::size_t M);
// least M >= 2 for which the condition holds
std::optional<std::size_t> minimalM(const QuadraticReal& p, const QuadraticReal& q, std::size_t maxM = 64);

// Names are strings over {P, Q, A}: P for the tower over the p-returns,
// Q for the tower of height alpha over the q-returns, A for the tower above it.
using Name = std::string;

class GeneratorModel {
 public:
  // wraps a dep recoding; requires 0 < alpha = q - p < p and the M-condition
  explicit GeneratorModel(RecodedFlow dep);
  static GeneratorModel build(const SuspensionFlow& source, const QuadraticReal& p, const QuadraticReal& q,
                              std::size_t M, const QuadraticReal& delta, const RecodeOptions& opt = {});

  const RecodedFlow& dep() const { return dep_; }
  const QuadraticReal& t() const { return dep_.p(); }
  QuadraticReal alpha() const { return dep_.q() - dep_.p(); }
  std::size_t M() const { return dep_.M(); }
  std::size_t K() const { return dep_.K(); }

  char letterOf(const FlowPoint& z) const;

 private:
  RecodedFlow dep_;
};

// letters of phi_{kt}(z) for k in [-2n, 2n]; name[0] is k = -2n
Name nameOf(const GeneratorModel& model, const FlowPoint& z, std::size_t n);

// P ... P spans with no P inside and K or K+1 letters A; inclusive indices
std::vector<std::pair<std::size_t, std::size_t>> findMarkingSubwords(const Name& name, std::size_t K);

// marking subwords -> 1 0^K 1, then Q deleted, P -> 1, A -> 0; ends trimmed
// where a remainder letter could hide
Word decodeName(const Name& name, std::size_t K);

struct RoundTrip {
  Word recovered;
  Word truth;  // z[-n, n]
  bool match = false;
};
RoundTrip roundTrip(const GeneratorModel& model, const FlowPoint& z, std::size_t n);

}  // namespace symflow
