#pragma once

#include <cstdint>

#include "symflow/quadratic.hpp"
#include "symflow/word.hpp"

namespace symflow {

// LeftClosed: symbol 1 iff {phase + i*alpha} lies in [0, alpha).
// RightClosed: symbol 1 iff it lies in (0, alpha].
enum class SturmianConvention { LeftClosed, RightClosed };

class SturmianCoder {
 public:
  SturmianCoder(QuadraticReal alpha, SturmianConvention convention);

  const QuadraticReal& alpha() const { return alpha_; }
  SturmianConvention convention() const { return convention_; }

  Symbol symbol(const QuadraticReal& phase, std::int64_t i) const;
  // x[from, to) of the point with the given phase
  Word word(const QuadraticReal& phase, std::int64_t from, std::int64_t to) const;

 private:
  Symbol exactSymbol(const QuadraticReal& phase, std::int64_t i) const;

  QuadraticReal alpha_;
  SturmianConvention convention_;
  long double alphaL_;
};

}  // namespace symflow

#include <vector>

namespace symflow {

struct SturmianFactor {
  Word word;
  QuadraticReal mass;   // Lebesgue length of the phase interval producing word at 0
  QuadraticReal phase;  // midpoint of that interval
};

// The n+1 factors of length n, sorted lexicographically.
std::vector<SturmianFactor> sturmianFactors(const SturmianCoder& coder, std::size_t n);

}  // namespace symflow
