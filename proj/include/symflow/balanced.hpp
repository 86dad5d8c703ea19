#pragma once

#include <optional>
#include <vector>

#include "symflow/quadratic.hpp"
#include "symflow/word.hpp"

namespace symflow {

// Binary words of length 2k with a fixed number of ones, in lexicographic order.
struct BalancedConstraints {
  std::optional<std::size_t> ones;  // default k
  bool firstLastOne = false;
  // no run of zeros of length >= maxZeroRun strictly inside; 0 disables
  std::size_t maxZeroRun = 0;
};

class BalancedCode {
 public:
  BalancedCode(std::size_t k, BalancedConstraints c = {});

  std::size_t length() const { return 2 * k_; }
  std::size_t k() const { return k_; }
  const Integer& count() const { return count_; }
  const BalancedConstraints& constraints() const { return c_; }

  Word unrank(const Integer& index) const;
  Integer rank(const Word& w) const;
  bool satisfies(const Word& w) const;

 private:
  // completions from (position, ones used, current zero run)
  const Integer& ways(std::size_t pos, std::size_t ones, std::size_t run) const;
  bool step(std::size_t pos, std::size_t ones, std::size_t run, Symbol s, std::size_t& nOnes, std::size_t& nRun) const;

  std::size_t k_;
  std::size_t ones_;
  BalancedConstraints c_;
  std::size_t runCap_;
  std::vector<Integer> table_;
  Integer count_;
};

Integer binomial(unsigned long n, unsigned long k);

// D(x) = min x - (kp + lq) >= 0 over k >= 0, l >= 1, 1/(1+eps) <= k/l <= 1
struct GapPair {
  QuadraticReal value;
  unsigned long k = 0, l = 0;
};
std::optional<GapPair> dGap(const QuadraticReal& x, const QuadraticReal& p, const QuadraticReal& q,
                            const Rational& epsilon);

// admissible pairs with kp + lq <= x, sorted by remainder; `strict` drops exact
// hits, `cutoff` drops remainders above it
std::vector<GapPair> gapCandidates(const QuadraticReal& x, const QuadraticReal& p, const QuadraticReal& q,
                                   bool (*admissible)(unsigned long k, unsigned long l, const void* ctx),
                                   const void* ctx, bool strict,
                                   const std::optional<QuadraticReal>& cutoff = std::nullopt);

}  // namespace symflow
