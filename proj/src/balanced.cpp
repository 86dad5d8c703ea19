#include "symflow/balanced.hpp"

#include <algorithm>

#include "symflow/error.hpp"

namespace symflow {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BalancedCode::BalancedCode(std::size_t k, BalancedConstraints c) : k_(k), c_(c) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "balanced code needs k >= 1");
  ones_ = c_.ones.value_or(k);
  if (ones_ > 2 * k) fail(ErrorCode::InvalidArgument, "more ones than positions");
  runCap_ = c_.maxZeroRun ? c_.maxZeroRun : 1;
  const std::size_t n = 2 * k_;
  table_.assign((n + 1) * (ones_ + 1) * (runCap_ + 1), Integer(0));
  // fill backwards
  for (std::size_t pos = n + 1; pos-- > 0;) {
    for (std::size_t o = 0; o <= ones_; ++o)
      for (std::size_t r = 0; r <= runCap_; ++r) {
        Integer& cell = table_[(pos * (ones_ + 1) + o) * (runCap_ + 1) + r];
        if (pos == n) {
          cell = o == ones_ ? 1 : 0;
          continue;
        }
        cell = 0;
        for (Symbol s : {Symbol{0}, Symbol{1}}) {
          std::size_t no, nr;
          if (step(pos, o, r, s, no, nr)) cell += table_[((pos + 1) * (ones_ + 1) + no) * (runCap_ + 1) + nr];
        }
      }
  }
  count_ = ways(0, 0, 0);
}

bool BalancedCode::step(std::size_t pos, std::size_t ones, std::size_t run, Symbol s, std::size_t& nOnes,
                        std::size_t& nRun) const {
  const std::size_t n = 2 * k_;
  if (c_.firstLastOne && (pos == 0 || pos == n - 1) && s != 1) return false;
  if (s == 1) {
    if (ones == ones_) return false;
    nOnes = ones + 1;
    nRun = 0;
    return true;
  }
  nOnes = ones;
  if (c_.maxZeroRun) {
    // runs touching either end are not interior
    bool interior = ones > 0;
    nRun = interior ? run + 1 : 0;
    if (nRun >= c_.maxZeroRun) return false;
  } else {
    nRun = 0;
  }
  return true;
}

const Integer& BalancedCode::ways(std::size_t pos, std::size_t ones, std::size_t run) const {
  return table_[(pos * (ones_ + 1) + ones) * (runCap_ + 1) + run];
}

bool BalancedCode::satisfies(const Word& w) const {
  if (w.size() != 2 * k_) return false;
  std::size_t o = 0, r = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) return false;
    std::size_t no, nr;
    if (!step(i, o, r, w[i], no, nr)) return false;
    o = no;
    r = nr;
  }
  // trailing zeros are not interior, but firstLastOne already pins the end
  return o == ones_;
}

Word BalancedCode::unrank(const Integer& index) const {
  if (index < 0 || index >= count_)
    fail(ErrorCode::IndexOutOfRange, "index " + index.get_str() + " outside [0, " + count_.get_str() + ")");
  Word w;
  Integer rest = index;
  std::size_t o = 0, r = 0;
  for (std::size_t pos = 0; pos < 2 * k_; ++pos) {
    std::size_t no, nr;
    if (step(pos, o, r, 0, no, nr)) {
      const Integer& below = ways(pos + 1, no, nr);
      if (rest < below) {
        w.push_back(0);
        o = no;
        r = nr;
        continue;
      }
      rest -= below;
    }
    if (!step(pos, o, r, 1, no, nr)) fail(ErrorCode::IndexOutOfRange, "unrank ran out of words");
    w.push_back(1);
    o = no;
    r = nr;
  }
  return w;
}

Integer BalancedCode::rank(const Word& w) const {
  if (!satisfies(w)) fail(ErrorCode::ConstraintViolated, "word " + to_string(w) + " violates the code constraints");
  Integer idx = 0;
  std::size_t o = 0, r = 0;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    std::size_t no, nr;
    if (w[pos] == 1 && step(pos, o, r, 0, no, nr)) idx += ways(pos + 1, no, nr);
    step(pos, o, r, w[pos], no, nr);
    o = no;
    r = nr;
  }
  return idx;
}

std::vector<GapPair> gapCandidates(const QuadraticReal& x, const QuadraticReal& p, const QuadraticReal& q,
                                   bool (*admissible)(unsigned long, unsigned long, const void*), const void* ctx,
                                   bool strict, const std::optional<QuadraticReal>& cutoff) {
  if (p.sign() <= 0 || q.sign() <= 0) fail(ErrorCode::PreconditionFailed, "p and q must be positive");
  std::vector<GapPair> out;
  for (unsigned long l = 1;; ++l) {
    QuadraticReal rest = x - QuadraticReal(static_cast<long>(l)) * q;
    if (rest.sign() < 0) break;
    Integer kHi = (rest / p).floor();
    Integer kLo = 0;
    if (cutoff) kLo = std::max(Integer(0), ((rest - *cutoff) / p).ceil());
    for (Integer k = kLo; k <= kHi; ++k) {
      const unsigned long ku = k.get_ui();
      if (!admissible(ku, l, ctx)) continue;
      QuadraticReal v = rest - QuadraticReal(static_cast<long>(ku)) * p;
      if (strict && v.sign() == 0) continue;
      if (cutoff && v > *cutoff) continue;
      out.push_back({v, ku, l});
    }
  }
  std::sort(out.begin(), out.end(), [](const GapPair& a, const GapPair& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.k != b.k ? a.k > b.k : a.l < b.l;
  });
  return out;
}

std::optional<GapPair> dGap(const QuadraticReal& x, const QuadraticReal& p, const QuadraticReal& q,
                            const Rational& epsilon) {
  if (!rationalIndependent(p, q)) fail(ErrorCode::PreconditionFailed, "rational independence violated");
  if (sgn(epsilon) <= 0) fail(ErrorCode::PreconditionFailed, "epsilon must be positive");
  auto ratioOk = [](unsigned long k, unsigned long l, const void* ctx) {
    const Rational& eps = *static_cast<const Rational*>(ctx);
    // 1/(1+eps) <= k/l <= 1
    return k <= l && Rational(static_cast<long>(l)) <= Rational(static_cast<long>(k)) * (1 + eps);
  };
  auto c = gapCandidates(x, p, q, ratioOk, &epsilon, false);
  if (c.empty()) return std::nullopt;
  return c.front();
}

}  // namespace symflow
