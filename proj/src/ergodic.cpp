#include "symflow/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "symflow/error.hpp"
#include "symflow/section.hpp"
#include "symflow/subshift.hpp"

namespace symflow {

namespace {

double shannon(const std::unordered_map<Word, double, WordHash>& dist) {
  double h = 0;
  for (const auto& [w, p] : dist)
    if (p > 0) h -= p * std::log(p);
  return h;
}

bool inSet(const std::vector<Symbol>& a, Symbol s) { return std::find(a.begin(), a.end(), s) != a.end(); }

}  // namespace

TowerEntropy timeDeltaTowerEntropy(const Measure& mu, const Roof& roof, const Rational& delta,
                                   const std::vector<std::size_t>& partition, std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "tower entropy needs n >= 2");
  if (sgn(delta) <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  if (!roof.isTable()) fail(ErrorCode::InvalidArgument, "tower entropy needs a tabulated roof");
  if (partition.size() < mu.alphabetSize()) fail(ErrorCode::InvalidArgument, "partition must label every symbol");
  std::map<Word, std::size_t> levels;
  std::size_t maxLevels = 0;
  for (const auto& [w, v] : roof.tableValues()) {
    if (!v.isRational()) fail(ErrorCode::IncommensurableRoof, "roof value " + to_string(v) + " is irrational");
    Rational q = v.a() / delta;
    if (q.get_den() != 1)
      fail(ErrorCode::IncommensurableRoof, "roof value " + to_string(v) + " is not a multiple of delta");
    levels[w] = q.get_num().get_ui();
    maxLevels = std::max(maxLevels, levels[w]);
  }
  Integral integral = integrateLocallyConstant(roof.asLocallyConstant(), mu);
  const double ir = integral.value;
  const std::size_t m = roof.radius();
  const std::size_t len = n + 2 * m;
  const double levelWeight = delta.get_d() / ir;
  std::unordered_map<Word, double, WordHash> distN, distN1;
  Word labels(n);
  Word win(2 * m + 1);
  for (const auto& [u, mass] : mu.blockDistribution(len)) {
    // tower heights along the visited coordinates
    std::vector<std::size_t> heights(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(u.begin() + static_cast<std::ptrdiff_t>(i), u.begin() + static_cast<std::ptrdiff_t>(i + 2 * m + 1),
                win.begin());
      auto it = levels.find(win);
      if (it == levels.end()) fail(ErrorCode::InvalidArgument, "roof undefined on " + to_string(win));
      heights[i] = it->second;
    }
    for (std::size_t start = 0; start < heights[0]; ++start) {
      std::size_t coord = 0, lev = start;
      for (std::size_t k = 0; k < n; ++k) {
        labels[k] = lev == 0 ? static_cast<Symbol>(1 + partition[u[m + coord]]) : Symbol{0};
        if (++lev == heights[coord]) {
          lev = 0;
          ++coord;
        }
      }
      const double p = mass * levelWeight;
      distN[labels] += p;
      distN1[Word(labels.begin(), labels.end() - 1)] += p;
    }
  }
  TowerEntropy out;
  const double hn = shannon(distN), hn1 = shannon(distN1);
  out.rate = hn - hn1;
  out.blockRate = hn / static_cast<double>(n);
  out.perUnitTime = out.rate / delta.get_d();
  out.roofIntegral = ir;
  out.levels = maxLevels;
  out.n = n;
  return out;
}

namespace {

// H of the label process over n steps via forward recursion on label words
double hiddenBlockShannon(const MarkovMeasure& mu, const std::vector<std::size_t>& label, std::size_t n) {
  const std::size_t k = mu.alphabetSize();
  std::size_t nl = 0;
  for (std::size_t s = 0; s < k; ++s) nl = std::max(nl, label[s] + 1);
  double h = 0;
  std::vector<double> alpha(k);
  auto rec = [&](auto&& self, const std::vector<double>& joint, std::size_t depth) -> void {
    double total = 0;
    for (double x : joint) total += x;
    if (total <= 0) return;
    if (depth == n) {
      h -= total * std::log(total);
      return;
    }
    for (std::size_t l = 0; l < nl; ++l) {
      std::vector<double> next(k, 0.0);
      bool any = false;
      for (std::size_t t = 0; t < k; ++t) {
        if (label[t] != l) continue;
        double v = 0;
        if (depth == 0)
          v = mu.stationary(t);
        else
          for (std::size_t s = 0; s < k; ++s) v += joint[s] * mu.transition(s, t);
        next[t] = v;
        any = any || v > 0;
      }
      if (any) self(self, next, depth + 1);
    }
  };
  rec(rec, std::vector<double>(k, 1.0), 0);
  return h;
}

}  // namespace

double partitionEntropyRate(const MarkovMeasure& mu, const std::vector<std::size_t>& partition, std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  return hiddenBlockShannon(mu, partition, n) - hiddenBlockShannon(mu, partition, n - 1);
}

ReturnLaw returnTimeLaw(const MarkovMeasure& mu, const std::vector<Symbol>& a, double tailBound) {
  const std::size_t k = mu.alphabetSize();
  ReturnLaw law;
  for (Symbol s : a) law.measureOfA += mu.stationary(s);
  if (!(law.measureOfA > 0)) fail(ErrorCode::PreconditionFailed, "mu(A) must be positive");
  // mass still outside A after tau steps, started from pi restricted to A
  std::vector<double> outside(k, 0.0);
  double tail = 1.0;
  for (std::size_t tau = 1;; ++tau) {
    std::vector<double> next(k, 0.0);
    double hit = 0;
    for (std::size_t s = 0; s < k; ++s) {
      double from = tau == 1 ? (inSet(a, static_cast<Symbol>(s)) ? mu.stationary(s) / law.measureOfA : 0.0) : outside[s];
      if (from <= 0) continue;
      for (std::size_t t = 0; t < k; ++t) {
        double v = from * mu.transition(s, t);
        if (inSet(a, static_cast<Symbol>(t)))
          hit += v;
        else
          next[t] += v;
      }
    }
    outside.swap(next);
    tail = 0;
    for (double v : outside) tail += v;
    law.probability.push_back(hit);
    law.truncatedMean += static_cast<double>(tau) * hit;
    if (tail < tailBound) {
      law.truncation = tau;
      law.tailMass = tail;
      return law;
    }
    if (tau > 100000) fail(ErrorCode::PreconditionFailed, "return-time tail does not decay");
  }
}

InducedCheck inducedEntropyIdentityCheck(const MarkovMeasure& mu, const std::vector<Symbol>& a,
                                         const std::vector<std::size_t>& partitionOfA, std::size_t n,
                                         std::size_t truncation) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  if (a.empty() || partitionOfA.size() != a.size())
    fail(ErrorCode::InvalidArgument, "A and its partition must be nonempty and aligned");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (partitionOfA[i] == partitionOfA[j])
        fail(ErrorCode::PreconditionFailed, "the partition of A must separate its symbols");
  const std::size_t k = mu.alphabetSize();
  InducedCheck out;
  out.n = n;
  for (Symbol s : a) out.measureOfA += mu.stationary(s);
  if (!(out.measureOfA > 0)) fail(ErrorCode::PreconditionFailed, "mu(A) must be positive");

  // F[tau][i][j]: from a[i], first return to A at a[j] after exactly tau steps
  std::size_t tmax = truncation;
  if (tmax == 0) tmax = returnTimeLaw(mu, a).truncation;
  out.truncation = tmax;
  std::vector<std::vector<std::vector<double>>> f(tmax + 1, std::vector<std::vector<double>>(a.size(), std::vector<double>(a.size(), 0)));
  double tail = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<double> outside(k, 0.0);
    for (std::size_t tau = 1; tau <= tmax; ++tau) {
      std::vector<double> next(k, 0.0);
      for (std::size_t s = 0; s < k; ++s) {
        double from = tau == 1 ? (s == a[i] ? 1.0 : 0.0) : outside[s];
        if (from <= 0) continue;
        for (std::size_t t = 0; t < k; ++t) {
          double v = from * mu.transition(s, t);
          auto pos = std::find(a.begin(), a.end(), static_cast<Symbol>(t));
          if (pos != a.end())
            f[tau][i][static_cast<std::size_t>(pos - a.begin())] += v;
          else
            next[t] += v;
        }
      }
      outside.swap(next);
    }
    double rest = 0;
    for (double v : outside) rest += v;
    tail += mu.stationary(a[i]) / out.measureOfA * rest;
  }
  out.tailMass = tail;
  // induced letters (a_i, tau) form a stationary Markov chain
  std::vector<double> piA(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) piA[i] = mu.stationary(a[i]) / out.measureOfA;
  auto fTot = [&](std::size_t i, std::size_t tau) {
    double s = 0;
    for (double v : f[tau][i]) s += v;
    return s;
  };
  double h0 = 0, h1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t tau = 1; tau <= tmax; ++tau) {
      double p = piA[i] * fTot(i, tau);
      if (p <= 0) continue;
      h0 -= p * std::log(p);
      double ft = fTot(i, tau);
      double hc = 0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        double toJ = f[tau][i][j] / ft;
        if (toJ <= 0) continue;
        for (std::size_t tau2 = 1; tau2 <= tmax; ++tau2) {
          double q = toJ * fTot(j, tau2);
          if (q > 0) hc -= q * std::log(q);
        }
      }
      h1 += p * hc;
    }
  const double hn = h0 + static_cast<double>(n - 1) * h1;
  out.lhs = out.measureOfA * hn / static_cast<double>(n);
  // ambient labels: A symbols by their P label, everything else one extra label
  std::size_t outsideLabel = 0;
  for (auto l : partitionOfA) outsideLabel = std::max(outsideLabel, l + 1);
  std::vector<std::size_t> label(k, outsideLabel);
  for (std::size_t i = 0; i < a.size(); ++i) label[a[i]] = partitionOfA[i];
  out.rhs = hiddenBlockShannon(mu, label, n) / static_cast<double>(n);
  out.gap = std::fabs(out.lhs - out.rhs);
  return out;
}

KacResult kacCheck(const MarkovMeasure& mu, const std::vector<Symbol>& a, std::size_t returns, std::uint64_t seed) {
  KacResult out;
  ReturnLaw law = returnTimeLaw(mu, a);
  out.exactMean = law.truncatedMean;
  out.tailMass = law.tailMass;
  out.truncation = law.truncation;
  out.measureOfA = law.measureOfA;
  out.returns = returns;
  const std::size_t k = mu.alphabetSize();
  SuspensionFlow flowR(Subshift::fullShift(k), Roof::constant(QuadraticReal(1), k));
  std::vector<SectionPiece> pieces;
  for (Symbol s : a) pieces.push_back({Cylinder{0, Word{s}}, QuadraticReal(0), 0});
  CrossSection section(pieces, 1);
  auto length = static_cast<std::size_t>(static_cast<double>(returns) / law.measureOfA * 1.5) + 10000;
  while (true) {
    try {
      PointOracle x = sampleMarkovSegment(mu, length, seed, 16);
      ReturnWalker walker(flowR, section, FlowPoint{x, QuadraticReal(0)}, length);
      walker.next();  // settle on the section
      QuadraticReal start = walker.elapsed();
      for (std::size_t i = 0; i < returns; ++i) walker.next();
      out.simulatedMean = (walker.elapsed() - start).toDouble() / static_cast<double>(returns);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HorizonExceeded) throw;
      length *= 2;
    }
  }
}

}  // namespace symflow
