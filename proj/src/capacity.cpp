#include "symflow/capacity.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "symflow/error.hpp"

namespace symflow {

namespace {

struct Span {
  std::int64_t lo = 0, hi = 1;
};

Span spanOf(const std::vector<Cylinder>& e) {
  Span s{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& c : e) {
    s.lo = std::min(s.lo, c.anchor);
    s.hi = std::max(s.hi, c.anchor + static_cast<std::int64_t>(c.word.size()));
  }
  if (s.hi <= s.lo) s.hi = s.lo + 1;
  return s;
}

// does the window w = x[lo, lo+|w|) put x in E
bool hitsE(const std::vector<Cylinder>& e, const Word& w, std::int64_t lo) {
  for (const auto& c : e) {
    auto off = static_cast<std::size_t>(c.anchor - lo);
    if (std::equal(c.word.begin(), c.word.end(), w.begin() + static_cast<std::ptrdiff_t>(off))) return true;
  }
  return false;
}

}  // namespace

OcapResult orbitCapacity(const Subshift& s, const std::vector<Cylinder>& e, std::size_t horizon,
                         std::size_t maxPeriod) {
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "horizon must be positive");
  OcapResult out;
  out.horizon = horizon;
  if (e.empty()) {
    out.method = "empty";
    return out;
  }
  for (const auto& c : e)
    if (c.word.empty()) fail(ErrorCode::InvalidArgument, "cylinders need nonempty words");
  Span sp = spanOf(e);
  std::size_t order = static_cast<std::size_t>(sp.hi - sp.lo);
  if (const SftGraph* g = s.sftGraph()) order = std::max(order, g->memory);
  // nodes: admissible words of length `order` read at [t + lo, t + lo + order)
  std::vector<Word> nodes = s.language(order);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  for (const Word& w : s.language(order + 1)) {
    auto a = index.find(Word(w.begin(), w.end() - 1));
    auto b = index.find(Word(w.begin() + 1, w.end()));
    if (a != index.end() && b != index.end()) succ[a->second].push_back(b->second);
  }
  std::vector<int> hit(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) hit[i] = hitsE(e, nodes[i], sp.lo) ? 1 : 0;
  constexpr long kDead = std::numeric_limits<long>::min() / 2;
  std::vector<long> best(nodes.size()), next(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) best[i] = hit[i];
  for (std::size_t t = 1; t < horizon; ++t) {
    std::fill(next.begin(), next.end(), kDead);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (best[i] == kDead) continue;
      for (std::size_t j : succ[i]) next[j] = std::max(next[j], best[i] + hit[j]);
    }
    best.swap(next);
  }
  long top = 0;
  for (long b : best) top = std::max(top, b);
  out.upperEstimate = static_cast<double>(top) / static_cast<double>(horizon);
  out.method = s.sftGraph() ? "rauzy-dp exact" : "rauzy-dp over language window";
  // periodic witnesses
  for (std::size_t p = 1; p <= maxPeriod; ++p) {
    std::vector<Word> words;
    try {
      words = s.periodicWords(p);
    } catch (const Error&) {
      break;
    }
    for (const Word& u : words) {
      PointOracle x = PointOracle::periodic(u);
      std::size_t count = 0;
      for (std::size_t t = 0; t < p; ++t) {
        auto ti = static_cast<std::int64_t>(t);
        if (hitsE(e, x.window(ti + sp.lo, ti + sp.hi), sp.lo)) ++count;
      }
      double f = static_cast<double>(count) / static_cast<double>(p);
      if (f > out.lowerWitness + 1e-12) {
        out.lowerWitness = f;
        out.witness = u;
      }
    }
  }
  return out;
}

OcapResult sampledOrbitCapacity(const std::vector<PointOracle>& orbits, const std::vector<Cylinder>& e,
                                std::size_t horizon) {
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "horizon must be positive");
  OcapResult out;
  out.horizon = horizon;
  out.method = "sampled orbits";
  if (e.empty() || orbits.empty()) return out;
  Span sp = spanOf(e);
  auto h = static_cast<std::int64_t>(horizon);
  for (const auto& x : orbits) {
    Word w = x.window(sp.lo, h + sp.hi);
    std::size_t count = 0;
    for (std::int64_t t = 0; t < h; ++t) {
      for (const auto& c : e) {
        auto off = static_cast<std::ptrdiff_t>(t + c.anchor - sp.lo);
        if (std::equal(c.word.begin(), c.word.end(), w.begin() + off)) {
          ++count;
          break;
        }
      }
    }
    double f = static_cast<double>(count) / static_cast<double>(horizon);
    out.upperEstimate = std::max(out.upperEstimate, f);
  }
  out.lowerWitness = out.upperEstimate;
  return out;
}

OcapResult flowOrbitCapacity(const SuspensionFlow& f, const std::vector<PointOracle>& orbits,
                             const std::vector<TowerSlab>& e, double horizon) {
  if (!(horizon > 0)) fail(ErrorCode::InvalidArgument, "horizon must be positive");
  OcapResult out;
  out.method = "sampled flow orbits";
  out.horizon = static_cast<std::size_t>(horizon);
  for (const auto& x : orbits) {
    double t = 0, occupied = 0;
    for (std::int64_t i = 0; t < horizon; ++i) {
      const double r = f.roof().at(x, i).toDouble();
      PointOracle y = x.shifted(i);
      for (const auto& slab : e) {
        if (!slab.base.contains(y)) continue;
        double lo = std::max(0.0, slab.from.toDouble());
        double hi = std::min(r, slab.to.toDouble());
        hi = std::min(hi, horizon - t);
        if (hi > lo) occupied += hi - lo;
      }
      t += r;
    }
    out.upperEstimate = std::max(out.upperEstimate, occupied / horizon);
  }
  out.lowerWitness = out.upperEstimate;
  return out;
}

}  // namespace symflow
