#include "symflow/recode.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "symflow/balanced.hpp"
#include "symflow/error.hpp"

namespace symflow {

struct RecodeCore {
  RecodeKind kind = RecodeKind::Dex;
  std::optional<SuspensionFlow> source;
  MarkerSet marker;
  std::size_t margin = 0;  // source roof radius
  std::vector<RecodeAtom> atoms;
  std::map<Word, std::size_t> atomByWindow;
  std::unordered_map<Word, std::size_t, WordHash> atomByBlock;
  std::unordered_set<Symbol> firstSymbols;  // bog
  std::size_t minBlock = 0, maxBlock = 0;
  QuadraticReal p, q, delta;
  std::size_t M = 0, K = 0;
  Word pattern;  // dep
  std::size_t separation = 0;
  std::size_t zAlphabet = 0;
  std::size_t zWindow = 0;
  Subshift z;
  std::optional<SuspensionFlow> zFlow;
  CrossSection section;

  // symbols looked at left of a candidate block start
  std::size_t lookback() const {
    switch (kind) {
      case RecodeKind::Dex: return 1;
      case RecodeKind::Dep: return pattern.size() - 1;
      case RecodeKind::Bog: return 0;
    }
    return 0;
  }

  // buf[i] with buf[0] at Z coordinate `origin`
  bool startsAt(const Word& buf, std::size_t i) const {
    switch (kind) {
      case RecodeKind::Dex: return i >= 1 && buf[i - 1] == 2;
      case RecodeKind::Dep: {
        const std::size_t lb = pattern.size() - 1;
        if (i < lb) return false;
        return std::equal(pattern.begin(), pattern.end(), buf.begin() + static_cast<std::ptrdiff_t>(i - lb));
      }
      case RecodeKind::Bog: return firstSymbols.count(buf[i]) > 0;
    }
    return false;
  }

  std::size_t gapBound() const { return marker.maxGap; }
  std::size_t markerLen() const { return marker.word.size(); }
};

namespace {

// ---------------------------------------------------------------- lazy points

// Z symbols along the encoding of a source point whose block 0 starts at
// source coordinate 0 and Z coordinate zOrigin.
class EncodedPoint final : public PointImpl {
 public:
  EncodedPoint(std::shared_ptr<const RecodeCore> core, PointOracle y, std::size_t atom0, std::int64_t zOrigin)
      : core_(std::move(core)), y_(std::move(y)) {
    blocks_.push_back({0, atom0, zOrigin});
  }

  Word window(std::int64_t from, std::int64_t to) const override {
    std::lock_guard<std::mutex> lock(mu_);
    while (blocks_.front().zStart > from) extendBack();
    while (blocks_.back().zStart + static_cast<std::int64_t>(core_->atoms[blocks_.back().atom].zBlock.size()) < to)
      extendForward();
    Word out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, to - from)));
    // first block holding `from`
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), from,
                               [](std::int64_t v, const Block& b) { return v < b.zStart; });
    --it;
    for (std::int64_t c = from; c < to;) {
      const Word& zb = core_->atoms[it->atom].zBlock;
      auto off = static_cast<std::size_t>(c - it->zStart);
      for (; off < zb.size() && c < to; ++off, ++c) out.push_back(zb[off]);
      ++it;
    }
    return out;
  }
  std::string describe() const override { return "encoded(" + y_.describe() + ")"; }

 private:
  struct Block {
    std::int64_t yStart;
    std::size_t atom;
    std::int64_t zStart;
  };

  std::size_t atomAt(std::int64_t yStart, std::size_t gap) const {
    const auto m = static_cast<std::int64_t>(core_->margin);
    Word w = y_.window(yStart - m, yStart + static_cast<std::int64_t>(gap + core_->markerLen()) + m);
    auto it = core_->atomByWindow.find(w);
    if (it == core_->atomByWindow.end()) fail(ErrorCode::ConstraintViolated, "marker return outside the atom table");
    return it->second;
  }

  void extendForward() const {
    const Block& b = blocks_.back();
    const RecodeAtom& a = core_->atoms[b.atom];
    std::int64_t ys = b.yStart + static_cast<std::int64_t>(a.gap);
    // next occurrence after ys
    const auto len = static_cast<std::int64_t>(core_->markerLen());
    Word buf = y_.window(ys + 1, ys + 1 + static_cast<std::int64_t>(core_->gapBound()) + len);
    auto occ = occurrences(buf, core_->marker.word);
    if (occ.empty()) fail(ErrorCode::ConstraintViolated, "marker coverage violated");
    blocks_.push_back({ys, atomAt(ys, occ.front() + 1), b.zStart + static_cast<std::int64_t>(a.zBlock.size())});
  }

  void extendBack() const {
    const Block& b = blocks_.front();
    const auto g = static_cast<std::int64_t>(core_->gapBound());
    // last occurrence starting before b.yStart; it may run into b.yStart
    Word wide = y_.window(b.yStart - g, b.yStart + static_cast<std::int64_t>(core_->markerLen()) - 1);
    auto occ = occurrences(wide, core_->marker.word);
    if (occ.empty()) fail(ErrorCode::ConstraintViolated, "marker coverage violated");
    std::int64_t ys = b.yStart - g + static_cast<std::int64_t>(occ.back());
    std::size_t atom = atomAt(ys, static_cast<std::size_t>(b.yStart - ys));
    blocks_.push_front({ys, atom, b.zStart - static_cast<std::int64_t>(core_->atoms[atom].zBlock.size())});
  }

  std::shared_ptr<const RecodeCore> core_;
  PointOracle y_;
  mutable std::mutex mu_;
  mutable std::deque<Block> blocks_;
};

// Source symbols decoded from a Z point whose block 0 starts at Z coordinate 0.
class DecodedPoint final : public PointImpl {
 public:
  DecodedPoint(std::shared_ptr<const RecodeCore> core, PointOracle z, std::size_t atom0)
      : core_(std::move(core)), z_(std::move(z)) {
    blocks_.push_back({0, atom0, 0});
  }

  Word window(std::int64_t from, std::int64_t to) const override {
    std::lock_guard<std::mutex> lock(mu_);
    while (blocks_.front().yStart > from) extendBack();
    while (blocks_.back().yStart + static_cast<std::int64_t>(core_->atoms[blocks_.back().atom].gap) < to)
      extendForward();
    Word out;
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), from,
                               [](std::int64_t v, const Block& b) { return v < b.yStart; });
    --it;
    for (std::int64_t c = from; c < to;) {
      const RecodeAtom& a = core_->atoms[it->atom];
      auto off = static_cast<std::size_t>(c - it->yStart);
      for (; off < a.gap && c < to; ++off, ++c) out.push_back(a.window[core_->margin + off]);
      ++it;
    }
    return out;
  }
  std::string describe() const override { return "decoded(" + z_.describe() + ")"; }

 private:
  struct Block {
    std::int64_t zStart;
    std::size_t atom;
    std::int64_t yStart;
  };

  // block starting at zs; its end is the next block start
  std::size_t parseAt(std::int64_t zs) const {
    const auto lb = static_cast<std::int64_t>(core_->lookback());
    const auto mb = static_cast<std::int64_t>(core_->maxBlock);
    Word buf = z_.window(zs - lb, zs + mb + 1);
    for (std::size_t e = static_cast<std::size_t>(lb) + 1; e < buf.size(); ++e) {
      if (!core_->startsAt(buf, e)) continue;
      Word block(buf.begin() + lb, buf.begin() + static_cast<std::ptrdiff_t>(e));
      auto it = core_->atomByBlock.find(block);
      if (it == core_->atomByBlock.end()) fail(ErrorCode::ConstraintViolated, "Z block outside the code");
      return it->second;
    }
    fail(ErrorCode::ConstraintViolated, "no block boundary within the maximal block length");
  }

  void extendForward() const {
    const Block& b = blocks_.back();
    const RecodeAtom& a = core_->atoms[b.atom];
    std::int64_t zs = b.zStart + static_cast<std::int64_t>(a.zBlock.size());
    blocks_.push_back({zs, parseAt(zs), b.yStart + static_cast<std::int64_t>(a.gap)});
  }

  void extendBack() const {
    const Block& b = blocks_.front();
    const auto lb = static_cast<std::int64_t>(core_->lookback());
    const auto mb = static_cast<std::int64_t>(core_->maxBlock);
    Word buf = z_.window(b.zStart - mb - lb, b.zStart);
    // buf[i] is Z coordinate b.zStart - mb - lb + i
    for (std::size_t i = buf.size(); i-- > static_cast<std::size_t>(lb);) {
      if (!core_->startsAt(buf, i)) continue;
      std::int64_t zs = b.zStart - mb - lb + static_cast<std::int64_t>(i);
      std::size_t atom = parseAt(zs);
      if (zs + static_cast<std::int64_t>(core_->atoms[atom].zBlock.size()) != b.zStart)
        fail(ErrorCode::ConstraintViolated, "Z blocks do not tile");
      blocks_.push_front({zs, atom, b.yStart - static_cast<std::int64_t>(core_->atoms[atom].gap)});
      return;
    }
    fail(ErrorCode::ConstraintViolated, "no block boundary within the maximal block length");
  }

  std::shared_ptr<const RecodeCore> core_;
  PointOracle z_;
  mutable std::mutex mu_;
  mutable std::deque<Block> blocks_;
};

// ---------------------------------------------------------------- scheduling

struct ScheduleResult {
  bool feasible = true;
  std::string why;
};

using Scheduler = std::function<ScheduleResult(std::vector<RecodeAtom>&)>;

void fillTimes(RecodeAtom& a) {
  a.stepTimes.assign(1, QuadraticReal(0));
  for (const auto& s : a.steps) a.stepTimes.push_back(a.stepTimes.back() + s);
  if (a.stepTimes.back() != a.returnTime) fail(ErrorCode::ConstraintViolated, "schedule does not sum to the return time");
}

// group atoms sharing (k, l); index within the group is the balanced rank
void assignClasses(std::vector<RecodeAtom>& atoms) {
  std::map<std::pair<unsigned long, unsigned long>, std::size_t> next;
  for (auto& a : atoms) a.classIndex = next[{a.k, a.l}]++;
}

std::map<std::pair<unsigned long, unsigned long>, std::size_t> classSizes(const std::vector<RecodeAtom>& atoms) {
  std::map<std::pair<unsigned long, unsigned long>, std::size_t> out;
  for (const auto& a : atoms) ++out[{a.k, a.l}];
  return out;
}

std::shared_ptr<RecodeCore> buildCore(RecodeKind kind, const SuspensionFlow& f, const RecodeOptions& opt,
                                      const Scheduler& schedule, std::shared_ptr<RecodeCore> core) {
  core->kind = kind;
  core->source = f;
  core->margin = f.roof().radius();
  const Subshift& base = f.base();
  std::string lastWhy = "no separation tried";
  for (std::size_t n = std::max<std::size_t>(opt.separation, 1); n <= opt.maxSeparation; n = n * 3 / 2 + 1) {
    const std::size_t depth = 6 * n + 40;
    MarkerSet marker;
    try {
      marker = buildMarker(base, n, opt.maxWordLen, depth);
    } catch (const NoMarkerError& e) {
      fail(ErrorCode::MarkerUnavailable, std::string("marker unavailable: ") + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DepthExceeded)
        fail(ErrorCode::MarkerUnavailable, std::string("marker unavailable: ") + e.what());
      throw;
    }
    std::vector<RecodeAtom> atoms;
    for (auto& r : markerReturns(base, marker, core->margin)) {
      RecodeAtom a;
      a.window = r.window;
      a.gap = r.gap;
      a.baseTimes.assign(1, QuadraticReal(0));
      const std::size_t span = 2 * core->margin + 1;
      for (std::size_t i = 0; i < r.gap; ++i) {
        Word w(r.window.begin() + static_cast<std::ptrdiff_t>(i), r.window.begin() + static_cast<std::ptrdiff_t>(i + span));
        a.baseTimes.push_back(a.baseTimes.back() + f.roof().valueOn(w));
      }
      a.returnTime = a.baseTimes.back();
      atoms.push_back(std::move(a));
    }
    ScheduleResult res = schedule(atoms);
    if (!res.feasible) {
      lastWhy = res.why;
      continue;
    }
    core->marker = marker;
    core->separation = n;
    core->atoms = std::move(atoms);
    break;
  }
  if (core->atoms.empty()) {
    ErrorCode code = kind == RecodeKind::Bog ? ErrorCode::InfeasibleSchedule : ErrorCode::PreconditionFailed;
    fail(code, lastWhy + " (up to marker separation " + std::to_string(opt.maxSeparation) + ")");
  }
  // tables
  core->minBlock = SIZE_MAX;
  for (std::size_t i = 0; i < core->atoms.size(); ++i) {
    RecodeAtom& a = core->atoms[i];
    fillTimes(a);
    core->atomByWindow[a.window] = i;
    if (!core->atomByBlock.emplace(a.zBlock, i).second) fail(ErrorCode::ConstraintViolated, "two atoms share a Z block");
    core->minBlock = std::min(core->minBlock, a.zBlock.size());
    core->maxBlock = std::max(core->maxBlock, a.zBlock.size());
    if (kind == RecodeKind::Bog) core->firstSymbols.insert(a.zBlock.front());
    for (Symbol s : a.zBlock) core->zAlphabet = std::max<std::size_t>(core->zAlphabet, s + 1u);
  }
  // section: one piece per step, on the base coordinate below the step time
  std::vector<SectionPiece> pieces;
  std::size_t pieceId = 0;
  for (const RecodeAtom& a : core->atoms) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.zBlock.size(); ++i, ++pieceId) {
      const QuadraticReal& t = a.stepTimes[i];
      while (a.baseTimes[j + 1] <= t) ++j;
      SectionPiece piece;
      piece.cylinder = Cylinder{-static_cast<std::int64_t>(core->margin + j), a.window};
      piece.offset = t - a.baseTimes[j];
      piece.label = kind == RecodeKind::Bog ? pieceId : a.zBlock[i];
      pieces.push_back(piece);
    }
  }
  std::vector<std::string> names;
  if (kind == RecodeKind::Dex) names = {"q", "p", "remainder"};
  if (kind == RecodeKind::Dep) names = {"q", "p"};
  core->section = CrossSection(std::move(pieces), core->atoms.front().window.size(), names);
  // Z corpus: encodings of source words that cover every run of consecutive
  // returns able to carry a Z factor of length zWindow
  const std::size_t lb = core->lookback();
  core->zWindow = std::max(opt.zWindow, core->maxBlock + lb + 2);
  const std::size_t blocksNeeded = (core->zWindow + core->minBlock - 1) / core->minBlock + 1;
  const std::size_t len = core->markerLen();
  const std::size_t depth = blocksNeeded * core->gapBound() + len + 2 * core->margin;
  std::set<Word> corpus;
  for (const Word& u : base.language(depth)) {
    auto occ = occurrences(u, core->marker.word);
    Word zw;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
      if (occ[i] < core->margin || occ[i + 1] + len + core->margin > u.size()) continue;
      Word w(u.begin() + static_cast<std::ptrdiff_t>(occ[i] - core->margin),
             u.begin() + static_cast<std::ptrdiff_t>(occ[i + 1] + len + core->margin));
      const Word& zb = core->atoms[core->atomByWindow.at(w)].zBlock;
      zw.insert(zw.end(), zb.begin(), zb.end());
    }
    if (zw.size() >= core->zWindow) corpus.insert(std::move(zw));
  }
  if (corpus.empty()) fail(ErrorCode::ConstraintViolated, "empty Z corpus");
  core->z = Subshift::generated(core->zAlphabet, std::vector<Word>(corpus.begin(), corpus.end()), core->zWindow);
  return core;
}

void finishZFlow(const std::shared_ptr<RecodeCore>& core) {
  const std::size_t radius = core->maxBlock + core->lookback();
  std::weak_ptr<const RecodeCore> weak = core;
  QuadraticReal minStep = core->atoms.front().steps.front();
  for (const auto& a : core->atoms)
    for (const auto& s : a.steps) minStep = std::min(minStep, s);
  // r' reads the block around the centre; raw pointer is safe, the core owns the flow
  const RecodeCore* raw = core.get();
  Roof::Rule rule = [raw, radius](const Word& window) {
    // window[radius] is coordinate 0
    for (std::size_t b = radius + 1; b-- > 0;) {
      if (!raw->startsAt(window, b)) continue;
      for (std::size_t e = b + 1; e < window.size(); ++e) {
        if (!raw->startsAt(window, e)) continue;
        Word block(window.begin() + static_cast<std::ptrdiff_t>(b), window.begin() + static_cast<std::ptrdiff_t>(e));
        auto it = raw->atomByBlock.find(block);
        if (it == raw->atomByBlock.end()) break;
        return raw->atoms[it->second].steps[radius - b];
      }
      break;
    }
    fail(ErrorCode::ConstraintViolated, "r' undefined: no complete block around " + to_string(window));
  };
  // the roof is correct by construction on every block; no language-wide check
  core->zFlow.emplace(core->z, Roof::rule(radius, rule, minStep, "recoded r'"), false);
}

}  // namespace

// ---------------------------------------------------------------- accessors

RecodeKind RecodedFlow::kind() const { return core_->kind; }
const SuspensionFlow& RecodedFlow::source() const { return *core_->source; }
const MarkerSet& RecodedFlow::marker() const { return core_->marker; }
const std::vector<RecodeAtom>& RecodedFlow::atoms() const { return core_->atoms; }
const Subshift& RecodedFlow::z() const { return core_->z; }
std::size_t RecodedFlow::zWindow() const { return core_->zWindow; }
const SuspensionFlow& RecodedFlow::zFlow() const { return *core_->zFlow; }
const CrossSection& RecodedFlow::section() const { return core_->section; }
const QuadraticReal& RecodedFlow::p() const { return core_->p; }
const QuadraticReal& RecodedFlow::q() const { return core_->q; }
const QuadraticReal& RecodedFlow::delta() const { return core_->delta; }
std::size_t RecodedFlow::M() const { return core_->M; }
std::size_t RecodedFlow::K() const { return core_->K; }
Word RecodedFlow::markingPattern() const { return core_->pattern; }
std::size_t RecodedFlow::separationUsed() const { return core_->separation; }

FlowPoint RecodedFlow::encode(const FlowPoint& y) const {
  const RecodeCore& c = *core_;
  checkFlowPoint(*c.source, y);
  const auto g = static_cast<std::int64_t>(c.gapBound());
  const auto len = static_cast<std::int64_t>(c.markerLen());
  // last marker at or before 0, and the one after it
  Word buf = y.base.window(-g, g + len + 1);
  auto occ = occurrences(buf, c.marker.word);
  std::int64_t start = 0, next = 0;
  bool found = false;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    std::int64_t s0 = static_cast<std::int64_t>(occ[i]) - g, s1 = static_cast<std::int64_t>(occ[i + 1]) - g;
    if (s0 <= 0 && s1 > 0) {
      start = s0;
      next = s1;
      found = true;
    }
  }
  if (!found) fail(ErrorCode::ConstraintViolated, "point not covered by the marker tower");
  const auto m = static_cast<std::int64_t>(c.margin);
  auto it = c.atomByWindow.find(y.base.window(start - m, next + len + m));
  if (it == c.atomByWindow.end()) fail(ErrorCode::ConstraintViolated, "marker return outside the atom table");
  const RecodeAtom& a = c.atoms[it->second];
  QuadraticReal s = a.baseTimes[static_cast<std::size_t>(-start)] + y.height;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(a.stepTimes.begin(), a.stepTimes.end(), s) - a.stepTimes.begin()) - 1;
  auto impl = std::make_shared<EncodedPoint>(core_, y.base.shifted(start), it->second, -static_cast<std::int64_t>(i));
  return FlowPoint{PointOracle(impl), s - a.stepTimes[i]};
}

FlowPoint RecodedFlow::decode(const FlowPoint& zp) const {
  const RecodeCore& c = *core_;
  const auto lb = static_cast<std::int64_t>(c.lookback());
  const auto mb = static_cast<std::int64_t>(c.maxBlock);
  Word buf = zp.base.window(-mb - lb, mb + 2);
  // buf[i] is coordinate i - mb - lb
  std::optional<std::size_t> b;
  for (std::size_t i = static_cast<std::size_t>(mb + lb) + 1; i-- > static_cast<std::size_t>(lb);)
    if (c.startsAt(buf, i)) {
      b = i;
      break;
    }
  if (!b) fail(ErrorCode::ConstraintViolated, "no block start found");
  std::optional<std::size_t> e;
  for (std::size_t i = *b + 1; i < buf.size(); ++i)
    if (c.startsAt(buf, i)) {
      e = i;
      break;
    }
  if (!e) fail(ErrorCode::ConstraintViolated, "no block end found");
  auto it = c.atomByBlock.find(Word(buf.begin() + static_cast<std::ptrdiff_t>(*b), buf.begin() + static_cast<std::ptrdiff_t>(*e)));
  if (it == c.atomByBlock.end()) fail(ErrorCode::ConstraintViolated, "Z block outside the code");
  const RecodeAtom& a = c.atoms[it->second];
  const std::int64_t zStart = static_cast<std::int64_t>(*b) - mb - lb;
  const auto i = static_cast<std::size_t>(-zStart);
  if (zp.height >= a.steps[i]) fail(ErrorCode::InvalidArgument, "height above r'");
  QuadraticReal s = a.stepTimes[i] + zp.height;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(a.baseTimes.begin(), a.baseTimes.end(), s) - a.baseTimes.begin()) - 1;
  auto impl = std::make_shared<DecodedPoint>(core_, zp.base.shifted(zStart), it->second);
  return FlowPoint{PointOracle(impl).shifted(static_cast<std::int64_t>(j)), s - a.baseTimes[j]};
}

std::string RecodedFlow::stepClass(const QuadraticReal& v) const {
  const RecodeCore& c = *core_;
  if (c.kind == RecodeKind::Bog) return "step";
  if (v == c.p) return "p";
  if (v == c.q) return "q";
  if (c.kind == RecodeKind::Dex && v.sign() > 0 && v < c.delta) return "remainder";
  if (c.kind == RecodeKind::Dep && v > c.q && v <= c.q + c.delta) return "q+remainder";
  return "other";
}

std::string RecodedFlow::describe() const {
  const RecodeCore& c = *core_;
  std::ostringstream os;
  os << (c.kind == RecodeKind::Dex ? "dex" : c.kind == RecodeKind::Dep ? "dep" : "bog") << " marker=" << to_string(c.marker.word)
     << " separation=" << c.separation << " atoms=" << c.atoms.size() << " blocks=[" << c.minBlock << "," << c.maxBlock
     << "]";
  return os.str();
}

// ---------------------------------------------------------------- variants

namespace {

void checkCommon(const SuspensionFlow& f, const QuadraticReal& p, const QuadraticReal& q, const QuadraticReal& delta) {
  if (p.sign() <= 0 || q.sign() <= 0) fail(ErrorCode::PreconditionFailed, "p and q must be positive");
  if (!rationalIndependent(p, q)) fail(ErrorCode::PreconditionFailed, "rational independence violated");
  if (delta.sign() <= 0 || delta >= std::min(p, q)) fail(ErrorCode::PreconditionFailed, "delta < min(p, q) violated");
  // h_top(flow) <= h_top(base) / min roof
  const double bound = f.base().entropyUpperBound() / f.roof().minValue().toDouble();
  const double cap = 2 * std::log(2.0) / (p + q).toDouble();
  if (!(bound < cap))
    fail(ErrorCode::PreconditionFailed, "h_top(flow) < 2 log 2 / (p + q) violated: bound " + std::to_string(bound) +
                                            " vs " + std::to_string(cap));
}

}  // namespace

RecodedFlow recodeDex(const SuspensionFlow& f, const QuadraticReal& p, const QuadraticReal& q, const Rational& epsilon,
                      const QuadraticReal& delta, const RecodeOptions& opt) {
  checkCommon(f, p, q, delta);
  if (sgn(epsilon) <= 0) fail(ErrorCode::PreconditionFailed, "epsilon > 0 violated");
  auto core = std::make_shared<RecodeCore>();
  core->p = p;
  core->q = q;
  core->delta = delta;
  Scheduler sched = [&](std::vector<RecodeAtom>& atoms) -> ScheduleResult {
    auto ratioOk = [](unsigned long k, unsigned long l, const void* ctx) {
      const Rational& eps = *static_cast<const Rational*>(ctx);
      return k >= 1 && k <= l && Rational(static_cast<long>(l)) <= Rational(static_cast<long>(k)) * (1 + eps);
    };
    for (auto& a : atoms) {
      auto cands = gapCandidates(a.returnTime, p, q, ratioOk, &epsilon, true, delta);
      if (cands.empty() || cands.front().value >= delta)
        return {false, "no (k, l) with 0 < t - kp - lq < delta for return time " + to_string(a.returnTime)};
      a.k = cands.front().k;
      a.l = cands.front().l;
      a.remainder = cands.front().value;
    }
    assignClasses(atoms);
    for (const auto& [kl, size] : classSizes(atoms)) {
      BalancedCode code(kl.first);
      if (code.count() < size)
        fail(ErrorCode::CapacityExceeded, "C(2k, k) < atoms for k = " + std::to_string(kl.first));
    }
    for (auto& a : atoms) {
      a.schedule = BalancedCode(a.k).unrank(a.classIndex);
      a.zBlock = a.schedule;
      a.zBlock.insert(a.zBlock.end(), a.l - a.k, 0);
      a.zBlock.push_back(2);
      for (Symbol s : a.zBlock) a.steps.push_back(s == 1 ? p : s == 0 ? q : a.remainder);
    }
    return {};
  };
  core = buildCore(RecodeKind::Dex, f, opt, sched, core);
  finishZFlow(core);
  return RecodedFlow(core);
}

RecodedFlow recodeDep(const SuspensionFlow& f, const QuadraticReal& p, const QuadraticReal& q, std::size_t mParam,
                      const QuadraticReal& delta, const RecodeOptions& opt) {
  checkCommon(f, p, q, delta);
  if (!(p < q)) fail(ErrorCode::PreconditionFailed, "p < q violated");
  if (mParam < 2) fail(ErrorCode::PreconditionFailed, "M >= 2 violated");
  if (opt.K < 1) fail(ErrorCode::PreconditionFailed, "K >= 1 violated");
  auto core = std::make_shared<RecodeCore>();
  core->p = p;
  core->q = q;
  core->delta = delta;
  core->M = mParam;
  core->K = opt.K;
  const std::size_t K = opt.K;
  core->pattern.assign(mParam + K, 0);
  core->pattern.push_back(1);
  core->pattern.insert(core->pattern.end(), K, 0);
  core->pattern.push_back(1);
  auto constraints = [K](std::size_t k) {
    BalancedConstraints c;
    c.ones = k - 1;
    c.firstLastOne = true;
    c.maxZeroRun = K;
    return c;
  };
  struct Ctx {
    std::size_t minExcess;
    std::map<unsigned long, bool> usable;
    std::function<BalancedConstraints(std::size_t)> cons;
  } ctx{mParam + 2 * K + 1, {}, constraints};
  Scheduler sched = [&](std::vector<RecodeAtom>& atoms) -> ScheduleResult {
    auto pairOk = [](unsigned long k, unsigned long l, const void* raw) {
      auto& c = *const_cast<Ctx*>(static_cast<const Ctx*>(raw));
      if (k < 2 || l < k + c.minExcess) return false;
      auto it = c.usable.find(k);
      if (it == c.usable.end()) it = c.usable.emplace(k, BalancedCode(k, c.cons(k)).count() > 0).first;
      return it->second;
    };
    for (auto& a : atoms) {
      auto cands = gapCandidates(a.returnTime, p, q, pairOk, &ctx, true, delta);
      // shortest zero run first, then smallest remainder
      const GapPair* best = nullptr;
      for (const auto& c : cands) {
        if (c.value > delta) continue;
        if (!best || c.l - c.k < best->l - best->k || (c.l - c.k == best->l - best->k && c.value < best->value))
          best = &c;
      }
      if (!best) return {false, "no (k, l) with 0 < t - kp - lq <= delta for return time " + to_string(a.returnTime)};
      a.k = best->k;
      a.l = best->l;
      a.remainder = best->value;
    }
    assignClasses(atoms);
    for (const auto& [kl, size] : classSizes(atoms)) {
      BalancedCode code(kl.first, constraints(kl.first));
      if (code.count() < size)
        fail(ErrorCode::CapacityExceeded, "constrained code too small for k = " + std::to_string(kl.first));
    }
    for (auto& a : atoms) {
      a.schedule = BalancedCode(a.k, constraints(a.k)).unrank(a.classIndex);
      a.zBlock = a.schedule;
      a.zBlock.insert(a.zBlock.end(), a.l - a.k - 1 - K, 0);
      a.zBlock.push_back(1);
      a.zBlock.insert(a.zBlock.end(), K, 0);
      for (Symbol s : a.zBlock) a.steps.push_back(s == 1 ? p : q);
      a.steps.back() = q + a.remainder;
    }
    return {};
  };
  core = buildCore(RecodeKind::Dep, f, opt, sched, core);
  finishZFlow(core);
  return RecodedFlow(core);
}

BogResult recodeBog(const SuspensionFlow& f, const Rational& epsilon, double hTop, std::optional<Rational> target,
                    const RecodeOptions& opt, std::size_t itineraryLength) {
  if (sgn(epsilon) <= 0) fail(ErrorCode::PreconditionFailed, "epsilon > 0 violated");
  Rational a;
  if (target) {
    a = *target;
  } else {
    if (!(hTop > 0)) fail(ErrorCode::PreconditionFailed, "hTop > 0 violated; supply a target for zero entropy");
    // a = log 2 / hTop + epsilon, to 1e-9; only floor(N a) matters
    a = ratio(static_cast<long>(std::llround((std::log(2.0) / hTop + epsilon.get_d()) * 1e9)), 1000000000L);
  }
  if (sgn(a) <= 0) fail(ErrorCode::PreconditionFailed, "target a > 0 violated");
  // N > 3 / epsilon
  Rational three(3);
  Integer N = Integer(three / epsilon) + 1;
  const Integer A = Integer(Rational(N) * a);
  if (A < 1) fail(ErrorCode::PreconditionFailed, "N a >= 1 violated");
  const Rational sA = ratio(A, N), sB = ratio(A + 1, N);
  auto core = std::make_shared<RecodeCore>();
  core->p = QuadraticReal(sA);
  core->q = QuadraticReal(sB);
  core->delta = QuadraticReal(ratio(1, N));
  Scheduler sched = [&](std::vector<RecodeAtom>& atoms) -> ScheduleResult {
    Symbol id = 0;
    for (auto& at : atoms) {
      // m0 = round(N t) = k A + l (A + 1)
      QuadraticReal nt = QuadraticReal(Rational(N)) * at.returnTime + QuadraticReal(ratio(1, 2));
      Integer m0 = nt.floor();
      Integer l = m0 % A;
      Integer k = (m0 - l * (A + 1)) / A;
      if (k < 0 || k + l == 0) return {false, "m0 = " + m0.get_str() + " below the Frobenius threshold of A, A+1"};
      at.k = k.get_ui();
      at.l = l.get_ui();
      if (at.k + at.l + id > 65000) return {false, "too many section pieces"};
      for (unsigned long i = 0; i < at.k; ++i) at.steps.emplace_back(sA);
      for (unsigned long i = 0; i < at.l; ++i) at.steps.emplace_back(sB);
      at.remainder = at.returnTime - QuadraticReal(ratio(m0, N));
      at.steps.back() += at.remainder;
      for (std::size_t i = 0; i < at.steps.size(); ++i) at.zBlock.push_back(id++);
    }
    return {};
  };
  core = buildCore(RecodeKind::Bog, f, opt, sched, core);
  finishZFlow(core);
  BogResult out{RecodedFlow(core), a, static_cast<std::size_t>(N.get_ui()), A.get_ui(), itineraryLength, 0};
  const Integer count = core->z.languageSize(itineraryLength);
  out.itineraryEntropy = std::log(count.get_d()) / static_cast<double>(itineraryLength);
  return out;
}

std::size_t patternSyndeticity(const RecodedFlow& r, const Word& pattern) {
  const std::vector<Word>* corpus = r.z().generatedCorpus();
  if (!corpus) fail(ErrorCode::InvalidArgument, "Z has no corpus");
  std::size_t worst = 0;
  for (const Word& w : *corpus) {
    auto occ = occurrences(w, pattern);
    if (occ.empty()) return SIZE_MAX;
    // longest window free of a complete occurrence
    worst = std::max(worst, occ.front() + pattern.size() - 1);
    for (std::size_t i = 1; i < occ.size(); ++i) worst = std::max(worst, occ[i] - occ[i - 1] + pattern.size() - 2);
    worst = std::max(worst, w.size() - occ.back() - 1);
  }
  return worst + 1;
}

}  // namespace symflow
