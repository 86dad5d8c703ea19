#include <chrono>
#include <cmath>
#include <random>

#include "support.hpp"
#include "symflow/balanced.hpp"
#include "symflow/capacity.hpp"
#include "symflow/recode.hpp"

using namespace symflow;

namespace {
const QuadraticReal kSqrt2 = QuadraticReal::sqrt(2);
const QuadraticReal kAlpha(-1, 1);

SuspensionFlow sturmianFlow() {
  return SuspensionFlow(Subshift::sturmian(kAlpha), Roof::constant(kSqrt2, 2));
}

const RecodedFlow& dex() {
  static RecodedFlow r = recodeDex(sturmianFlow(), QuadraticReal(1), kSqrt2, ratio(1, 10), QuadraticReal(ratio(1, 10)));
  return r;
}

const RecodedFlow& dep() {
  static RecodedFlow r = [] {
    RecodeOptions opt;
    opt.zWindow = 400;
    return recodeDep(sturmianFlow(), QuadraticReal(1), kSqrt2, 2, kSqrt2 - QuadraticReal(1), opt);
  }();
  return r;
}

FlowPoint randomPoint(std::mt19937_64& gen, const SuspensionFlow& f) {
  QuadraticReal phase(ratio(static_cast<long>(gen() % 100003), 100003));
  PointOracle x = PointOracle::sturmian(*f.base().sturmianCoder(), phase);
  QuadraticReal r = f.roof().at(x);
  QuadraticReal h = r * QuadraticReal(ratio(static_cast<long>(gen() % 997), 997));
  return FlowPoint{x, h};
}

void checkRoundTrip(const RecodedFlow& r, std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  for (int i = 0; i < count; ++i) {
    FlowPoint y = randomPoint(gen, r.source());
    FlowPoint z = r.encode(y);
    FlowPoint back = r.decode(z);
    REQUIRE(back.height == y.height);
    REQUIRE(back.base.window(-25, 26) == y.base.window(-25, 26));
  }
}
}  // namespace

TEST_CASE("dex schedules are exact and balanced") {
  const RecodedFlow& r = dex();
  for (const RecodeAtom& a : r.atoms()) {
    CHECK(a.k * 11 >= a.l * 10);  // k / l >= 1 / (1 + 1/10)
    CHECK(a.k <= a.l);
    CHECK(a.remainder.sign() > 0);
    CHECK(a.remainder < r.delta());
    CHECK(QuadraticReal(static_cast<long>(a.k)) * r.p() + QuadraticReal(static_cast<long>(a.l)) * r.q() + a.remainder ==
          a.returnTime);
    CHECK(a.stepTimes.back() == a.returnTime);
    CHECK(a.schedule.size() == 2 * a.k);
    BalancedCode code(a.k);
    CHECK(code.satisfies(a.schedule));
    CHECK(code.count() >= r.atoms().size());
    // dGap agrees with the chosen pair
    auto d = dGap(a.returnTime, r.p(), r.q(), ratio(1, 10));
    REQUIRE(d.has_value());
    CHECK(d->value <= a.remainder);
    std::size_t ones = 0, twos = 0;
    for (Symbol s : a.zBlock) {
      ones += s == 1;
      twos += s == 2;
    }
    CHECK(ones == a.k);
    CHECK(twos == 1);
    CHECK(a.zBlock.back() == 2);
  }
}

TEST_CASE("dex return times are exactly p, q or a small remainder") {
  const RecodedFlow& r = dex();
  std::mt19937_64 gen(6);
  FlowPoint y = randomPoint(gen, r.source());
  ReturnWalker walker(r.source(), r.section(), y, 100000);
  std::size_t counts[3] = {0, 0, 0};
  QuadraticReal last = walker.elapsed();
  for (int i = 0; i < 10000; ++i) {
    ReturnEvent ev = walker.next();
    QuadraticReal t = walker.elapsed() - last;
    last = walker.elapsed();
    if (i == 0) continue;  // the first hit is from an arbitrary height
    std::string cls = r.stepClass(t);
    REQUIRE(cls != "other");
    if (cls == "q") ++counts[0];
    if (cls == "p") ++counts[1];
    if (cls == "remainder") ++counts[2];
    CHECK(r.section().pieceAt(ev.landing).has_value());
  }
  CHECK(counts[2] > 0);
  CHECK(counts[0] > counts[2]);
}

TEST_CASE("dex Z roof takes the three value classes") {
  const RecodedFlow& r = dex();
  std::mt19937_64 gen(8);
  FlowPoint z = r.encode(randomPoint(gen, r.source()));
  std::vector<QuadraticReal> v = r.zFlow().roof().values(z.base, 0, 3000);
  Word w = z.base.window(0, 3000);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1) CHECK(v[i] == r.p());
    if (w[i] == 0) CHECK(v[i] == r.q());
    if (w[i] == 2) CHECK((v[i].sign() > 0 && v[i] < r.delta()));
  }
}

TEST_CASE("dex orbit capacities") {
  const RecodedFlow& r = dex();
  std::mt19937_64 gen(12);
  std::vector<PointOracle> orbits;
  for (int i = 0; i < 8; ++i) orbits.push_back(r.encode(randomPoint(gen, r.source())).base);
  const std::size_t horizon = 10000;
  double o2 = sampledOrbitCapacity(orbits, {Cylinder{0, {2}}}, horizon).upperEstimate;
  double o1 = sampledOrbitCapacity(orbits, {Cylinder{0, {1}}}, horizon).upperEstimate;
  double o0 = sampledOrbitCapacity(orbits, {Cylinder{0, {0}}}, horizon).upperEstimate;
  CHECK(o2 < 0.1);
  CHECK(o1 <= 0.52);
  CHECK(o0 <= 0.62);
  CHECK(o0 + o1 + o2 >= 0.999);
}

TEST_CASE("dex encode and decode are inverse on central blocks") { checkRoundTrip(dex(), 21, 100); }

TEST_CASE("encoded points flow along with the source") {
  const RecodedFlow& r = dex();
  std::mt19937_64 gen(4);
  for (int i = 0; i < 20; ++i) {
    FlowPoint y = randomPoint(gen, r.source());
    QuadraticReal s(ratio(static_cast<long>(gen() % 5000), 100));
    FlowPoint lhs = flow(r.zFlow(), r.encode(y), s);
    FlowPoint rhs = r.encode(flow(r.source(), y, s));
    CHECK(lhs.height == rhs.height);
    CHECK(lhs.base.window(-50, 50) == rhs.base.window(-50, 50));
  }
}

TEST_CASE("dep structure") {
  const RecodedFlow& r = dep();
  const std::size_t K = r.K();
  Word pattern = r.markingPattern();
  CHECK(pattern == concat(repeat(Word{0}, r.M() + K), concat(Word{1}, concat(repeat(Word{0}, K), Word{1}))));
  for (const RecodeAtom& a : r.atoms()) {
    // scheduling word: first = last = 1, no interior zero run >= K, k - 1 ones
    REQUIRE(a.schedule.size() == 2 * a.k);
    CHECK(a.schedule.front() == 1);
    CHECK(a.schedule.back() == 1);
    CHECK_FALSE(containsFactor(a.schedule, repeat(Word{0}, K)));
    std::size_t ones = 0;
    for (Symbol s : a.schedule) ones += s;
    CHECK(ones + 1 == a.k);
    CHECK(a.l >= a.k + r.M() + 2 * K + 1);
    CHECK(a.remainder.sign() > 0);
    CHECK(a.remainder <= r.delta());
    // the pattern marks exactly the block boundary
    Word twice = concat(a.zBlock, a.zBlock);
    auto occ = occurrences(twice, pattern);
    REQUIRE(occ.size() == 1);
    CHECK(occ[0] + pattern.size() == a.zBlock.size() + 1);
  }
  // every Z-window of length 400 contains the marking pattern
  CHECK(r.zWindow() >= 400);
  CHECK(patternSyndeticity(r, pattern) <= 400);
  for (const Word& w : r.z().language(400)) REQUIRE(containsFactor(w, pattern));
}

TEST_CASE("dep return times") {
  const RecodedFlow& r = dep();
  std::mt19937_64 gen(2);
  FlowPoint y = randomPoint(gen, r.source());
  ReturnWalker walker(r.source(), r.section(), y, 100000);
  walker.next();
  QuadraticReal last = walker.elapsed();
  std::size_t big = 0;
  for (int i = 0; i < 5000; ++i) {
    walker.next();
    QuadraticReal t = walker.elapsed() - last;
    last = walker.elapsed();
    bool ok = t == r.p() || (t >= r.q() && t <= r.q() + r.delta());
    REQUIRE(ok);
    if (t > r.q()) ++big;
  }
  CHECK(big > 0);
}

TEST_CASE("dep round trip and r' classes") {
  const RecodedFlow& r = dep();
  checkRoundTrip(r, 5, 100);
  std::mt19937_64 gen(9);
  FlowPoint z = r.encode(randomPoint(gen, r.source()));
  Word w = z.base.window(0, 2000);
  auto v = r.zFlow().roof().values(z.base, 0, 2000);
  Word pattern = r.markingPattern();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1) CHECK(v[i] == r.p());
    if (w[i] == 0) CHECK((v[i] >= r.q() && v[i] <= r.q() + r.delta()));
    // r' > q exactly on the last zero before a pattern-closing 1
    if (v[i] > r.q() && i + 1 >= pattern.size() - 1 && i + 2 <= w.size()) {
      std::size_t end = i + 1;
      CHECK(std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<std::ptrdiff_t>(end + 1 - pattern.size())));
    }
  }
}

TEST_CASE("bog return times stay within 2 epsilon of the target") {
  Rational eps = ratio(1, 10);
  BogResult b = recodeBog(sturmianFlow(), eps, 0, Rational(ratio(3, 2)));
  CHECK(b.N > 30);
  CHECK(b.A == 46);
  const QuadraticReal a(b.target);
  const QuadraticReal tol(2 * eps);
  for (const RecodeAtom& at : b.flow.atoms()) {
    CHECK(at.stepTimes.back() == at.returnTime);
    for (const auto& s : at.steps) CHECK((s - a < tol && a - s < tol));
  }
  std::mt19937_64 gen(1);
  FlowPoint y = randomPoint(gen, b.flow.source());
  ReturnWalker walker(b.flow.source(), b.flow.section(), y, 100000);
  walker.next();
  QuadraticReal last = walker.elapsed();
  for (int i = 0; i < 2000; ++i) {
    ReturnEvent ev = walker.next();
    QuadraticReal t = walker.elapsed() - last;
    last = walker.elapsed();
    REQUIRE((t - a < tol && a - t < tol));
    REQUIRE(returnToSection(b.flow.source(), ev.landing, b.flow.section()).time > QuadraticReal(0));
  }
  CHECK(b.itineraryEntropy <= std::log(2.0) + 0.05);
  CHECK_THROWS_AS(recodeBog(sturmianFlow(), eps, 0), Error);
}

TEST_CASE("bog with too little room is infeasible") {
  RecodeOptions opt;
  opt.separation = 2;
  opt.maxSeparation = 10;
  try {
    recodeBog(sturmianFlow(), ratio(1, 10), 0, Rational(ratio(3, 2)), opt);
    FAIL("expected InfeasibleSchedule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleSchedule);
  }
}

TEST_CASE("recode preconditions") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::make_pair(e.code(), std::string(e.what()));
    }
    return std::make_pair(ErrorCode::Io, std::string("no error"));
  };
  auto same = code([] { recodeDex(sturmianFlow(), QuadraticReal(1), QuadraticReal(1), ratio(1, 10), QuadraticReal(ratio(1, 10))); });
  CHECK(same.first == ErrorCode::PreconditionFailed);
  CHECK(same.second.find("rational independence violated") != std::string::npos);
  auto bigDelta = code([] { recodeDex(sturmianFlow(), QuadraticReal(1), kSqrt2, ratio(1, 10), QuadraticReal(2)); });
  CHECK(bigDelta.first == ErrorCode::PreconditionFailed);
  SuspensionFlow full(Subshift::fullShift(2), Roof::constant(QuadraticReal(1), 2));
  auto entropy = code([&] { recodeDex(full, QuadraticReal(1), kSqrt2, ratio(1, 10), QuadraticReal(ratio(1, 10))); });
  CHECK(entropy.first == ErrorCode::PreconditionFailed);
  CHECK(entropy.second.find("h_top") != std::string::npos);
  // zero entropy but periodic: no marker
  SuspensionFlow cycle(Subshift::sftFromAdjacency({{0, 1}, {1, 0}}), Roof::constant(QuadraticReal(1), 2));
  auto periodic = code([&] { recodeDex(cycle, QuadraticReal(1), kSqrt2, ratio(1, 10), QuadraticReal(ratio(1, 10))); });
  CHECK(periodic.first == ErrorCode::MarkerUnavailable);
  auto depOrder = code([] { recodeDep(sturmianFlow(), kSqrt2, QuadraticReal(1), 2, QuadraticReal(ratio(1, 10))); });
  CHECK(depOrder.first == ErrorCode::PreconditionFailed);
  auto depM = code([] { recodeDep(sturmianFlow(), QuadraticReal(1), kSqrt2, 1, QuadraticReal(ratio(1, 10))); });
  CHECK(depM.first == ErrorCode::PreconditionFailed);
}

TEST_CASE("recoded sections are valid") {
  CHECK_NOTHROW(dep().section().validate(dep().source()));
  SectionCertificate c = dep().section().certifyGlobal(dep().source(), dep().atoms().front().window.size() + 60);
  CHECK(c.global);
}
