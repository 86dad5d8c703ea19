#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "symflow/generator.hpp"

using namespace symflow;

namespace {
const QuadraticReal kSqrt2 = QuadraticReal::sqrt(2);
const QuadraticReal kAlpha(-1, 1);

SuspensionFlow sturmianFlow() {
  return SuspensionFlow(Subshift::sturmian(kAlpha), Roof::constant(kSqrt2, 2));
}

const GeneratorModel& model() {
  static GeneratorModel g = [] {
    RecodeOptions opt;
    opt.zWindow = 400;
    return GeneratorModel::build(sturmianFlow(), QuadraticReal(1), kSqrt2, 4, kSqrt2 - QuadraticReal(1), opt);
  }();
  return g;
}

FlowPoint randomZPoint(std::mt19937_64& gen) {
  const SuspensionFlow& f = model().dep().source();
  QuadraticReal phase(ratio(static_cast<long>(gen() % 100003), 100003));
  PointOracle x = PointOracle::sturmian(*f.base().sturmianCoder(), phase);
  QuadraticReal h = f.roof().at(x) * QuadraticReal(ratio(static_cast<long>(gen() % 997), 997));
  return model().dep().encode(FlowPoint{x, h});
}

// grid oracle in doubles: every sample s needs some (u, v) with s + u p - v q in [0, alpha)
bool gridMCondition(double p, double q, int M) {
  const double a = q - p;
  for (int i = 0; i < 20000; ++i) {
    double s = q * (i + 0.5) / 20000;
    bool ok = false;
    for (int u = 0; u < M && !ok; ++u)
      for (int v = 0; v <= u + 1 && !ok; ++v) {
        double beta = s + u * p - v * q;
        ok = beta >= 0 && beta < a;
      }
    if (!ok) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("M-condition agrees with a grid check") {
  for (int M = 2; M <= 6; ++M)
    CHECK(checkMCondition(QuadraticReal(1), kSqrt2, M).holds == gridMCondition(1, std::sqrt(2.0), M));
  CHECK(minimalM(QuadraticReal(1), kSqrt2) == std::optional<std::size_t>(4));
  MCondition three = checkMCondition(QuadraticReal(1), kSqrt2, 3);
  REQUIRE(three.uncovered);
  CHECK(std::abs(three.uncovered->toDouble() - (2 * std::sqrt(2.0) - 2 + std::sqrt(2.0) - 1)) < 1e-12);
  // p = 1, q = 3/2: alpha = 1/2
  for (int M = 2; M <= 5; ++M)
    CHECK(checkMCondition(QuadraticReal(1), QuadraticReal(ratio(3, 2)), M).holds == gridMCondition(1, 1.5, M));
}

TEST_CASE("generator model preconditions") {
  CHECK_THROWS_AS(GeneratorModel::build(sturmianFlow(), QuadraticReal(1), kSqrt2, 3, kSqrt2 - QuadraticReal(1)),
                  Error);
  try {
    GeneratorModel::build(sturmianFlow(), QuadraticReal(1), kSqrt2, 2, kSqrt2 - QuadraticReal(1));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("marking subwords in a hand-made name") {
  const Name name = "AAAAPQAAPAPQAPAAAAPAAAP";
  auto spans = findMarkingSubwords(name, 2);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == std::pair<std::size_t, std::size_t>(4, 8));
  CHECK(spans[1] == std::pair<std::size_t, std::size_t>(18, 22));
  // leading AAAA is too long to hide a remainder
  CHECK(decodeName(name, 2) == parseWord("0000100101010000" "1001"));
  CHECK_THROWS_AS(decodeName("AAPQAAPAP", 2), Error);
  // P Q A P between two markers reads 1 0 1
  CHECK(decodeName("PAAPQAPQAAP", 2) == parseWord("100101001"));
  CHECK(findMarkingSubwords("PQAPAQAAAAP", 2).empty());
  CHECK_THROWS_AS(findMarkingSubwords("PAXP", 2), Error);
}

TEST_CASE("names obey the succession rules") {
  std::mt19937_64 gen(5);
  const std::size_t K = model().K();
  for (int i = 0; i < 10; ++i) {
    Name name = nameOf(model(), randomZPoint(gen), 60);
    REQUIRE(name.size() == 241);
    for (std::size_t j = 0; j + 1 < name.size(); ++j) {
      // a Q tower always continues into its A tower
      if (name[j] == 'Q') CHECK(name[j + 1] == 'A');
    }
    // A-counts between consecutive P's: inside w (< K), a marker (K, K+1) or the long run (>= M + K)
    std::size_t last = name.find('P');
    for (std::size_t j = last + 1; j < name.size(); ++j) {
      if (name[j] != 'P') continue;
      std::size_t as = static_cast<std::size_t>(std::count(name.begin() + last, name.begin() + j, 'A'));
      CHECK((as <= K + 1 || as >= model().M() + K));
      last = j;
    }
    CHECK(findMarkingSubwords(name, K).size() >= 2);
  }
}

TEST_CASE("names are compatible with the time-t map") {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 10; ++i) {
    FlowPoint z = randomZPoint(gen);
    Name big = nameOf(model(), z, 20);
    Name moved = nameOf(model(), flow(model().dep().zFlow(), z, model().t()), 19);
    // moved[k' + 38] is phi_{(k'+1)t}; big[k + 40]
    for (int kp = -38; kp <= 38; ++kp) CHECK(moved[kp + 38] == big[kp + 1 + 40]);
  }
}

TEST_CASE("names recover the central Z block") {
  std::mt19937_64 gen(2024);
  int matched = 0;
  for (int i = 0; i < 100; ++i) {
    FlowPoint z = randomZPoint(gen);
    RoundTrip rt = roundTrip(model(), z, 50);
    if (rt.match) ++matched;
    CHECK(rt.truth.size() == 101);
    // the recovered block is itself a factor of the true itinerary
    const Word wide = z.base.window(-200, 201);
    CHECK(containsFactor(wide, rt.recovered));
  }
  CHECK(matched == 100);
}

TEST_CASE("longer names extend the recovered block") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 10; ++i) {
    FlowPoint z = randomZPoint(gen);
    Word a = decodeName(nameOf(model(), z, 50), model().K());
    Word b = decodeName(nameOf(model(), z, 51), model().K());
    CHECK(b.size() >= a.size());
    CHECK(containsFactor(b, a));
  }
}

TEST_CASE("names are deterministic") {
  std::mt19937_64 g1(9), g2(9);
  FlowPoint z1 = randomZPoint(g1);
  FlowPoint z2 = randomZPoint(g2);
  CHECK(nameOf(model(), z1, 30) == nameOf(model(), z2, 30));
}

TEST_CASE("short names have no markers") {
  std::mt19937_64 gen(11);
  FlowPoint z = randomZPoint(gen);
  try {
    roundTrip(model(), z, 1);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoMarkersFound);
  }
}

TEST_CASE("consecutive markers are far apart and decoding keeps half the letters") {
  std::mt19937_64 gen(31);
  const std::size_t K = model().K(), M = model().M();
  for (int i = 0; i < 1000; ++i) {
    Name name = nameOf(model(), randomZPoint(gen), 50);
    auto marks = findMarkingSubwords(name, K);
    for (std::size_t j = 1; j < marks.size(); ++j) REQUIRE(marks[j].first - marks[j - 1].second >= M + K);
    if (i % 10 == 0) {
      Word w = decodeName(name, K);
      CHECK(w.size() + 2 * (K + 2) >= (name.size() + 1) / 2);
    }
  }
}
