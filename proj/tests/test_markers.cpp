#include <cmath>

#include "support.hpp"
#include "symflow/balanced.hpp"
#include "symflow/markers.hpp"
#include "symflow/measure.hpp"

using namespace symflow;

namespace {
Subshift sturmian() { return Subshift::sturmian(QuadraticReal(-1, 1)); }
}  // namespace

TEST_CASE("return spectrum examples") {
  ReturnSpectrum full = returnSpectrum(Subshift::fullShift(2), parseWord("0"), 10);
  CHECK(full.minReturn == std::optional<std::size_t>(1));
  CHECK_FALSE(full.maxGap.has_value());
  CHECK(full.wordsWithout == 1);

  ReturnSpectrum gm = returnSpectrum(Subshift::goldenMean(), parseWord("1"), 10);
  CHECK(gm.minReturn == std::optional<std::size_t>(2));
  CHECK_FALSE(gm.maxGap.has_value());

  Subshift s = sturmian();
  for (const Word& w : s.language(3)) {
    ReturnSpectrum sp = returnSpectrum(s, w, 50);
    REQUIRE(sp.maxGap.has_value());
    if (w == parseWord("000")) continue;
    CHECK(*sp.minReturn >= 2);
  }
  CHECK_THROWS_AS(returnSpectrum(Subshift::goldenMean(), parseWord("11"), 5), Error);
}

TEST_CASE("Sturmian marker at n = 5") {
  Subshift s = sturmian();
  MarkerSet m = buildMarker(s, 5, 20, 100);
  CHECK(m.minReturn >= 5);
  CHECK(m.certificate.disjoint);
  CHECK(m.certificate.coverage);
  CHECK(m.certificate.coverageK + 1 == m.maxGap);
  // disjointness by direct scan: no word puts w at offsets i < j < i + n
  for (const Word& u : s.language(100)) {
    auto occ = occurrences(u, m.word);
    for (std::size_t i = 1; i < occ.size(); ++i) CHECK(occ[i] - occ[i - 1] >= 5);
  }
  // coverage: every word of length K + L contains w
  for (const Word& u : s.language(m.coverageKPlusLen()))
    CHECK(containsFactor(u, m.word));
  // Kac bound under the rotation measure
  SturmianMeasure mu(SturmianCoder(QuadraticReal(-1, 1), SturmianConvention::LeftClosed));
  CHECK(mu.mass(m.word) <= 1.0 / 5 + 1e-12);
  // nothing shorter works
  for (std::size_t len = 1; len < m.word.size(); ++len)
    for (const Word& w : s.language(len)) {
      ReturnSpectrum sp = returnSpectrum(s, w, 100);
      CHECK((!sp.minReturn || *sp.minReturn < 5 || !sp.maxGap));
    }
}

TEST_CASE("separation one is vacuous") {
  MarkerSet m = buildMarker(sturmian(), 1, 5, 40);
  CHECK(m.word.size() == 1);
  CHECK(m.certificate.disjoint);
}

TEST_CASE("full shift has no marker") {
  try {
    buildMarker(Subshift::fullShift(2), 3, 10, 12);
    FAIL("expected NoMarkerFound");
  } catch (const NoMarkerError& e) {
    CHECK(e.code() == ErrorCode::NoMarkerFound);
    REQUIRE(e.witness().has_value());
    CHECK(*e.witness() == parseWord("0"));
  }
}

TEST_CASE("marker returns tile the orbit") {
  Subshift s = sturmian();
  MarkerSet m = buildMarker(s, 8, 30, 120);
  auto returns = markerReturns(s, m, 1);
  REQUIRE_FALSE(returns.empty());
  for (const auto& r : returns) {
    CHECK(r.gap >= m.minReturn);
    CHECK(r.gap <= m.maxGap);
    CHECK(r.window.size() == r.gap + m.word.size() + 2);
    CHECK(s.admissible(r.window));
  }
  // the returns along a long orbit segment are all in the table
  Word x = s.sturmianCoder()->word(QuadraticReal(ratio(1, 3)), 0, 2000);
  auto occ = occurrences(x, m.word);
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    if (occ[i] < 1 || occ[i + 1] + m.word.size() + 1 > x.size()) continue;
    Word w(x.begin() + static_cast<std::ptrdiff_t>(occ[i]) - 1,
           x.begin() + static_cast<std::ptrdiff_t>(occ[i + 1] + m.word.size()) + 1);
    bool hit = false;
    for (const auto& r : returns) hit = hit || r.window == w;
    CHECK(hit);
  }
}

TEST_CASE("balanced code examples") {
  BalancedCode c1(1);
  CHECK(c1.count() == 2);
  CHECK(c1.unrank(0) == parseWord("01"));
  CHECK(c1.unrank(1) == parseWord("10"));
  CHECK(BalancedCode(2).count() == 6);
  CHECK_THROWS_AS(c1.unrank(2), Error);
  CHECK_THROWS_AS(c1.rank(parseWord("11")), Error);
}

TEST_CASE("constrained code counts match brute force") {
  BalancedConstraints c;
  c.ones = 3;
  c.firstLastOne = true;
  c.maxZeroRun = 3;
  BalancedCode code(3, c);
  std::size_t brute = 0;
  for (unsigned m = 0; m < 64; ++m) {
    Word w;
    for (int i = 5; i >= 0; --i) w.push_back(static_cast<Symbol>((m >> i) & 1u));
    int ones = 0;
    for (Symbol s : w) ones += s;
    bool ok = ones == 3 && w.front() == 1 && w.back() == 1 && !containsFactor(w, parseWord("000"));
    CHECK(code.satisfies(w) == ok);
    if (ok) ++brute;
  }
  CHECK(code.count() == brute);
  for (std::size_t i = 0; i < brute; ++i) CHECK(code.rank(code.unrank(i)) == i);
}

TEST_CASE("rank and unrank are inverse for k <= 8") {
  for (std::size_t k = 1; k <= 8; ++k) {
    BalancedCode code(k);
    CHECK(code.count() == binomial(2 * k, k));
    Word prev;
    for (Integer i = 0; i < code.count(); ++i) {
      Word w = code.unrank(i);
      REQUIRE(code.rank(w) == i);
      if (!prev.empty()) CHECK(prev < w);
      prev = w;
    }
  }
}

TEST_CASE("dGap examples") {
  const QuadraticReal one(1), r2 = QuadraticReal::sqrt(2);
  auto a = dGap(one + r2, one, r2, Rational(1));
  REQUIRE(a.has_value());
  CHECK(a->value == QuadraticReal(0));
  CHECK(a->k == 1);
  CHECK(a->l == 1);
  auto b = dGap(QuadraticReal(5), one, r2, Rational(1));
  REQUIRE(b.has_value());
  CHECK(b->value == QuadraticReal(5) - QuadraticReal(2) - QuadraticReal(2) * r2);
  CHECK(b->k == 2);
  CHECK(b->l == 2);
  CHECK_FALSE(dGap(one, one, r2, Rational(1)).has_value());
  CHECK_THROWS_AS(dGap(QuadraticReal(5), one, one, Rational(1)), Error);
}

TEST_CASE("dGap agrees with a double-precision scan") {
  const QuadraticReal one(1), r2 = QuadraticReal::sqrt(2);
  for (long g = 3; g < 60; ++g) {
    QuadraticReal x = QuadraticReal(g) * r2 / QuadraticReal(2);
    auto d = dGap(x, one, r2, ratio(1, 10));
    double xd = x.toDouble(), best = 1e9;
    for (long l = 1; l * std::sqrt(2.0) <= xd; ++l)
      for (long k = 0; k <= l; ++k) {
        if (static_cast<double>(k) * 1.1 < static_cast<double>(l) - 1e-12) continue;
        double r = xd - static_cast<double>(k) - static_cast<double>(l) * std::sqrt(2.0);
        if (r >= -1e-12) best = std::min(best, r);
      }
    if (best > 1e8)
      CHECK_FALSE(d.has_value());
    else
      CHECK(d->value.toDouble() == doctest::Approx(best).epsilon(1e-9));
  }
}
