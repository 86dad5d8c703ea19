#include "json_io.hpp"

#include "symflow/error.hpp"

namespace symflow::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Rational rationalFrom(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  bad("expected a rational string such as \"3/4\", got " + j.dump());
}

QuadraticReal quadraticFrom(const Json& j) {
  if (j.is_object()) {
    Rational a = j.contains("a") ? rationalFrom(j.at("a")) : Rational(0);
    Rational b = j.contains("b") ? rationalFrom(j.at("b")) : Rational(0);
    return QuadraticReal(a, b);
  }
  if (j.is_string() && j.get<std::string>().find("sqrt") != std::string::npos)
    return parseQuadratic(j.get<std::string>());
  return QuadraticReal(rationalFrom(j));
}

Json quadraticTo(const QuadraticReal& x) { return Json{{"a", to_string(x.a())}, {"b", to_string(x.b())}}; }

Word wordFrom(const Json& j) {
  if (!j.is_string()) bad("expected a word string over 0..9, got " + j.dump());
  return parseWord(j.get<std::string>());
}

Subshift subshiftFrom(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "full") return Subshift::fullShift(field(j, "alphabet").get<std::size_t>());
  if (kind == "golden-mean") return Subshift::goldenMean();
  if (kind == "sft") {
    if (j.contains("adjacency")) {
      std::vector<std::vector<int>> a;
      for (const Json& row : j.at("adjacency")) {
        std::vector<int> r;
        if (row.is_string()) {
          for (char c : row.get<std::string>()) {
            if (c != '0' && c != '1') bad("adjacency rows are strings over 0 and 1");
            r.push_back(c - '0');
          }
        } else {
          r = row.get<std::vector<int>>();
        }
        a.push_back(std::move(r));
      }
      return Subshift::sftFromAdjacency(a);
    }
    std::vector<Word> forbidden;
    for (const Json& w : field(j, "forbidden")) forbidden.push_back(wordFrom(w));
    return Subshift::sftFromForbidden(field(j, "alphabet").get<std::size_t>(), forbidden);
  }
  if (kind == "sturmian") {
    SturmianConvention c = SturmianConvention::LeftClosed;
    if (j.contains("convention")) {
      std::string s = j.at("convention").get<std::string>();
      if (s == "right") c = SturmianConvention::RightClosed;
      else if (s != "left") bad("sturmian convention is \"left\" or \"right\"");
    }
    return Subshift::sturmian(quadraticFrom(field(j, "alpha")), c);
  }
  if (kind == "product") return Subshift::product(subshiftFrom(field(j, "left")), subshiftFrom(field(j, "right")));
  bad("unknown subshift kind '" + kind + "'");
}

Roof roofFrom(const Json& j, std::size_t alphabet) {
  if (!j.is_object()) return Roof::constant(quadraticFrom(j), alphabet);
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "constant") return Roof::constant(quadraticFrom(field(j, "value")), alphabet);
  if (kind == "symbol") {
    std::vector<QuadraticReal> v;
    for (const Json& x : field(j, "values")) v.push_back(quadraticFrom(x));
    return Roof::bySymbol(v);
  }
  if (kind == "table") {
    std::map<Word, QuadraticReal> t;
    for (const auto& [w, x] : field(j, "values").items()) t.emplace(parseWord(w), quadraticFrom(x));
    return Roof::table(field(j, "radius").get<std::size_t>(), std::move(t));
  }
  bad("unknown roof kind '" + kind + "'");
}

bool isFlowSpec(const Json& j) { return j.is_object() && j.contains("base") && j.contains("roof"); }

SuspensionFlow flowFrom(const Json& j) {
  Subshift base = subshiftFrom(field(j, "base"));
  return SuspensionFlow(base, roofFrom(field(j, "roof"), base.alphabetSize()));
}

std::shared_ptr<const MarkovMeasure> measureFrom(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "bernoulli") {
    std::vector<Rational> p;
    for (const Json& x : field(j, "p")) p.push_back(rationalFrom(x));
    return MarkovMeasure::bernoulli(p);
  }
  if (kind == "markov") {
    MarkovMeasure::RationalMatrix p;
    for (const Json& row : field(j, "P")) {
      std::vector<Rational> r;
      for (const Json& x : row) r.push_back(rationalFrom(x));
      p.push_back(std::move(r));
    }
    std::optional<std::vector<Rational>> pi;
    if (j.contains("pi")) {
      pi.emplace();
      for (const Json& x : j.at("pi")) pi->push_back(rationalFrom(x));
    }
    return MarkovMeasure::fromRational(std::move(p), std::move(pi));
  }
  bad("unknown measure kind '" + kind + "'");
}

}  // namespace symflow::io
