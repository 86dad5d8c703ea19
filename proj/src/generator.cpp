#include "symflow/generator.hpp"

#include <algorithm>

#include "symflow/error.hpp"

namespace symflow {

MCondition checkMCondition(const QuadraticReal& p, const QuadraticReal& q, std::size_t M) {
  const QuadraticReal alpha = q - p;
  if (p.sign() <= 0 || alpha.sign() <= 0) fail(ErrorCode::PreconditionFailed, "0 < p < q violated");
  MCondition out;
  out.M = M;
  // s in [v q - u p, v q - u p + alpha)
  std::vector<std::pair<QuadraticReal, QuadraticReal>> iv;
  for (std::size_t u = 0; u < M; ++u)
    for (std::size_t v = 0; v <= u + 1; ++v) {
      QuadraticReal lo = QuadraticReal(static_cast<long>(v)) * q - QuadraticReal(static_cast<long>(u)) * p;
      QuadraticReal hi = lo + alpha;
      if (hi.sign() <= 0 || lo >= q) continue;
      iv.emplace_back(lo, hi);
    }
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [lo, hi] : iv)
    if (lo.sign() >= 0) out.breakpoints.push_back(lo);
  QuadraticReal covered(0);  // [0, covered) is covered
  for (const auto& [lo, hi] : iv) {
    if (covered >= q) break;
    if (lo > covered) break;
    if (hi > covered) covered = hi;
  }
  if (covered >= q) {
    out.holds = true;
  } else {
    out.uncovered = covered;
  }
  return out;
}

std::optional<std::size_t> minimalM(const QuadraticReal& p, const QuadraticReal& q, std::size_t maxM) {
  for (std::size_t m = 2; m <= maxM; ++m)
    if (checkMCondition(p, q, m).holds) return m;
  return std::nullopt;
}

GeneratorModel::GeneratorModel(RecodedFlow dep) : dep_(std::move(dep)) {
  if (dep_.kind() != RecodeKind::Dep) fail(ErrorCode::InvalidArgument, "generator needs a dep recoding");
  const QuadraticReal a = alpha();
  if (!(a.sign() > 0 && a < dep_.p())) fail(ErrorCode::PreconditionFailed, "0 < alpha < p violated");
  MCondition mc = checkMCondition(dep_.p(), dep_.q(), dep_.M());
  if (!mc.holds)
    fail(ErrorCode::PreconditionFailed,
         "M-condition violated at s = " + to_string(*mc.uncovered) + " for M = " + std::to_string(dep_.M()));
}

GeneratorModel GeneratorModel::build(const SuspensionFlow& source, const QuadraticReal& p, const QuadraticReal& q,
                                     std::size_t M, const QuadraticReal& delta, const RecodeOptions& opt) {
  MCondition mc = checkMCondition(p, q, M);
  if (!mc.holds)
    fail(ErrorCode::PreconditionFailed,
         "M-condition violated at s = " + to_string(*mc.uncovered) + " for M = " + std::to_string(M));
  return GeneratorModel(recodeDep(source, p, q, M, delta, opt));
}

char GeneratorModel::letterOf(const FlowPoint& z) const {
  if (z.base.at(0) == 1) return 'P';
  return z.height < alpha() ? 'Q' : 'A';
}

Name nameOf(const GeneratorModel& model, const FlowPoint& z, std::size_t n) {
  const SuspensionFlow& zf = model.dep().zFlow();
  const QuadraticReal t = model.t();
  const std::size_t letters = 4 * n + 1;
  // every roof value is >= p = t, so each step moves at most one coordinate
  const std::size_t span = letters + 2;
  if (span > 4'000'000) fail(ErrorCode::HorizonExceeded, "name window too long");
  FlowPoint start = flow(zf, z, QuadraticReal(-2 * static_cast<long>(n)) * t);
  std::vector<QuadraticReal> roof = zf.roof().values(start.base, 0, static_cast<std::int64_t>(span));
  Word sym = start.base.window(0, static_cast<std::int64_t>(span));
  const QuadraticReal a = model.alpha();
  Name out;
  out.reserve(letters);
  std::size_t i = 0;
  QuadraticReal h = start.height;
  for (std::size_t k = 0; k < letters; ++k) {
    out.push_back(sym[i] == 1 ? 'P' : (h < a ? 'Q' : 'A'));
    h += t;
    while (h >= roof[i]) {
      h -= roof[i];
      if (++i >= span) fail(ErrorCode::HorizonExceeded, "name walk left the fetched window");
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> findMarkingSubwords(const Name& name, std::size_t K) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::optional<std::size_t> lastP;
  std::size_t as = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == 'P') {
      if (lastP && (as == K || as == K + 1)) out.emplace_back(*lastP, i);
      lastP = i;
      as = 0;
    } else if (c == 'A') {
      ++as;
    } else if (c != 'Q') {
      fail(ErrorCode::InvalidArgument, std::string("name letter '") + c + "' outside {P, Q, A}");
    }
  }
  return out;
}

Word decodeName(const Name& name, std::size_t K) {
  auto marks = findMarkingSubwords(name, K);
  if (marks.size() < 2) fail(ErrorCode::NoMarkersFound, "fewer than two marking subwords in the name");
  const std::size_t firstP = name.find('P');
  const std::size_t lastP = name.rfind('P');
  auto countA = [&](std::size_t from, std::size_t to) {
    return static_cast<std::size_t>(std::count(name.begin() + static_cast<std::ptrdiff_t>(from),
                                               name.begin() + static_cast<std::ptrdiff_t>(to), 'A'));
  };
  Word out;
  // before the first P: the last zero may be a doubled remainder unless the
  // run is too long to be the 0^K of a marker
  std::size_t lead = countA(0, firstP);
  out.insert(out.end(), lead >= K + 2 ? lead : (lead == 0 ? 0 : lead - 1), 0);
  std::size_t m = 0;
  for (std::size_t i = firstP; i <= lastP;) {
    if (m < marks.size() && marks[m].first == i) {
      out.push_back(1);
      out.insert(out.end(), K, 0);
      i = marks[m].second;  // closing P is read next
      ++m;
      if (m < marks.size() && marks[m].first == i) continue;
      out.push_back(1);
      ++i;
      continue;
    }
    char c = name[i];
    if (c == 'P') out.push_back(1);
    if (c == 'A') out.push_back(0);
    ++i;
  }
  // after the last P: a doubled remainder can only show as K + 1 letters A
  std::size_t trail = countA(lastP + 1, name.size());
  out.insert(out.end(), trail == K + 1 ? K : trail, 0);
  return out;
}

RoundTrip roundTrip(const GeneratorModel& model, const FlowPoint& z, std::size_t n) {
  RoundTrip out;
  out.recovered = decodeName(nameOf(model, z, n), model.K());
  const auto ni = static_cast<std::int64_t>(n);
  out.truth = z.base.window(-ni, ni + 1);
  out.match = containsFactor(out.recovered, out.truth);
  return out;
}

}  // namespace symflow
