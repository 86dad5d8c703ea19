#include "symflow/measure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

#include "symflow/error.hpp"

namespace symflow {

namespace {

double xlogx(double p) { return p > 0 ? p * std::log(p) : 0.0; }

void dfsBlocks(const Measure& m, std::size_t n, Word& cur, std::vector<std::pair<Word, double>>& out) {
  if (cur.size() == n) {
    out.emplace_back(cur, m.mass(cur));
    return;
  }
  for (std::size_t a = 0; a < m.alphabetSize(); ++a) {
    cur.push_back(static_cast<Symbol>(a));
    if (m.mass(cur) > 0) dfsBlocks(m, n, cur, out);
    cur.pop_back();
  }
}

std::vector<Rational> solveStationary(const MarkovMeasure::RationalMatrix& p) {
  const std::size_t k = p.size();
  // rows: k balance equations plus normalization; columns: k unknowns plus rhs
  std::vector<std::vector<Rational>> a(k + 1, std::vector<Rational>(k + 1, Rational(0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) a[j][i] = p[i][j] - (i == j ? Rational(1) : Rational(0));
  for (std::size_t i = 0; i < k; ++i) a[k][i] = 1;
  a[k][k] = 1;
  std::size_t row = 0;
  std::vector<std::size_t> pivotCol;
  for (std::size_t col = 0; col < k && row <= k; ++col) {
    std::size_t piv = row;
    while (piv <= k && sgn(a[piv][col]) == 0) ++piv;
    if (piv > k) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[row][c];
    }
    pivotCol.push_back(col);
    ++row;
  }
  if (pivotCol.size() != k)
    fail(ErrorCode::InvalidArgument, "stationary vector is not unique; supply pi explicitly");
  std::vector<Rational> pi(k);
  for (std::size_t r = 0; r < k; ++r) pi[pivotCol[r]] = a[r][k] / a[r][pivotCol[r]];
  return pi;
}

}  // namespace

std::vector<std::pair<Word, double>> Measure::blockDistribution(std::size_t n) const {
  std::vector<std::pair<Word, double>> out;
  Word cur;
  dfsBlocks(*this, n, cur, out);
  return out;
}

double Measure::blockShannon(std::size_t n) const {
  double h = 0;
  for (const auto& [w, m] : blockDistribution(n)) h -= xlogx(m);
  return h;
}

// ---------------------------------------------------------------- Markov

MarkovMeasure::MarkovMeasure(std::vector<std::vector<double>> p, std::vector<double> pi, RationalMatrix pq,
                             std::vector<Rational> piq, bool exact, std::string label)
    : p_(std::move(p)), pi_(std::move(pi)), pq_(std::move(pq)), piq_(std::move(piq)), exact_(exact),
      label_(std::move(label)) {}

std::shared_ptr<const MarkovMeasure> MarkovMeasure::fromRational(RationalMatrix p, std::optional<std::vector<Rational>> pi,
                                                                 const Subshift* support) {
  const std::size_t k = p.size();
  if (k == 0) fail(ErrorCode::InvalidArgument, "empty transition matrix");
  for (const auto& row : p) {
    if (row.size() != k) fail(ErrorCode::InvalidArgument, "transition matrix must be square");
    Rational sum = 0;
    for (const auto& x : row) {
      if (sgn(x) < 0) fail(ErrorCode::InvalidArgument, "negative transition probability");
      sum += x;
    }
    if (sum != 1) fail(ErrorCode::InvalidArgument, "transition rows must sum to 1 exactly");
  }
  std::vector<Rational> st = pi ? *pi : solveStationary(p);
  if (st.size() != k) fail(ErrorCode::InvalidArgument, "stationary vector has wrong length");
  Rational total = 0;
  for (const auto& x : st) {
    if (sgn(x) < 0) fail(ErrorCode::InvalidArgument, "negative stationary entry");
    total += x;
  }
  if (total != 1) fail(ErrorCode::InvalidArgument, "stationary vector must sum to 1");
  for (std::size_t j = 0; j < k; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += st[i] * p[i][j];
    if (s != st[j]) fail(ErrorCode::InvalidArgument, "pi P != pi");
  }
  if (support) {
    if (support->alphabetSize() != k) fail(ErrorCode::InvalidArgument, "measure and subshift alphabets differ");
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (sgn(p[i][j]) > 0 && sgn(st[i]) > 0 &&
            !support->admissible(Word{static_cast<Symbol>(i), static_cast<Symbol>(j)}))
          fail(ErrorCode::InvalidArgument, "transition outside the subshift's support");
  }
  std::vector<std::vector<double>> pd(k, std::vector<double>(k));
  std::vector<double> pid(k);
  for (std::size_t i = 0; i < k; ++i) {
    pid[i] = st[i].get_d();
    for (std::size_t j = 0; j < k; ++j) pd[i][j] = p[i][j].get_d();
  }
  std::ostringstream label;
  label << "markov(P=[";
  for (std::size_t i = 0; i < k; ++i) {
    label << (i ? ";" : "");
    for (std::size_t j = 0; j < k; ++j) label << (j ? "," : "") << p[i][j].get_str();
  }
  label << "])";
  return std::make_shared<MarkovMeasure>(std::move(pd), std::move(pid), std::move(p), std::move(st), true, label.str());
}

std::shared_ptr<const MarkovMeasure> MarkovMeasure::bernoulli(const std::vector<Rational>& probs) {
  RationalMatrix p(probs.size(), probs);
  return fromRational(std::move(p), probs);
}

std::shared_ptr<const MarkovMeasure> MarkovMeasure::parry(const Subshift& sft) {
  const SftGraph* g = sft.sftGraph();
  if (!g || g->memory != 1) fail(ErrorCode::InvalidArgument, "Parry measure needs a memory-1 SFT");
  if (g->states.empty()) fail(ErrorCode::EmptySubshift, "empty SFT");
  const std::size_t k = g->alphabet;
  const auto n = static_cast<Eigen::Index>(g->states.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < g->states.size(); ++i)
    for (std::size_t j : g->successors[i]) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  auto perron = [](const Eigen::MatrixXd& m, double& lambda) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < m.rows(); ++i)
      if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    lambda = es.eigenvalues()[best].real();
    Eigen::VectorXd v = es.eigenvectors().col(best).real().cwiseAbs();
    return Eigen::VectorXd(v / v.sum());
  };
  double lambda = 0, lambda2 = 0;
  Eigen::VectorXd v = perron(a, lambda);
  Eigen::VectorXd u = perron(a.transpose(), lambda2);
  std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.0));
  std::vector<double> pi(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) p[i][i] = 1.0;  // symbols outside the essential graph carry no mass
  double z = u.dot(v);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t si = g->states[static_cast<std::size_t>(i)][0];
    p[si][si] = 0.0;
    pi[si] = u(i) * v(i) / z;
    for (std::size_t j : g->successors[static_cast<std::size_t>(i)]) {
      std::size_t sj = g->states[j][0];
      p[si][sj] = v(static_cast<Eigen::Index>(j)) / (lambda * v(i));
    }
  }
  return std::make_shared<MarkovMeasure>(std::move(p), std::move(pi), RationalMatrix{}, std::vector<Rational>{}, false,
                                         "parry(" + sft.describe() + ")");
}

double MarkovMeasure::mass(const Word& w) const {
  if (w.empty()) return 1.0;
  for (Symbol s : w)
    if (s >= p_.size()) return 0.0;
  double m = pi_[w[0]];
  for (std::size_t i = 1; i < w.size() && m > 0; ++i) m *= p_[w[i - 1]][w[i]];
  return m;
}

std::optional<QuadraticReal> MarkovMeasure::exactMass(const Word& w) const {
  if (!exact_) return std::nullopt;
  if (w.empty()) return QuadraticReal(1);
  for (Symbol s : w)
    if (s >= pq_.size()) return QuadraticReal(0);
  Rational m = piq_[w[0]];
  for (std::size_t i = 1; i < w.size() && sgn(m) != 0; ++i) m *= pq_[w[i - 1]][w[i]];
  return QuadraticReal(m);
}

std::vector<std::pair<Word, double>> MarkovMeasure::blockDistribution(std::size_t n) const {
  std::vector<std::pair<Word, double>> out;
  if (n == 0) return {{Word{}, 1.0}};
  Word cur;
  auto rec = [&](auto&& self, double m) -> void {
    if (cur.size() == n) {
      out.emplace_back(cur, m);
      return;
    }
    for (std::size_t a = 0; a < p_.size(); ++a) {
      double next = cur.empty() ? pi_[a] : m * p_[cur.back()][a];
      if (next <= 0) continue;
      cur.push_back(static_cast<Symbol>(a));
      self(self, next);
      cur.pop_back();
    }
  };
  rec(rec, 1.0);
  return out;
}

double MarkovMeasure::blockShannon(std::size_t n) const {
  if (n == 0) return 0.0;
  double h0 = 0;
  for (double x : pi_) h0 -= xlogx(x);
  return h0 + static_cast<double>(n - 1) * entropyRate(*this);
}

bool MarkovMeasure::verifyInvariance() const {
  if (!exact_) return false;
  const std::size_t k = pq_.size();
  for (std::size_t i = 0; i < k; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < k; ++j) s += pq_[i][j];
    if (s != 1) return false;
  }
  for (std::size_t j = 0; j < k; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += piq_[i] * pq_[i][j];
    if (s != piq_[j]) return false;
  }
  return true;
}

std::string MarkovMeasure::describe() const { return label_; }

double entropyRate(const MarkovMeasure& m) {
  double h = 0;
  for (std::size_t i = 0; i < m.alphabetSize(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < m.alphabetSize(); ++j) row -= xlogx(m.transition(i, j));
    h += m.stationary(i) * row;
  }
  return h;
}

PointOracle sampleMarkovSegment(const MarkovMeasure& m, std::size_t length, std::uint64_t seed, std::int64_t origin) {
  std::mt19937_64 gen(seed);
  auto draw = [&](const std::vector<double>& probs) {
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    double acc = 0;
    std::size_t last = 0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (probs[a] <= 0) continue;
      last = a;
      acc += probs[a];
      if (u < acc) return static_cast<Symbol>(a);
    }
    return static_cast<Symbol>(last);
  };
  Word data;
  data.reserve(length);
  if (length > 0) data.push_back(draw(m.stationaryVector()));
  while (data.size() < length) data.push_back(draw(m.transitions()[data.back()]));
  return PointOracle::segment(std::move(data), origin);
}

// ---------------------------------------------------------------- empirical

EmpiricalMeasure::EmpiricalMeasure(Word data, bool periodic, std::size_t maxBlock, std::size_t alphabet)
    : data_(std::move(data)), periodic_(periodic), maxBlock_(maxBlock), alphabet_(alphabet) {
  if (data_.empty()) fail(ErrorCode::InvalidArgument, "empirical measure needs data");
  for (Symbol s : data_)
    if (s >= alphabet_) fail(ErrorCode::InvalidArgument, "symbol outside alphabet");
}

std::shared_ptr<const EmpiricalMeasure> EmpiricalMeasure::periodic(const Word& period, std::size_t alphabet) {
  return std::make_shared<EmpiricalMeasure>(period, true, SIZE_MAX, alphabet);
}

std::shared_ptr<const EmpiricalMeasure> EmpiricalMeasure::fromSegment(const PointOracle& x, std::int64_t start,
                                                                      std::size_t length, std::size_t maxBlock,
                                                                      std::size_t alphabet) {
  Word data = x.window(start, start + static_cast<std::int64_t>(length));
  return std::make_shared<EmpiricalMeasure>(std::move(data), false, maxBlock, alphabet);
}

Rational EmpiricalMeasure::frequency(const Word& w) const {
  if (w.empty()) return 1;
  if (w.size() > maxBlock_)
    fail(ErrorCode::InsufficientData, "block length " + std::to_string(w.size()) + " beyond maxBlock");
  const std::size_t n = data_.size();
  if (periodic_) {
    unsigned long hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < w.size() && ok; ++j) ok = data_[(i + j) % n] == w[j];
      hits += ok;
    }
    return ratio(hits, static_cast<unsigned long>(n));
  }
  if (w.size() > n) fail(ErrorCode::InsufficientData, "block longer than the orbit segment");
  return ratio(static_cast<unsigned long>(occurrences(data_, w).size()), static_cast<unsigned long>(n - w.size() + 1));
}

double EmpiricalMeasure::mass(const Word& w) const { return frequency(w).get_d(); }

std::optional<QuadraticReal> EmpiricalMeasure::exactMass(const Word& w) const { return QuadraticReal(frequency(w)); }

std::vector<std::pair<Word, double>> EmpiricalMeasure::blockDistribution(std::size_t n) const {
  if (n > maxBlock_) fail(ErrorCode::InsufficientData, "block length beyond maxBlock");
  const std::size_t len = data_.size();
  std::unordered_map<Word, std::size_t, WordHash> counts;
  std::size_t total = 0;
  if (periodic_) {
    for (std::size_t i = 0; i < len; ++i) {
      Word w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = data_[(i + j) % len];
      ++counts[w];
    }
    total = len;
  } else {
    if (n > len) fail(ErrorCode::InsufficientData, "block longer than the orbit segment");
    for (std::size_t i = 0; i + n <= len; ++i)
      ++counts[Word(data_.begin() + static_cast<std::ptrdiff_t>(i), data_.begin() + static_cast<std::ptrdiff_t>(i + n))];
    total = len - n + 1;
  }
  std::vector<std::pair<Word, double>> out;
  for (auto& [w, c] : counts) out.emplace_back(w, static_cast<double>(c) / static_cast<double>(total));
  std::sort(out.begin(), out.end());
  return out;
}

std::string EmpiricalMeasure::describe() const {
  if (periodic_) return "periodic(" + to_string(data_) + ")";
  return "empirical(len=" + std::to_string(data_.size()) + ")";
}

// ---------------------------------------------------------------- Sturmian

SturmianMeasure::SturmianMeasure(SturmianCoder coder) : coder_(std::move(coder)) {}

QuadraticReal SturmianMeasure::exactMassOrZero(const Word& w) const {
  if (w.empty()) return QuadraticReal(1);
  for (const auto& f : sturmianFactors(coder_, w.size()))
    if (f.word == w) return f.mass;
  return QuadraticReal(0);
}

std::vector<std::pair<Word, double>> SturmianMeasure::blockDistribution(std::size_t n) const {
  std::vector<std::pair<Word, double>> out;
  for (const auto& f : sturmianFactors(coder_, n)) out.emplace_back(f.word, f.mass.toDouble());
  return out;
}

std::string SturmianMeasure::describe() const { return "sturmian-measure(alpha=" + to_string(coder_.alpha()) + ")"; }

// ---------------------------------------------------------------- mixtures

MixtureMeasure::MixtureMeasure(std::vector<Rational> weights, std::vector<MeasurePtr> parts)
    : weights_(std::move(weights)), parts_(std::move(parts)) {
  if (parts_.empty() || parts_.size() != weights_.size()) fail(ErrorCode::InvalidArgument, "bad mixture");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (sgn(w) < 0) fail(ErrorCode::InvalidArgument, "negative mixture weight");
    total += w;
  }
  if (total != 1) fail(ErrorCode::InvalidArgument, "mixture weights must sum to 1");
  for (const auto& p : parts_)
    if (p->alphabetSize() != parts_.front()->alphabetSize())
      fail(ErrorCode::InvalidArgument, "mixture parts must share an alphabet");
}

double MixtureMeasure::mass(const Word& w) const {
  double m = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) m += weights_[i].get_d() * parts_[i]->mass(w);
  return m;
}

std::optional<QuadraticReal> MixtureMeasure::exactMass(const Word& w) const {
  QuadraticReal m;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    auto e = parts_[i]->exactMass(w);
    if (!e) return std::nullopt;
    m += QuadraticReal(weights_[i]) * *e;
  }
  return m;
}

std::size_t MixtureMeasure::maxBlock() const {
  std::size_t b = SIZE_MAX;
  for (const auto& p : parts_) b = std::min(b, p->maxBlock());
  return b;
}

std::string MixtureMeasure::describe() const { return "mixture(" + std::to_string(parts_.size()) + ")"; }

// ---------------------------------------------------------------- functionals

double blockEntropy(const Measure& m, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "block length must be positive");
  if (n > m.maxBlock()) fail(ErrorCode::InsufficientData, "block length beyond the measure's data");
  if (auto e = dynamic_cast<const EmpiricalMeasure*>(&m); e && !e->isPeriodic() && e->sourceLength() < 10 * n)
    fail(ErrorCode::InsufficientData, "orbit segment shorter than 10*n");
  return m.blockShannon(n) / static_cast<double>(n);
}

std::vector<BlockEntropyRow> blockEntropyTable(const Measure& m, std::size_t maxN) {
  std::vector<BlockEntropyRow> rows;
  double prev = 0;
  for (std::size_t n = 1; n <= maxN; ++n) {
    double h = blockEntropy(m, n) * static_cast<double>(n);
    rows.push_back({n, h, h / static_cast<double>(n), h - prev});
    prev = h;
  }
  return rows;
}

Integral integrateLocallyConstant(const LocallyConstant& f, const Measure& m) {
  if (f.length == 0) fail(ErrorCode::InvalidArgument, "window length must be positive");
  if (f.length > m.maxBlock()) fail(ErrorCode::InsufficientData, "window longer than the measure's data");
  Integral out;
  QuadraticReal exact;
  bool allExact = true;
  for (const auto& [w, mass] : m.blockDistribution(f.length)) {
    auto it = f.table.find(w);
    if (it == f.table.end()) fail(ErrorCode::InvalidArgument, "function undefined on charged word " + to_string(w));
    out.value += it->second.toDouble() * mass;
    if (allExact) {
      auto e = m.exactMass(w);
      if (e)
        exact += it->second * *e;
      else
        allExact = false;
    }
  }
  if (allExact) {
    out.exact = exact;
    out.value = exact.toDouble();
  }
  return out;
}

Word dFamilyWord(std::size_t alphabet, std::size_t index) {
  if (index == 0 || alphabet == 0) fail(ErrorCode::IndexOutOfRange, "family index starts at 1");
  std::size_t rest = index - 1;
  std::size_t len = 1;
  std::size_t block = alphabet;
  while (rest >= block) {
    rest -= block;
    ++len;
    block *= alphabet;
  }
  Word w(len);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<Symbol>(rest % alphabet);
    rest /= alphabet;
  }
  return w;
}

DDistance dDistance(const Measure& mu, const Measure& nu, const DMetricConfig& config) {
  if (mu.alphabetSize() != nu.alphabetSize()) fail(ErrorCode::InvalidArgument, "measures on different alphabets");
  DDistance d;
  double weight = 1.0;
  for (std::size_t n = 1; n <= config.terms; ++n) {
    weight *= 0.5;
    Word w = dFamilyWord(mu.alphabetSize(), n);
    d.value += std::fabs(mu.mass(w) - nu.mass(w)) * weight;
  }
  d.truncationBound = std::ldexp(1.0, 1 - static_cast<int>(config.terms));
  return d;
}

}  // namespace symflow
