#include "symflow/subshift.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "symflow/error.hpp"

namespace symflow {

EntropyValue SubshiftImpl::entropy(std::size_t horizon) const {
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "entropy horizon must be positive");
  Integer size = languageSize(horizon);
  if (sgn(size) == 0) fail(ErrorCode::EmptySubshift, "empty subshift");
  // log of a big integer: mantissa/exponent split keeps doubles in range
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, size.get_mpz_t());
  double logSize = std::log(mant) + static_cast<double>(exp) * std::log(2.0);
  return {logSize / static_cast<double>(horizon), false, horizon};
}

double SubshiftImpl::entropyUpperBound() const { return entropy(20).value; }

double perronRoot(const std::vector<std::vector<double>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 0;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  double best = 0;
  for (Eigen::Index i = 0; i < n; ++i) best = std::max(best, std::abs(solver.eigenvalues()[i]));
  return best;
}

namespace {

void checkAlphabet(const Word& w, std::size_t alphabet) {
  for (Symbol s : w)
    if (s >= alphabet) fail(ErrorCode::InvalidArgument, "symbol " + std::to_string(s) + " outside alphabet");
}

class SftImpl final : public SubshiftImpl {
 public:
  SftImpl(SftGraph g, std::string desc) : g_(std::move(g)), desc_(std::move(desc)) {
    for (std::size_t i = 0; i < g_.states.size(); ++i) index_.emplace(g_.states[i], i);
  }

  SubshiftKind kind() const override { return SubshiftKind::Sft; }
  std::size_t alphabetSize() const override { return g_.alphabet; }
  const SftGraph& graph() const { return g_; }

  bool admissible(const Word& w) const override {
    checkAlphabet(w, g_.alphabet);
    const std::size_t m = g_.memory;
    if (w.empty()) return !g_.states.empty();
    if (w.size() < m) {
      for (const Word& s : g_.states)
        if (containsFactor(s, w)) return true;
      return false;
    }
    std::size_t prev = 0;
    for (std::size_t i = 0; i + m <= w.size(); ++i) {
      auto it = index_.find(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                 w.begin() + static_cast<std::ptrdiff_t>(i + m)));
      if (it == index_.end()) return false;
      if (i > 0) {
        const auto& succ = g_.successors[prev];
        if (std::find(succ.begin(), succ.end(), it->second) == succ.end()) return false;
      }
      prev = it->second;
    }
    return true;
  }

  std::vector<Word> language(std::size_t n) const override {
    const std::size_t m = g_.memory;
    if (n < m) {
      std::set<Word> out;
      for (const Word& s : g_.states)
        for (std::size_t i = 0; i + n <= s.size(); ++i)
          out.insert(Word(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + n)));
      return {out.begin(), out.end()};
    }
    std::vector<Word> out;
    Word cur;
    for (std::size_t s = 0; s < g_.states.size(); ++s) {
      cur = g_.states[s];
      extend(s, n - m, cur, out);
    }
    return out;
  }

  Integer languageSize(std::size_t n) const override {
    const std::size_t m = g_.memory;
    if (n < m) return Integer(static_cast<unsigned long>(language(n).size()));
    std::vector<Integer> v(g_.states.size(), Integer(1));
    for (std::size_t step = 0; step < n - m; ++step) {
      std::vector<Integer> nv(v.size(), Integer(0));
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j : g_.successors[i]) nv[i] += v[j];
      v.swap(nv);
    }
    Integer total = 0;
    for (const auto& x : v) total += x;
    return total;
  }

  EntropyValue entropy(std::size_t) const override {
    if (g_.states.empty()) fail(ErrorCode::EmptySubshift, "SFT has no bi-infinite points");
    std::vector<std::vector<double>> a(g_.states.size(), std::vector<double>(g_.states.size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j : g_.successors[i]) a[i][j] = 1.0;
    return {std::log(perronRoot(a)), true, 0};
  }

  double entropyUpperBound() const override { return entropy(0).value + 1e-12; }

  std::vector<Word> periodicWords(std::size_t n) const override {
    if (n == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
    std::vector<Word> out;
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < g_.states.size(); ++s) {
      path.assign(1, s);
      cycles(s, n, path, out);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string describe() const override { return desc_; }

 private:
  void extend(std::size_t state, std::size_t remaining, Word& cur, std::vector<Word>& out) const {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t t : g_.successors[state]) {
      cur.push_back(g_.states[t].back());
      extend(t, remaining - 1, cur, out);
      cur.pop_back();
    }
  }

  void cycles(std::size_t start, std::size_t n, std::vector<std::size_t>& path, std::vector<Word>& out) const {
    if (path.size() == n) {
      const auto& succ = g_.successors[path.back()];
      if (std::find(succ.begin(), succ.end(), start) != succ.end()) {
        Word w;
        for (std::size_t s : path) w.push_back(g_.states[s].back());
        out.push_back(w);
      }
      return;
    }
    for (std::size_t t : g_.successors[path.back()]) {
      path.push_back(t);
      cycles(start, n, path, out);
      path.pop_back();
    }
  }

  SftGraph g_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::string desc_;
};

bool endsWithForbidden(const Word& w, const std::vector<Word>& forbidden) {
  for (const Word& f : forbidden) {
    if (f.size() > w.size()) continue;
    if (std::equal(f.begin(), f.end(), w.end() - static_cast<std::ptrdiff_t>(f.size()))) return true;
  }
  return false;
}

void trimToEssential(SftGraph& g) {
  const std::size_t n = g.states.size();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j : g.successors[i])
        if (alive[j]) {
          ++outdeg[i];
          ++indeg[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i] && (indeg[i] == 0 || outdeg[i] == 0)) {
        alive[i] = false;
        changed = true;
      }
  }
  // keep survivors in lexicographic order, successors sorted by appended symbol
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.states[a] < g.states[b]; });
  std::vector<std::size_t> remap(n, SIZE_MAX);
  for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = k;
  SftGraph out;
  out.alphabet = g.alphabet;
  out.memory = g.memory;
  for (std::size_t old : order) {
    out.states.push_back(g.states[old]);
    std::vector<std::size_t> succ;
    for (std::size_t j : g.successors[old])
      if (alive[j]) succ.push_back(remap[j]);
    std::sort(succ.begin(), succ.end(),
              [&](std::size_t a, std::size_t b) { return g.states[order[a]].back() < g.states[order[b]].back(); });
    out.successors.push_back(succ);
  }
  g = std::move(out);
}

class SturmianImpl final : public SubshiftImpl {
 public:
  explicit SturmianImpl(SturmianCoder coder) : coder_(std::move(coder)) {}
  SubshiftKind kind() const override { return SubshiftKind::Sturmian; }
  std::size_t alphabetSize() const override { return 2; }
  const SturmianCoder& coder() const { return coder_; }

  bool admissible(const Word& w) const override {
    checkAlphabet(w, 2);
    const auto& lang = cached(w.size());
    return std::binary_search(lang.begin(), lang.end(), w);
  }
  std::vector<Word> language(std::size_t n) const override { return cached(n); }
  Integer languageSize(std::size_t n) const override { return Integer(static_cast<unsigned long>(n + 1)); }
  // complexity n+1 forces zero entropy
  double entropyUpperBound() const override { return 0.0; }
  std::vector<Word> periodicWords(std::size_t) const override { return {}; }
  std::string describe() const override {
    return std::string("sturmian(alpha=") + to_string(coder_.alpha()) +
           (coder_.convention() == SturmianConvention::LeftClosed ? ",[0,a))" : ",(0,a])");
  }

 private:
  const std::vector<Word>& cached(std::size_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::vector<Word> words;
    for (auto& f : sturmianFactors(coder_, n)) words.push_back(std::move(f.word));
    if (cache_.size() > 64) cache_.clear();
    return cache_.emplace(n, std::move(words)).first->second;
  }

  SturmianCoder coder_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, std::vector<Word>> cache_;
};

class GeneratedImpl final : public SubshiftImpl {
 public:
  GeneratedImpl(std::size_t alphabet, std::vector<Word> corpus, std::size_t window)
      : alphabet_(alphabet), corpus_(std::move(corpus)), window_(window) {
    for (const Word& w : corpus_) checkAlphabet(w, alphabet_);
  }
  SubshiftKind kind() const override { return SubshiftKind::Generated; }
  std::size_t alphabetSize() const override { return alphabet_; }
  const std::vector<Word>& corpus() const { return corpus_; }

  bool admissible(const Word& w) const override {
    checkAlphabet(w, alphabet_);
    return table(w.size()).set.count(w) > 0;
  }
  std::vector<Word> language(std::size_t n) const override { return table(n).sorted; }
  EntropyValue entropy(std::size_t horizon) const override {
    return SubshiftImpl::entropy(std::min(horizon, window_));
  }
  double entropyUpperBound() const override { return entropy(window_).value; }

  std::vector<Word> periodicWords(std::size_t n) const override {
    if (n == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
    if (n > window_) fail(ErrorCode::DepthExceeded, "period beyond certified window");
    std::vector<Word> out;
    for (const Word& u : table(n).sorted) {
      Word rep = repeat(u, window_ / n + 1);
      rep.resize(window_);
      if (table(window_).set.count(rep)) out.push_back(u);
    }
    return out;
  }
  std::optional<std::size_t> certifiedWindow() const override { return window_; }
  std::string describe() const override {
    return "generated(alphabet=" + std::to_string(alphabet_) + ",window=" + std::to_string(window_) + ")";
  }

 private:
  struct Table {
    std::vector<Word> sorted;
    std::unordered_set<Word, WordHash> set;
  };

  const Table& table(std::size_t n) const {
    if (n > window_)
      fail(ErrorCode::DepthExceeded,
           "query length " + std::to_string(n) + " beyond certified window " + std::to_string(window_));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(n);
    if (it != tables_.end()) return it->second;
    Table t;
    for (const Word& c : corpus_)
      for (std::size_t i = 0; i + n <= c.size(); ++i)
        t.set.insert(Word(c.begin() + static_cast<std::ptrdiff_t>(i), c.begin() + static_cast<std::ptrdiff_t>(i + n)));
    t.sorted.assign(t.set.begin(), t.set.end());
    std::sort(t.sorted.begin(), t.sorted.end());
    return tables_.emplace(n, std::move(t)).first->second;
  }

  std::size_t alphabet_;
  std::vector<Word> corpus_;
  std::size_t window_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, Table> tables_;
};

class ProductImpl final : public SubshiftImpl {
 public:
  ProductImpl(Subshift a, Subshift b) : a_(std::move(a)), b_(std::move(b)) {}
  SubshiftKind kind() const override { return SubshiftKind::Product; }
  std::size_t alphabetSize() const override { return a_.alphabetSize() * b_.alphabetSize(); }
  const Subshift& left() const { return a_; }
  const Subshift& right() const { return b_; }

  std::pair<Word, Word> split(const Word& w) const {
    const auto k = static_cast<Symbol>(b_.alphabetSize());
    Word u, v;
    for (Symbol s : w) {
      u.push_back(static_cast<Symbol>(s / k));
      v.push_back(static_cast<Symbol>(s % k));
    }
    return {u, v};
  }
  Word join(const Word& u, const Word& v) const {
    const auto k = static_cast<Symbol>(b_.alphabetSize());
    Word w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = static_cast<Symbol>(u[i] * k + v[i]);
    return w;
  }

  bool admissible(const Word& w) const override {
    checkAlphabet(w, alphabetSize());
    auto [u, v] = split(w);
    return a_.admissible(u) && b_.admissible(v);
  }
  std::vector<Word> language(std::size_t n) const override {
    std::vector<Word> out;
    auto la = a_.language(n);
    auto lb = b_.language(n);
    for (const Word& u : la)
      for (const Word& v : lb) out.push_back(join(u, v));
    std::sort(out.begin(), out.end());
    return out;
  }
  Integer languageSize(std::size_t n) const override { return a_.languageSize(n) * b_.languageSize(n); }
  EntropyValue entropy(std::size_t horizon) const override {
    EntropyValue x = a_.topologicalEntropy(horizon);
    EntropyValue y = b_.topologicalEntropy(horizon);
    return {x.value + y.value, x.exact && y.exact, std::max(x.horizon, y.horizon)};
  }
  double entropyUpperBound() const override { return a_.entropyUpperBound() + b_.entropyUpperBound(); }
  std::vector<Word> periodicWords(std::size_t n) const override {
    std::vector<Word> out;
    auto pa = a_.periodicWords(n);
    auto pb = b_.periodicWords(n);
    for (const Word& u : pa)
      for (const Word& v : pb) out.push_back(join(u, v));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::optional<std::size_t> certifiedWindow() const override {
    auto x = a_.certifiedWindow();
    auto y = b_.certifiedWindow();
    if (x && y) return std::min(*x, *y);
    return x ? x : y;
  }
  std::string describe() const override { return "product(" + a_.describe() + "," + b_.describe() + ")"; }

 private:
  Subshift a_, b_;
};

}  // namespace

Subshift Subshift::sftFromForbidden(std::size_t alphabet, const std::vector<Word>& forbidden) {
  if (alphabet == 0 || alphabet > 65535) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  std::size_t maxLen = 0;
  for (const Word& f : forbidden) {
    if (f.empty()) fail(ErrorCode::InvalidArgument, "empty forbidden word");
    checkAlphabet(f, alphabet);
    maxLen = std::max(maxLen, f.size());
  }
  SftGraph g;
  g.alphabet = alphabet;
  g.memory = std::max<std::size_t>(1, maxLen > 0 ? maxLen - 1 : 1);
  // states: words of length memory avoiding every forbidden factor
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 0; len < g.memory; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (std::size_t a = 0; a < alphabet; ++a) {
        Word x = w;
        x.push_back(static_cast<Symbol>(a));
        if (!endsWithForbidden(x, forbidden)) next.push_back(std::move(x));
      }
    frontier.swap(next);
  }
  g.states = frontier;
  std::unordered_map<Word, std::size_t, WordHash> idx;
  for (std::size_t i = 0; i < g.states.size(); ++i) idx.emplace(g.states[i], i);
  g.successors.resize(g.states.size());
  for (std::size_t i = 0; i < g.states.size(); ++i)
    for (std::size_t a = 0; a < alphabet; ++a) {
      Word ext = g.states[i];
      ext.push_back(static_cast<Symbol>(a));
      if (endsWithForbidden(ext, forbidden)) continue;
      auto it = idx.find(Word(ext.begin() + 1, ext.end()));
      if (it != idx.end()) g.successors[i].push_back(it->second);
    }
  trimToEssential(g);
  std::string desc = "sft(alphabet=" + std::to_string(alphabet) + ",forbidden=[";
  for (std::size_t i = 0; i < forbidden.size(); ++i) desc += (i ? "," : "") + to_string(forbidden[i]);
  desc += "])";
  return Subshift(std::make_shared<SftImpl>(std::move(g), desc));
}

Subshift Subshift::sftFromAdjacency(const std::vector<std::vector<int>>& adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty adjacency matrix");
  SftGraph g;
  g.alphabet = n;
  g.memory = 1;
  g.successors.resize(n);
  std::string desc = "sft(adjacency=[";
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i].size() != n) fail(ErrorCode::InvalidArgument, "adjacency matrix must be square");
    g.states.push_back(Word{static_cast<Symbol>(i)});
    desc += i ? "," : "";
    for (std::size_t j = 0; j < n; ++j) {
      int v = adjacency[i][j];
      if (v != 0 && v != 1) fail(ErrorCode::InvalidArgument, "adjacency entries must be 0 or 1");
      if (v) g.successors[i].push_back(j);
      desc += static_cast<char>('0' + v);
    }
  }
  desc += "])";
  trimToEssential(g);
  return Subshift(std::make_shared<SftImpl>(std::move(g), desc));
}

Subshift Subshift::fullShift(std::size_t k) { return sftFromForbidden(k, {}); }

Subshift Subshift::goldenMean() { return sftFromForbidden(2, {Word{1, 1}}); }

Subshift Subshift::sturmian(const QuadraticReal& alpha, SturmianConvention c) {
  return Subshift(std::make_shared<SturmianImpl>(SturmianCoder(alpha, c)));
}

Subshift Subshift::generated(std::size_t alphabet, std::vector<Word> corpus, std::size_t window) {
  return Subshift(std::make_shared<GeneratedImpl>(alphabet, std::move(corpus), window));
}

Subshift Subshift::product(const Subshift& left, const Subshift& right) {
  return Subshift(std::make_shared<ProductImpl>(left, right));
}

bool Subshift::admissible(const Word& w) const { return impl_->admissible(w); }

std::vector<Word> Subshift::language(std::size_t n) const {
  if (n == 0) fail(ErrorCode::InvalidArgument, "language length must be >= 1");
  return impl_->language(n);
}

Integer Subshift::languageSize(std::size_t n) const {
  if (n == 0) fail(ErrorCode::InvalidArgument, "language length must be >= 1");
  return impl_->languageSize(n);
}

EntropyValue Subshift::topologicalEntropy(std::size_t horizon) const { return impl_->entropy(horizon); }

std::vector<Word> Subshift::periodicWords(std::size_t n) const {
  if (n == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
  return impl_->periodicWords(n);
}

std::vector<PointOracle> Subshift::periodicPoints(std::size_t n) const {
  std::vector<PointOracle> out;
  for (const Word& w : periodicWords(n)) out.push_back(PointOracle::periodic(w));
  return out;
}

const SftGraph* Subshift::sftGraph() const {
  auto p = dynamic_cast<const SftImpl*>(impl_.get());
  return p ? &p->graph() : nullptr;
}

const SturmianCoder* Subshift::sturmianCoder() const {
  auto p = dynamic_cast<const SturmianImpl*>(impl_.get());
  return p ? &p->coder() : nullptr;
}

const std::vector<Word>* Subshift::generatedCorpus() const {
  auto p = dynamic_cast<const GeneratedImpl*>(impl_.get());
  return p ? &p->corpus() : nullptr;
}

std::pair<Subshift, Subshift> Subshift::productFactors() const {
  auto p = dynamic_cast<const ProductImpl*>(impl_.get());
  if (!p) fail(ErrorCode::InvalidArgument, "not a product subshift");
  return {p->left(), p->right()};
}

}  // namespace symflow
