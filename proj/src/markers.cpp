#include "symflow/markers.hpp"

#include <algorithm>

namespace symflow {

namespace {

constexpr std::size_t kMaxScanWords = 4'000'000;

std::vector<Word> scanLanguage(const Subshift& s, std::size_t depth) {
  if (s.languageSize(depth) > kMaxScanWords)
    fail(ErrorCode::DepthExceeded, "language at depth " + std::to_string(depth) + " too large to scan");
  return s.language(depth);
}

void accumulate(ReturnSpectrum& out, const std::vector<Word>& lang, const Word& w) {
  for (const Word& u : lang) {
    ++out.wordsScanned;
    auto occ = occurrences(u, w);
    if (occ.empty()) {
      ++out.wordsWithout;
      continue;
    }
    for (std::size_t i = 1; i < occ.size(); ++i) {
      std::size_t g = occ[i] - occ[i - 1];
      ++out.gapCounts[g];
    }
  }
  if (!out.gapCounts.empty()) out.minReturn = out.gapCounts.begin()->first;
  if (out.wordsWithout == 0 && !out.gapCounts.empty()) out.maxGap = out.gapCounts.rbegin()->first;
}

}  // namespace

ReturnSpectrum returnSpectrum(const Subshift& s, const Word& w, std::size_t depth) {
  if (w.empty()) fail(ErrorCode::InvalidArgument, "marker word must be nonempty");
  if (!s.admissible(w)) fail(ErrorCode::InvalidArgument, "word " + to_string(w) + " is not admissible");
  ReturnSpectrum out;
  out.depth = depth;
  accumulate(out, scanLanguage(s, depth), w);
  return out;
}

MarkerCertificate certifyMarker(const Subshift& s, const MarkerSet& m, std::size_t depth) {
  MarkerCertificate c;
  c.scanDepth = depth;
  const std::size_t len = m.word.size();
  // two occurrences at distance d < n live in a word of length d + len
  if (m.n <= 1) {
    c.disjoint = true;
  } else if (m.n - 1 + len <= depth) {
    c.disjoint = true;
    for (const Word& u : scanLanguage(s, m.n - 1 + len)) {
      auto occ = occurrences(u, m.word);
      for (std::size_t i = 1; i < occ.size(); ++i)
        if (occ[i] - occ[i - 1] < m.n) c.disjoint = false;
    }
  }
  if (m.maxGap >= 1 && m.maxGap - 1 + len <= depth) {
    c.coverageK = m.maxGap - 1;
    c.coverage = true;
    for (const Word& u : scanLanguage(s, m.maxGap - 1 + len))
      if (!containsFactor(u, m.word)) c.coverage = false;
  }
  return c;
}

namespace {

// a few long words: their gaps are a subset of all gaps, so a small gap here is real
std::vector<Word> sampleWords(const Subshift& s, std::size_t depth) {
  std::vector<Word> out;
  if (s.languageSize(depth) > 64) {
    if (const SturmianCoder* c = s.sturmianCoder()) {
      for (int i = 0; i < 4; ++i)
        out.push_back(c->word(QuadraticReal(ratio(2 * i + 1, 8)), 0, static_cast<std::int64_t>(depth)));
      return out;
    }
  }
  auto lang = scanLanguage(s, depth);
  const std::size_t stride = std::max<std::size_t>(1, lang.size() / 16);
  for (std::size_t i = 0; i < lang.size(); i += stride) out.push_back(lang[i]);
  return out;
}

bool sampledSeparated(const std::vector<Word>& sample, const Word& w, std::size_t n) {
  for (const Word& u : sample) {
    auto occ = occurrences(u, w);
    for (std::size_t i = 1; i < occ.size(); ++i)
      if (occ[i] - occ[i - 1] < n) return false;
  }
  return true;
}

bool someWordSeparated(const Subshift& s, const std::vector<Word>& sample, std::size_t len, std::size_t n) {
  for (const Word& w : s.language(len))
    if (sampledSeparated(sample, w, n)) return true;
  return false;
}

}  // namespace

MarkerSet buildMarker(const Subshift& s, std::size_t n, std::size_t maxWordLen, std::size_t depth) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "separation must be positive");
  // a periodic point of period < n meets U and sigma^p U together
  for (std::size_t p = 1; p < n; ++p) {
    std::vector<Word> words;
    try {
      words = s.periodicWords(p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DepthExceeded) throw;
      break;
    }
    if (!words.empty())
      throw NoMarkerError("no marker with separation " + std::to_string(n) + ": periodic point (" +
                              to_string(words.front()) + ")^inf",
                          words.front());
  }
  const std::size_t top = std::min(maxWordLen, depth);
  const std::vector<Word> sample = sampleWords(s, depth);
  // the best separation over words of length len is nondecreasing in len,
  // so lengths below the first sampled success cannot hold a marker
  std::size_t lo = 1, hi = top + 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (someWordSeparated(s, sample, mid, n))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<Word> lang;
  for (std::size_t len = lo; len <= top; ++len) {
    for (const Word& w : s.language(len)) {
      if (!sampledSeparated(sample, w, n)) continue;
      if (lang.empty()) lang = scanLanguage(s, depth);
      ReturnSpectrum sp;
      sp.depth = depth;
      accumulate(sp, lang, w);
      if (!sp.maxGap || !sp.minReturn || *sp.minReturn < n) continue;
      // minReturn is exact only below the scan horizon
      if (*sp.minReturn + len > depth) continue;
      MarkerSet m;
      m.word = w;
      m.n = n;
      m.minReturn = *sp.minReturn;
      m.maxGap = *sp.maxGap;
      m.certificate = certifyMarker(s, m, depth);
      if (m.certificate.disjoint && m.certificate.coverage) return m;
    }
  }
  std::optional<Word> witness;
  throw NoMarkerError("NoMarkerFound(maxWordLen=" + std::to_string(maxWordLen) + ", depth=" + std::to_string(depth) + ")",
                      witness);
}

std::vector<MarkerReturn> markerReturns(const Subshift& s, const MarkerSet& m, std::size_t margin) {
  const std::size_t len = m.word.size();
  const auto mg = static_cast<std::ptrdiff_t>(margin);
  // every return window extends to a word of this length starting at its left edge
  std::map<Word, std::size_t> found;
  for (const Word& u : scanLanguage(s, m.maxGap + len + 2 * margin)) {
    auto occ = occurrences(u, m.word);
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
      if (occ[i] < margin || occ[i + 1] + len + margin > u.size()) continue;
      auto from = u.begin() + static_cast<std::ptrdiff_t>(occ[i]) - mg;
      auto to = u.begin() + static_cast<std::ptrdiff_t>(occ[i + 1] + len) + mg;
      found.emplace(Word(from, to), occ[i + 1] - occ[i]);
    }
  }
  std::vector<MarkerReturn> out;
  for (auto& [w, g] : found) out.push_back({w, g});
  return out;
}

}  // namespace symflow
