#include "symflow/word.hpp"

#include <algorithm>

#include "symflow/error.hpp"

namespace symflow {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Symbol s : w) {
    h ^= s + 1;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (w.size() * 0x9e3779b97f4a7c15ull));
}

Word parseWord(std::string_view text) {
  Word w;
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('.', start);
      if (end == std::string_view::npos) end = text.size();
      auto part = text.substr(start, end - start);
      if (part.empty()) fail(ErrorCode::Parse, "empty symbol in word");
      unsigned v = 0;
      for (char c : part) {
        if (c < '0' || c > '9') fail(ErrorCode::Parse, "bad symbol in word");
        v = v * 10 + static_cast<unsigned>(c - '0');
      }
      w.push_back(static_cast<Symbol>(v));
      start = end + 1;
    }
    return w;
  }
  for (char c : text) {
    if (c < '0' || c > '9') fail(ErrorCode::Parse, std::string("bad symbol '") + c + "' in word");
    w.push_back(static_cast<Symbol>(c - '0'));
  }
  return w;
}

std::string to_string(const Word& w) {
  bool small = std::all_of(w.begin(), w.end(), [](Symbol s) { return s < 10; });
  std::string out;
  if (small) {
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(w[i]);
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word repeat(const Word& w, std::size_t times) {
  Word r;
  r.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

Word slice(const Word& w, std::size_t from, std::size_t len) {
  if (from + len > w.size()) fail(ErrorCode::IndexOutOfRange, "slice out of range");
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

PatternMatcher::PatternMatcher(Word pattern) : pattern_(std::move(pattern)), fail_(pattern_.size() + 1, 0) {
  if (pattern_.empty()) fail(ErrorCode::InvalidArgument, "empty pattern");
  std::size_t k = 0;
  for (std::size_t i = 1; i < pattern_.size(); ++i) {
    while (k > 0 && pattern_[i] != pattern_[k]) k = fail_[k];
    if (pattern_[i] == pattern_[k]) ++k;
    fail_[i + 1] = k;
  }
}

std::vector<std::size_t> PatternMatcher::find(const Word& text) const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  const std::size_t m = pattern_.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern_[k]) k = fail_[k];
    if (text[i] == pattern_[k]) ++k;
    if (k == m) {
      out.push_back(i + 1 - m);
      k = fail_[k];
    }
  }
  return out;
}

std::vector<std::size_t> occurrences(const Word& text, const Word& pattern) {
  if (pattern.empty() || pattern.size() > text.size()) return {};
  return PatternMatcher(pattern).find(text);
}

bool containsFactor(const Word& text, const Word& pattern) {
  if (pattern.empty()) return true;
  return std::search(text.begin(), text.end(), pattern.begin(), pattern.end()) != text.end();
}

bool lengthLexLess(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word minimalRotation(const Word& w) {
  Word best = w;
  Word cur = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

std::size_t primitivePeriod(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace symflow
