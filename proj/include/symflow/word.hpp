#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symflow {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Digits "0".."9"; longer alphabets use dot-separated indices ("12.3.0").
Word parseWord(std::string_view text);
std::string to_string(const Word& w);

Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, std::size_t times);
Word slice(const Word& w, std::size_t from, std::size_t len);

// Start positions of every (possibly overlapping) occurrence, via KMP.
std::vector<std::size_t> occurrences(const Word& text, const Word& pattern);
bool containsFactor(const Word& text, const Word& pattern);

// Length-lexicographic comparison.
bool lengthLexLess(const Word& a, const Word& b);

// Smallest rotation, used to name periodic orbits.
Word minimalRotation(const Word& w);
// Smallest p dividing |w| with w = u^{|w|/p}.
std::size_t primitivePeriod(const Word& w);

// Precomputed KMP automaton for repeated scans with one pattern.
class PatternMatcher {
 public:
  explicit PatternMatcher(Word pattern);
  const Word& pattern() const { return pattern_; }
  std::vector<std::size_t> find(const Word& text) const;

 private:
  Word pattern_;
  std::vector<std::size_t> fail_;
};

}  // namespace symflow
