#pragma once

#include <map>
#include <optional>
#include <vector>

#include "symflow/error.hpp"
#include "symflow/point.hpp"
#include "symflow/subshift.hpp"

namespace symflow {

struct ReturnSpectrum {
  std::size_t depth = 0;
  // least gap between consecutive occurrence starts; exact when <= depth - |w|
  std::optional<std::size_t> minReturn;
  std::optional<std::size_t> maxGap;  // empty = some depth-word omits w
  std::map<std::size_t, std::size_t> gapCounts;
  std::size_t wordsScanned = 0;
  std::size_t wordsWithout = 0;
};

ReturnSpectrum returnSpectrum(const Subshift& s, const Word& w, std::size_t depth);

struct MarkerCertificate {
  bool disjoint = false;     // sigma^i U, 0 <= i < n, pairwise disjoint
  bool coverage = false;     // every word of length K + |w| contains w
  std::size_t coverageK = 0;  // every point has w at some coordinate in [0, K]
  std::size_t scanDepth = 0;
};

struct MarkerSet {
  Word word;
  std::size_t n = 0;
  std::size_t minReturn = 0;
  std::size_t maxGap = 0;
  MarkerCertificate certificate;

  Cylinder cylinder() const { return Cylinder{0, word}; }
  std::size_t coverageKPlusLen() const { return certificate.coverageK + word.size(); }
};

// NoMarkerFound, with a periodic witness when one blocks every marker
class NoMarkerError : public Error {
 public:
  NoMarkerError(const std::string& message, std::optional<Word> witness)
      : Error(ErrorCode::NoMarkerFound, message), witness_(std::move(witness)) {}
  const std::optional<Word>& witness() const { return witness_; }

 private:
  std::optional<Word> witness_;
};

MarkerSet buildMarker(const Subshift& s, std::size_t n, std::size_t maxWordLen, std::size_t depth);

// re-check a marker from scratch against the language
MarkerCertificate certifyMarker(const Subshift& s, const MarkerSet& m, std::size_t depth);

// x[-margin, gap + |w| + margin) with w at 0 and gap, and nowhere in between
struct MarkerReturn {
  Word window;
  std::size_t gap = 0;
};
std::vector<MarkerReturn> markerReturns(const Subshift& s, const MarkerSet& m, std::size_t margin);

}  // namespace symflow
