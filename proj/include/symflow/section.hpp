#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symflow/suspension.hpp"

namespace symflow {

// Points (x, offset) with x in the cylinder. An empty cylinder word means the whole base.
struct SectionPiece {
  Cylinder cylinder;
  QuadraticReal offset;
  std::size_t label = 0;  // tower-partition atom
};

struct SectionCertificate {
  bool global = false;
  std::size_t depth = 0;           // base words of this length all meet a piece
  QuadraticReal hittingTimeBound;  // T_cert
};

class CrossSection {
 public:
  CrossSection() = default;
  CrossSection(std::vector<SectionPiece> pieces, std::size_t validityDepth, std::vector<std::string> labelNames = {});
  // base x {0}
  static CrossSection baseSection();

  const std::vector<SectionPiece>& pieces() const { return pieces_; }
  std::size_t validityDepth() const { return depth_; }
  const std::vector<std::string>& labelNames() const { return labels_; }
  std::string labelName(std::size_t label) const;

  std::optional<std::size_t> pieceAt(const FlowPoint& p) const;
  // offsets below the roof on each piece, equal offsets only on disjoint cylinders
  void validate(const SuspensionFlow& f) const;
  // every admissible word of length depth contains a piece cylinder at some coordinate
  SectionCertificate certifyGlobal(const SuspensionFlow& f, std::size_t depth) const;

 private:
  std::vector<SectionPiece> pieces_;
  std::size_t depth_ = 0;
  std::vector<std::string> labels_;
};

struct ReturnEvent {
  QuadraticReal time;
  FlowPoint landing;
  std::size_t piece = 0;
  std::int64_t coordinate = 0;  // base coordinate of the landing relative to the start point
};

// Walks the successive section hits of one orbit, caching piece occurrences
// and roof values chunk by chunk.
class ReturnWalker {
 public:
  ReturnWalker(const SuspensionFlow& f, const CrossSection& s, const FlowPoint& start,
               std::size_t maxBaseShifts = 1'000'000);
  // first hit strictly after the current position
  ReturnEvent next();
  const QuadraticReal& elapsed() const { return elapsed_; }

 private:
  struct Slot {
    QuadraticReal roof;
    std::vector<std::pair<QuadraticReal, std::size_t>> hits;  // sorted by offset
  };
  const Slot& slot(std::int64_t c);
  void extend();

  const SuspensionFlow& flow_;
  const CrossSection& section_;
  PointOracle x_;
  std::int64_t coord_ = 0;
  QuadraticReal height_;
  QuadraticReal elapsed_;
  std::size_t maxShifts_;
  std::deque<Slot> slots_;
  std::int64_t slotBase_ = 0;  // coordinate of slots_.front()
  std::int64_t minAnchor_ = 0, maxEnd_ = 1;
  std::map<Word, std::vector<std::pair<std::int64_t, std::size_t>>> byWord_;  // word -> (anchor, piece)
  std::vector<std::size_t> wholeBase_;
  std::size_t chunk_ = 64;
};

ReturnEvent returnToSection(const SuspensionFlow& f, const FlowPoint& p, const CrossSection& s,
                            std::size_t maxReturns = 1'000'000);

struct PieceSpectrum {
  std::size_t piece = 0;
  std::size_t count = 0;
  QuadraticReal min, max;
};
// return times grouped by the piece left from, over `returns` successive hits
std::vector<PieceSpectrum> returnTimeSpectrum(const SuspensionFlow& f, const CrossSection& s, const FlowPoint& start,
                                              std::size_t returns);

}  // namespace symflow
