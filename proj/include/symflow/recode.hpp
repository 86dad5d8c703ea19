#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symflow/markers.hpp"
#include "symflow/section.hpp"
#include "symflow/suspension.hpp"

namespace symflow {

enum class RecodeKind { Bog, Dex, Dep };

// One marker return of the source base together with its Z block.
struct RecodeAtom {
  Word window;  // x[-m, gap + |w| + m), m the roof radius
  std::size_t gap = 0;
  std::vector<QuadraticReal> baseTimes;  // roof prefix sums over the return, size gap + 1
  QuadraticReal returnTime;
  Word zBlock;
  std::vector<QuadraticReal> steps;      // r' along the block
  std::vector<QuadraticReal> stepTimes;  // prefix sums of steps, size |zBlock| + 1
  unsigned long k = 0, l = 0;
  QuadraticReal remainder;
  Word schedule;  // the balanced word (dex, dep)
  std::size_t classIndex = 0;
};

struct RecodeOptions {
  std::size_t separation = 8;  // first marker separation tried
  std::size_t maxSeparation = 3000;
  std::size_t maxWordLen = 4000;
  std::size_t zWindow = 64;  // certified window of the generated Z
  std::size_t K = 3;         // dep: interior zero runs stay below K
};

struct RecodeCore;

class RecodedFlow {
 public:
  explicit RecodedFlow(std::shared_ptr<const RecodeCore> core) : core_(std::move(core)) {}

  RecodeKind kind() const;
  const SuspensionFlow& source() const;
  const MarkerSet& marker() const;
  const std::vector<RecodeAtom>& atoms() const;
  // Z with its generating corpus; windows up to zWindow() are certified
  const Subshift& z() const;
  std::size_t zWindow() const;
  const SuspensionFlow& zFlow() const;
  // section of the source flow whose returns are the Z steps
  const CrossSection& section() const;

  const QuadraticReal& p() const;
  const QuadraticReal& q() const;
  const QuadraticReal& delta() const;
  std::size_t M() const;
  std::size_t K() const;
  Word markingPattern() const;  // dep: 0^{M+K} 1 0^K 1
  std::size_t separationUsed() const;

  // source flow point -> Z flow point, exact
  FlowPoint encode(const FlowPoint& y) const;
  // Z flow point -> source flow point, exact
  FlowPoint decode(const FlowPoint& z) const;

  // "p", "q", "remainder" (dex), "q+remainder" (dep), "step" (bog)
  std::string stepClass(const QuadraticReal& value) const;
  std::string describe() const;
  const std::shared_ptr<const RecodeCore>& core() const { return core_; }

 private:
  std::shared_ptr<const RecodeCore> core_;
};

RecodedFlow recodeDex(const SuspensionFlow& f, const QuadraticReal& p, const QuadraticReal& q, const Rational& epsilon,
                      const QuadraticReal& delta, const RecodeOptions& opt = {});

RecodedFlow recodeDep(const SuspensionFlow& f, const QuadraticReal& p, const QuadraticReal& q, std::size_t m,
                      const QuadraticReal& delta, const RecodeOptions& opt = {});

struct BogResult {
  RecodedFlow flow;
  Rational target;  // a
  std::size_t N = 0;
  unsigned long A = 0;  // steps A/N and (A+1)/N
  std::size_t itineraryLength = 0;
  double itineraryEntropy = 0;  // (1/m) log |L_m| of the piece itineraries
};

// target overrides a = log 2 / hTop + epsilon (needed when hTop = 0)
BogResult recodeBog(const SuspensionFlow& f, const Rational& epsilon, double hTop,
                    std::optional<Rational> target = std::nullopt, const RecodeOptions& opt = {},
                    std::size_t itineraryLength = 14);

// longest gap between pattern occurrences over the Z corpus, edges included;
// every Z-window of length >= this contains the pattern
std::size_t patternSyndeticity(const RecodedFlow& r, const Word& pattern);

}  // namespace symflow
