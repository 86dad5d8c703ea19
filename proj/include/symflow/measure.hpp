#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symflow/point.hpp"
#include "symflow/quadratic.hpp"
#include "symflow/subshift.hpp"
#include "symflow/word.hpp"

namespace symflow {

// Shift-invariant probability measure on A^Z, evaluated on cylinders.
class Measure {
 public:
  virtual ~Measure() = default;
  virtual std::size_t alphabetSize() const = 0;
  virtual double mass(const Word& w) const = 0;
  virtual std::optional<QuadraticReal> exactMass(const Word&) const { return std::nullopt; }
  // words of length n with positive mass, sorted
  virtual std::vector<std::pair<Word, double>> blockDistribution(std::size_t n) const;
  // longest block length the measure can evaluate
  virtual std::size_t maxBlock() const { return SIZE_MAX; }
  // Shannon entropy of the n-block distribution (not normalized)
  virtual double blockShannon(std::size_t n) const;
  virtual std::string describe() const = 0;

  // shift invariance: the anchor is irrelevant
  double cylinderMass(const Cylinder& c) const { return mass(c.word); }
};

using MeasurePtr = std::shared_ptr<const Measure>;

class MarkovMeasure final : public Measure {
 public:
  using RationalMatrix = std::vector<std::vector<Rational>>;

  // pi is solved exactly when omitted; support, when given, must be a memory-1 SFT
  static std::shared_ptr<const MarkovMeasure> fromRational(RationalMatrix p,
                                                           std::optional<std::vector<Rational>> pi = std::nullopt,
                                                           const Subshift* support = nullptr);
  static std::shared_ptr<const MarkovMeasure> bernoulli(const std::vector<Rational>& probs);
  // maximal-entropy measure of a memory-1 SFT; irrational, held in doubles
  static std::shared_ptr<const MarkovMeasure> parry(const Subshift& sft);

  std::size_t alphabetSize() const override { return p_.size(); }
  double mass(const Word& w) const override;
  std::optional<QuadraticReal> exactMass(const Word& w) const override;
  std::vector<std::pair<Word, double>> blockDistribution(std::size_t n) const override;
  double blockShannon(std::size_t n) const override;
  std::string describe() const override;

  bool isExact() const { return exact_; }
  double transition(std::size_t i, std::size_t j) const { return p_[i][j]; }
  double stationary(std::size_t i) const { return pi_[i]; }
  const std::vector<std::vector<double>>& transitions() const { return p_; }
  const std::vector<double>& stationaryVector() const { return pi_; }
  const RationalMatrix& exactTransitions() const { return pq_; }
  const std::vector<Rational>& exactStationary() const { return piq_; }
  // exact check that pi P = pi and rows are stochastic
  bool verifyInvariance() const;

  MarkovMeasure(std::vector<std::vector<double>> p, std::vector<double> pi, RationalMatrix pq, std::vector<Rational> piq,
                bool exact, std::string label);

 private:
  std::vector<std::vector<double>> p_;
  std::vector<double> pi_;
  RationalMatrix pq_;
  std::vector<Rational> piq_;
  bool exact_;
  std::string label_;
};

// Block frequencies of a periodic orbit (exact) or of a finite orbit segment.
class EmpiricalMeasure final : public Measure {
 public:
  static std::shared_ptr<const EmpiricalMeasure> periodic(const Word& period, std::size_t alphabet);
  static std::shared_ptr<const EmpiricalMeasure> fromSegment(const PointOracle& x, std::int64_t start, std::size_t length,
                                                             std::size_t maxBlock, std::size_t alphabet);

  std::size_t alphabetSize() const override { return alphabet_; }
  double mass(const Word& w) const override;
  std::optional<QuadraticReal> exactMass(const Word& w) const override;
  std::vector<std::pair<Word, double>> blockDistribution(std::size_t n) const override;
  std::size_t maxBlock() const override { return maxBlock_; }
  std::string describe() const override;

  bool isPeriodic() const { return periodic_; }
  const Word& data() const { return data_; }
  std::size_t sourceLength() const { return data_.size(); }
  Rational frequency(const Word& w) const;

  EmpiricalMeasure(Word data, bool periodic, std::size_t maxBlock, std::size_t alphabet);

 private:
  Word data_;
  bool periodic_;
  std::size_t maxBlock_;
  std::size_t alphabet_;
};

// Unique invariant measure of a Sturmian subshift; masses are interval lengths.
class SturmianMeasure final : public Measure {
 public:
  explicit SturmianMeasure(SturmianCoder coder);
  std::size_t alphabetSize() const override { return 2; }
  double mass(const Word& w) const override { return exactMassOrZero(w).toDouble(); }
  std::optional<QuadraticReal> exactMass(const Word& w) const override { return exactMassOrZero(w); }
  std::vector<std::pair<Word, double>> blockDistribution(std::size_t n) const override;
  std::string describe() const override;

 private:
  QuadraticReal exactMassOrZero(const Word& w) const;
  SturmianCoder coder_;
};

class MixtureMeasure final : public Measure {
 public:
  MixtureMeasure(std::vector<Rational> weights, std::vector<MeasurePtr> parts);
  std::size_t alphabetSize() const override { return parts_.front()->alphabetSize(); }
  double mass(const Word& w) const override;
  std::optional<QuadraticReal> exactMass(const Word& w) const override;
  std::size_t maxBlock() const override;
  std::string describe() const override;

 private:
  std::vector<Rational> weights_;
  std::vector<MeasurePtr> parts_;
};

double entropyRate(const MarkovMeasure& m);
// (1/n) H(n-blocks)
double blockEntropy(const Measure& m, std::size_t n);

struct BlockEntropyRow {
  std::size_t n;
  double h;          // H_n
  double perSymbol;  // H_n / n
  double increment;  // H_n - H_{n-1}
};
std::vector<BlockEntropyRow> blockEntropyTable(const Measure& m, std::size_t maxN);

// Function of the window x[0, length), given by a table on words.
struct LocallyConstant {
  std::size_t length = 1;
  std::map<Word, QuadraticReal> table;
};

struct Integral {
  double value = 0;
  std::optional<QuadraticReal> exact;
};

Integral integrateLocallyConstant(const LocallyConstant& f, const Measure& m);

// f_1, f_2, ... are cylinder indicators in length-lexicographic order.
struct DMetricConfig {
  std::size_t terms = 16;
};

Word dFamilyWord(std::size_t alphabet, std::size_t index);  // index >= 1

struct DDistance {
  double value = 0;
  double truncationBound = 0;  // 2^{1-N}
};

DDistance dDistance(const Measure& mu, const Measure& nu, const DMetricConfig& config);

// Forward sample x[0, length) of the stationary chain; HorizonExceeded outside.
PointOracle sampleMarkovSegment(const MarkovMeasure& m, std::size_t length, std::uint64_t seed, std::int64_t origin = 0);

}  // namespace symflow
