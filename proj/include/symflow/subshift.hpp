#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symflow/point.hpp"
#include "symflow/quadratic.hpp"
#include "symflow/sturmian.hpp"
#include "symflow/word.hpp"

namespace symflow {

enum class SubshiftKind { Sft, Sturmian, Generated, Product };

struct EntropyValue {
  double value = 0;
  bool exact = false;
  std::size_t horizon = 0;  // 0 when exact
};

class SubshiftImpl {
 public:
  virtual ~SubshiftImpl() = default;
  virtual SubshiftKind kind() const = 0;
  virtual std::size_t alphabetSize() const = 0;
  virtual bool admissible(const Word& w) const = 0;
  // sorted lexicographically
  virtual std::vector<Word> language(std::size_t n) const = 0;
  virtual Integer languageSize(std::size_t n) const { return Integer(static_cast<unsigned long>(language(n).size())); }
  virtual EntropyValue entropy(std::size_t horizon) const;
  // a value known to dominate the topological entropy
  virtual double entropyUpperBound() const;
  // x[0, n) for every x with sigma^n x = x
  virtual std::vector<Word> periodicWords(std::size_t n) const = 0;
  virtual std::optional<std::size_t> certifiedWindow() const { return std::nullopt; }
  virtual std::string describe() const = 0;
};

// Compiled vertex-shift presentation of an SFT: state i is an admissible word
// of length memory, edges follow one-symbol overlaps. Only essential states are kept.
struct SftGraph {
  std::size_t alphabet = 0;
  std::size_t memory = 1;
  std::vector<Word> states;
  std::vector<std::vector<std::size_t>> successors;
};

class Subshift {
 public:
  Subshift() = default;
  explicit Subshift(std::shared_ptr<const SubshiftImpl> impl) : impl_(std::move(impl)) {}

  static Subshift fullShift(std::size_t k);
  static Subshift goldenMean();
  static Subshift sftFromAdjacency(const std::vector<std::vector<int>>& adjacency);
  static Subshift sftFromForbidden(std::size_t alphabet, const std::vector<Word>& forbidden);
  static Subshift sturmian(const QuadraticReal& alpha, SturmianConvention c = SturmianConvention::LeftClosed);
  static Subshift generated(std::size_t alphabet, std::vector<Word> corpus, std::size_t window);
  static Subshift product(const Subshift& left, const Subshift& right);

  bool valid() const { return impl_ != nullptr; }
  SubshiftKind kind() const { return impl_->kind(); }
  std::size_t alphabetSize() const { return impl_->alphabetSize(); }
  bool admissible(const Word& w) const;
  std::vector<Word> language(std::size_t n) const;
  Integer languageSize(std::size_t n) const;
  // exact for SFTs, (1/horizon) log |L_horizon| otherwise
  EntropyValue topologicalEntropy(std::size_t horizon = 20) const;
  double entropyUpperBound() const { return impl_->entropyUpperBound(); }
  std::vector<PointOracle> periodicPoints(std::size_t n) const;
  std::vector<Word> periodicWords(std::size_t n) const;
  std::optional<std::size_t> certifiedWindow() const { return impl_->certifiedWindow(); }
  std::string describe() const { return impl_->describe(); }

  const SftGraph* sftGraph() const;
  const SturmianCoder* sturmianCoder() const;
  const std::vector<Word>* generatedCorpus() const;
  std::pair<Subshift, Subshift> productFactors() const;
  const std::shared_ptr<const SubshiftImpl>& impl() const { return impl_; }

 private:
  std::shared_ptr<const SubshiftImpl> impl_;
};

// Largest-modulus eigenvalue of a nonnegative square matrix.
double perronRoot(const std::vector<std::vector<double>>& m);

}  // namespace symflow
