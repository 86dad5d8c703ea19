#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symflow/quadratic.hpp"
#include "symflow/sturmian.hpp"
#include "symflow/word.hpp"

namespace symflow {

// A bi-infinite sequence given by a rule for its finite windows.
class PointImpl {
 public:
  virtual ~PointImpl() = default;
  // x[from, to)
  virtual Word window(std::int64_t from, std::int64_t to) const = 0;
  // Least period for periodic points, 0 otherwise.
  virtual std::size_t period() const { return 0; }
  virtual std::string describe() const = 0;
};

class PointOracle {
 public:
  PointOracle() = default;
  explicit PointOracle(std::shared_ptr<const PointImpl> impl, std::int64_t offset = 0);

  // u^infinity with x[0, |u|) = u
  static PointOracle periodic(const Word& u);
  static PointOracle sturmian(const SturmianCoder& coder, const QuadraticReal& phase);
  // i.i.d. symbols drawn from probs by hashing (seed, coordinate); random access
  static PointOracle iid(std::vector<double> probs, std::uint64_t seed);
  // finite data with x_i = data[i + origin]; HorizonExceeded outside
  static PointOracle segment(Word data, std::int64_t origin);

  bool valid() const { return impl_ != nullptr; }
  Word window(std::int64_t from, std::int64_t to) const;
  Symbol at(std::int64_t i) const;
  // (shifted(k))_i = x_{i+k}
  PointOracle shifted(std::int64_t k) const;
  bool samePoint(const PointOracle& other) const;

  std::int64_t offset() const { return offset_; }
  const std::shared_ptr<const PointImpl>& impl() const { return impl_; }
  std::size_t period() const { return impl_ ? impl_->period() : 0; }
  std::string describe() const;

 private:
  std::shared_ptr<const PointImpl> impl_;
  std::int64_t offset_ = 0;
};

// {x : x[anchor, anchor + |word|) = word}
struct Cylinder {
  std::int64_t anchor = 0;
  Word word;

  bool contains(const PointOracle& x) const {
    return x.window(anchor, anchor + static_cast<std::int64_t>(word.size())) == word;
  }
  friend bool operator==(const Cylinder& a, const Cylinder& b) { return a.anchor == b.anchor && a.word == b.word; }
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace symflow
