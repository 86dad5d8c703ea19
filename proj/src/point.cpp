#include "symflow/point.hpp"

#include <numeric>

#include "symflow/error.hpp"

namespace symflow {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

std::int64_t floorMod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

class PeriodicPoint final : public PointImpl {
 public:
  explicit PeriodicPoint(Word u) : u_(std::move(u)) {
    if (u_.empty()) fail(ErrorCode::InvalidArgument, "periodic point needs a nonempty word");
    least_ = primitivePeriod(u_);
  }
  Word window(std::int64_t from, std::int64_t to) const override {
    Word w;
    w.reserve(static_cast<std::size_t>(to - from));
    const auto n = static_cast<std::int64_t>(u_.size());
    for (std::int64_t i = from; i < to; ++i) w.push_back(u_[static_cast<std::size_t>(floorMod(i, n))]);
    return w;
  }
  std::size_t period() const override { return least_; }
  std::string describe() const override { return "(" + to_string(slice(u_, 0, least_)) + ")^inf"; }

 private:
  Word u_;
  std::size_t least_;
};

class SturmianPoint final : public PointImpl {
 public:
  SturmianPoint(SturmianCoder coder, QuadraticReal phase) : coder_(std::move(coder)), phase_(std::move(phase)) {}
  Word window(std::int64_t from, std::int64_t to) const override { return coder_.word(phase_, from, to); }
  std::string describe() const override {
    return "sturmian(alpha=" + to_string(coder_.alpha()) + ",phase=" + to_string(phase_) + ")";
  }

 private:
  SturmianCoder coder_;
  QuadraticReal phase_;
};

class IidPoint final : public PointImpl {
 public:
  IidPoint(std::vector<double> probs, std::uint64_t seed) : seed_(seed) {
    double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (probs.empty() || total <= 0) fail(ErrorCode::InvalidArgument, "iid point needs positive weights");
    double acc = 0;
    for (double p : probs) {
      acc += p / total;
      cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
  }
  Word window(std::int64_t from, std::int64_t to) const override {
    Word w;
    w.reserve(static_cast<std::size_t>(to - from));
    for (std::int64_t i = from; i < to; ++i) {
      std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(i)));
      double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      Symbol s = 0;
      while (u >= cumulative_[s]) ++s;
      w.push_back(s);
    }
    return w;
  }
  std::string describe() const override { return "iid(seed=" + std::to_string(seed_) + ")"; }

 private:
  std::vector<double> cumulative_;
  std::uint64_t seed_;
};

class SegmentPoint final : public PointImpl {
 public:
  SegmentPoint(Word data, std::int64_t origin) : data_(std::move(data)), origin_(origin) {}
  Word window(std::int64_t from, std::int64_t to) const override {
    if (from + origin_ < 0 || to + origin_ > static_cast<std::int64_t>(data_.size()))
      fail(ErrorCode::HorizonExceeded, "window [" + std::to_string(from) + "," + std::to_string(to) +
                                           ") outside the sampled segment");
    return Word(data_.begin() + (from + origin_), data_.begin() + (to + origin_));
  }
  std::string describe() const override { return "segment(len=" + std::to_string(data_.size()) + ")"; }

 private:
  Word data_;
  std::int64_t origin_;
};

}  // namespace

PointOracle::PointOracle(std::shared_ptr<const PointImpl> impl, std::int64_t offset)
    : impl_(std::move(impl)), offset_(offset) {
  if (impl_ && impl_->period() > 0) offset_ = floorMod(offset_, static_cast<std::int64_t>(impl_->period()));
}

PointOracle PointOracle::periodic(const Word& u) { return PointOracle(std::make_shared<PeriodicPoint>(u)); }

PointOracle PointOracle::sturmian(const SturmianCoder& coder, const QuadraticReal& phase) {
  return PointOracle(std::make_shared<SturmianPoint>(coder, phase));
}

PointOracle PointOracle::iid(std::vector<double> probs, std::uint64_t seed) {
  return PointOracle(std::make_shared<IidPoint>(std::move(probs), seed));
}

PointOracle PointOracle::segment(Word data, std::int64_t origin) {
  return PointOracle(std::make_shared<SegmentPoint>(std::move(data), origin));
}

Word PointOracle::window(std::int64_t from, std::int64_t to) const {
  if (!impl_) fail(ErrorCode::InvalidArgument, "empty point oracle");
  if (to < from) fail(ErrorCode::InvalidArgument, "reversed window");
  return impl_->window(from + offset_, to + offset_);
}

Symbol PointOracle::at(std::int64_t i) const { return window(i, i + 1)[0]; }

PointOracle PointOracle::shifted(std::int64_t k) const { return PointOracle(impl_, offset_ + k); }

bool PointOracle::samePoint(const PointOracle& other) const {
  return impl_ == other.impl_ && offset_ == other.offset_;
}

std::string PointOracle::describe() const {
  if (!impl_) return "<none>";
  return impl_->describe() + "@" + std::to_string(offset_);
}

}  // namespace symflow
