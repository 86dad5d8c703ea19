#pragma once
// Independent brute-force reference computations used as test oracles.

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using W = std::vector<std::uint16_t>;

inline bool hasFactor(const W& w, const W& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < f.size() && ok; ++j) ok = w[i + j] == f[j];
    if (ok) return true;
  }
  return false;
}

// all words over the alphabet of length n avoiding the forbidden factors
inline std::vector<W> bruteSftWords(std::size_t k, std::size_t n, const std::vector<W>& forbidden) {
  std::vector<W> out;
  W w(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& f : forbidden) ok = ok && !hasFactor(w, f);
    if (ok) out.push_back(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < k) break;
      w[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

// Sturmian factors by dense phase sampling in floating point.
inline std::set<W> sampledSturmian(double alpha, std::size_t n, std::size_t samples) {
  std::set<W> out;
  for (std::size_t s = 0; s < samples; ++s) {
    double theta = (static_cast<double>(s) + 0.5) / static_cast<double>(samples);
    W w;
    for (std::size_t i = 0; i < n; ++i) {
      double y = theta + static_cast<double>(i) * alpha;
      double f = y - std::floor(y);
      w.push_back(f < alpha ? 1 : 0);
    }
    out.insert(w);
  }
  return out;
}

inline std::uint64_t lucas(unsigned n) {
  std::uint64_t a = 2, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline std::uint64_t fibonacci(unsigned n) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

using Mat = std::vector<std::vector<std::uint64_t>>;

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.size(), std::vector<std::uint64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat matpow(Mat a, unsigned n) {
  Mat r(a.size(), std::vector<std::uint64_t>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i][i] = 1;
  for (unsigned i = 0; i < n; ++i) r = matmul(r, a);
  return r;
}

inline std::uint64_t trace(const Mat& a) {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline std::uint64_t entrySum(const Mat& a) {
  std::uint64_t t = 0;
  for (const auto& r : a)
    for (auto v : r) t += v;
  return t;
}

inline double binaryEntropy(double p) { return -(p * std::log(p) + (1 - p) * std::log(1 - p)); }

}  // namespace oracle
