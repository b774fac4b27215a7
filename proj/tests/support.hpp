#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bdmp/matrix.hpp"

namespace bdmp::testing {

// Reference product written independently of the library: plain triple loop
// with explicit INF handling.
inline Matrix oracle_minplus(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols(), kInf);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Value best = kInf;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == kInf || b(k, j) == kInf) continue;
        best = std::min(best, a(i, k) + b(k, j));
      }
      c(i, j) = best;
    }
  return c;
}

// Smallest k attaining C[i][j]; a.cols() when the entry is INF.
inline std::size_t oracle_argmin(const Matrix& a, const Matrix& b, std::size_t i,
                                 std::size_t j) {
  std::size_t arg = a.cols();
  Value best = kInf;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (a(i, k) == kInf || b(k, j) == kInf) continue;
    if (a(i, k) + b(k, j) < best) {
      best = a(i, k) + b(k, j);
      arg = k;
    }
  }
  return arg;
}

// Entries uniform in [-m, m]; each entry INF with probability inf_rate.
inline Matrix random_small(std::size_t rows, std::size_t cols, Value m, double inf_rate,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<Value> v(-m, m);
  std::bernoulli_distribution inf(inf_rate);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = inf(rng) ? kInf : v(rng);
  return out;
}

inline bool adjacent_bounded(const Matrix& m, Value delta) {
  auto gap = [](Value x, Value y) { return x > y ? x - y : y - x; };
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j + 1 < m.cols() && gap(m(i, j), m(i, j + 1)) >= delta) return false;
      if (i + 1 < m.rows() && gap(m(i, j), m(i + 1, j)) >= delta) return false;
    }
  return true;
}

// FNV-1a over the entries, for frozen fingerprints.
inline std::uint64_t fingerprint(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Value v : m.data()) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace bdmp::testing
