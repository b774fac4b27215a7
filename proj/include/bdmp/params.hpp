#pragma once

#include <cstddef>
#include <cstdint>

namespace bdmp {

struct AlgoParams {
  double alpha = 0.9;
  double beta = 0.6;
  double gamma = 0.6;
  std::uint32_t c0 = 3;
  std::uint64_t seed = 0;
  // Exponent assumed for the rectangular kernel when deriving per-level slot
  // exponents in the recursive algorithm. The kernel here is cubic.
  double omega = 3.0;

  static AlgoParams basic_defaults() { return {}; }
  static AlgoParams recursive_defaults() { return {0.5, 0.6, 0.6, 3, 0, 3.0}; }
  /// alpha = beta = omega / 3, clamped into (0, 1].
  static AlgoParams recursive_exponents(double omega);

  /// Throws std::invalid_argument on out-of-range exponents or c0 == 0.
  void validate() const;
};

/// 2^round((1 - alpha) * log2 n), clamped to [1, n].
std::size_t block_length_for(std::size_t n, double alpha);

/// ceil(n^e), tolerant of floating error at exact powers; n == 1 gives 1.
std::size_t ceil_power(std::size_t n, double e);

/// ceil(c0 * log2(n) * n^(theta - beta)).
std::size_t sample_count(std::size_t n, double theta, double beta, std::uint32_t c0);

}  // namespace bdmp
