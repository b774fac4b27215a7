#include "bdmp/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bdmp {

namespace {
constexpr double kPowSlack = 1e-9;

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }
}  // namespace

AlgoParams AlgoParams::recursive_exponents(double omega) {
  AlgoParams p = recursive_defaults();
  const double e = std::clamp(omega / 3.0, 1e-6, 1.0);
  p.alpha = e;
  p.beta = e;
  p.omega = omega;
  return p;
}

void AlgoParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
  if (!in_open_unit(gamma)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (c0 == 0) throw std::invalid_argument("c0 must be positive");
  if (!(omega >= 2.0 && omega <= 3.0)) throw std::invalid_argument("omega must lie in [2, 3]");
}

std::size_t block_length_for(std::size_t n, double alpha) {
  if (n <= 1) return 1;
  const double lg = std::log2(static_cast<double>(n));
  // The slack keeps exact halves (e.g. 0.1 * 5) rounding away from zero.
  const double e = std::round((1.0 - alpha) * lg + kPowSlack);
  const auto shift = static_cast<std::size_t>(std::clamp(e, 0.0, lg));
  return std::size_t{1} << shift;
}

std::size_t ceil_power(std::size_t n, double e) {
  if (n <= 1) return 1;
  const double v = std::pow(static_cast<double>(n), e);
  return static_cast<std::size_t>(std::max(0.0, std::ceil(v - kPowSlack)));
}

std::size_t sample_count(std::size_t n, double theta, double beta, std::uint32_t c0) {
  if (n <= 1) return 0;
  const double v = c0 * std::log2(static_cast<double>(n)) *
                   std::pow(static_cast<double>(n), theta - beta);
  return static_cast<std::size_t>(std::ceil(v - kPowSlack));
}

}  // namespace bdmp
