#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bdmp {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and a key path,
/// e.g. {phase, level, r, relation}. Same inputs, same stream.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(std::uint64_t master,
                    std::initializer_list<std::uint64_t> keys) {
  return Rng{derive_seed(master, keys)};
}

// Phase tags for derive_seed.
enum class Phase : std::uint64_t {
  kSample = 1,
  kAllocate = 2,
  kChildSlots = 3,
};

}  // namespace bdmp
