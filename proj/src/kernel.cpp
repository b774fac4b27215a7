#include "bdmp/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace bdmp {

namespace {
constexpr std::size_t kTileRows = 64;
constexpr std::size_t kTileInner = 128;
constexpr std::size_t kTileCols = 256;
}  // namespace

void gemm_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> c, std::size_t m, std::size_t k,
                     std::size_t n) {
  if (a.size() != m * k || b.size() != k * n || c.size() != m * n)
    throw std::invalid_argument("gemm_accumulate: span sizes do not match shape");
  for (std::size_t i0 = 0; i0 < m; i0 += kTileRows) {
    const std::size_t i1 = std::min(m, i0 + kTileRows);
    for (std::size_t p0 = 0; p0 < k; p0 += kTileInner) {
      const std::size_t p1 = std::min(k, p0 + kTileInner);
      for (std::size_t j0 = 0; j0 < n; j0 += kTileCols) {
        const std::size_t j1 = std::min(n, j0 + kTileCols);
        for (std::size_t i = i0; i < i1; ++i) {
          std::uint64_t* crow = c.data() + i * n;
          for (std::size_t p = p0; p < p1; ++p) {
            const std::uint64_t av = a[i * k + p];
            if (av == 0) continue;
            const std::uint64_t* brow = b.data() + p * n;
            for (std::size_t j = j0; j < j1; ++j) crow[j] += av * brow[j];
          }
        }
      }
    }
  }
}

}  // namespace bdmp
