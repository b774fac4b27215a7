#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace bdmp {

/// C += A * B over 64-bit unsigned integers, row-major, A is m x k, B is k x n.
/// Cache-blocked i-k-j loop; zero entries of A are skipped, which makes the
/// 0/1 degree slices of encoded polynomial matrices cheap.
void gemm_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> c, std::size_t m, std::size_t k,
                     std::size_t n);

}  // namespace bdmp
