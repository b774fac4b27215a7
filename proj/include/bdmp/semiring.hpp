#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bdmp/matrix.hpp"

namespace bdmp {

/// C[i][j] = min_k a[i][k] + b[k][j] with saturating addition.
Matrix minplus_naive(const Matrix& a, const Matrix& b);

/// Rectangular matrix of polynomials sum_d coeff[d] x^d, 0 <= d <= degree_bound.
/// The zero polynomial stands for +inf.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t degree_bound);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t degree_bound() const noexcept { return degree_bound_; }

  std::span<std::uint64_t> cell(std::size_t r, std::size_t c) noexcept {
    return {coeffs_.data() + (r * cols_ + c) * stride(), stride()};
  }
  std::span<const std::uint64_t> cell(std::size_t r, std::size_t c) const noexcept {
    return {coeffs_.data() + (r * cols_ + c) * stride(), stride()};
  }

  bool operator==(const PolyMatrix&) const = default;

 private:
  std::size_t stride() const noexcept { return degree_bound_ + 1; }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t degree_bound_;
  std::vector<std::uint64_t> coeffs_;
};

/// Finite v becomes x^(v + m_bound); inf becomes the zero polynomial.
/// Throws std::out_of_range for finite entries outside [-m_bound, m_bound].
PolyMatrix encode_poly(const Matrix& a, Value m_bound);

/// Exact product. Each degree of the result is accumulated from 0/1 (or
/// general coefficient) degree slices through gemm_accumulate, in ascending
/// degree order.
PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b);

/// Lowest degree with a nonzero coefficient minus m_total; inf for zero cells.
Matrix extract_min(const PolyMatrix& c, Value m_total);

/// Min-plus product for matrices whose finite entries lie in [-m_bound, m_bound].
Matrix minplus_small_entries(const Matrix& a, const Matrix& b, Value m_bound);

/// Largest |v| over finite entries, 0 if none.
Value max_abs_finite(const Matrix& m);

}  // namespace bdmp
