#include "bdmp/segments.hpp"

#include <stdexcept>

namespace bdmp {

std::pair<Matrix, Matrix> shift_matrices(const Matrix& a, const Matrix& b, std::size_t r) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shift_matrices: shape mismatch");
  if (r >= a.cols()) throw std::out_of_range("shift_matrices: r out of range");
  Matrix ar(a.rows(), a.cols()), br(b.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Value base = a(i, r);
    for (std::size_t k = 0; k < a.cols(); ++k) ar(i, k) = a(i, k) - base;
  }
  for (std::size_t k = 0; k < b.rows(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) br(k, j) = b(k, j) - b(r, j);
  return {std::move(ar), std::move(br)};
}

SegmentTable::SegmentTable(std::size_t blocks, Value width)
    : blocks_(blocks), width_(width), bucket_(blocks * blocks, 0), lines_(blocks) {
  if (width <= 0) throw std::invalid_argument("segment width must be positive");
}

void SegmentTable::insert(std::size_t line, std::size_t member, Value representative) {
  const std::int64_t p = floor_div(representative, width_);
  bucket_[line * blocks_ + member] = p;
  lines_[line][p].push_back(static_cast<std::uint32_t>(member));
}

std::span<const std::uint32_t> SegmentTable::segment(std::size_t line, std::int64_t p) const {
  const auto& m = lines_[line];
  auto it = m.find(p);
  if (it == m.end()) return {};
  return it->second;
}

std::size_t SegmentTable::segment_count() const noexcept {
  std::size_t total = 0;
  for (const auto& m : lines_) total += m.size();
  return total;
}

Segmentation build_segments(const Matrix& a_r, const Matrix& b_r, std::size_t l,
                            Value delta) {
  const BlockGrid grid(a_r.rows(), l);
  const std::size_t nb = grid.blocks();
  const Value w = segment_width(delta, l);
  Segmentation seg{grid, delta, SegmentTable(nb, w), SegmentTable(nb, w)};
  // Members are inserted in ascending order, so every segment list is sorted.
  for (std::size_t bk = 0; bk < nb; ++bk)
    for (std::size_t bi = 0; bi < nb; ++bi)
      seg.a.insert(bk, bi, a_r(grid.representative(bi), grid.representative(bk)));
  for (std::size_t bk = 0; bk < nb; ++bk)
    for (std::size_t bj = 0; bj < nb; ++bj)
      seg.b.insert(bk, bj, b_r(grid.representative(bk), grid.representative(bj)));
  return seg;
}

}  // namespace bdmp
