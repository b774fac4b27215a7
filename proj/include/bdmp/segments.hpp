#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bdmp/blocking.hpp"
#include "bdmp/matrix.hpp"

namespace bdmp {

/// Column reduction: a_r[i][k] = a[i][k] - a[i][r], b_r[k][j] = b[k][j] - b[r][j].
std::pair<Matrix, Matrix> shift_matrices(const Matrix& a, const Matrix& b, std::size_t r);

constexpr Value floor_div(Value x, Value w) noexcept {
  const Value q = x / w;
  return (x % w != 0 && (x < 0) != (w < 0)) ? q - 1 : q;
}

/// Bucket width 20 * delta * l.
constexpr Value segment_width(Value delta, std::size_t l) noexcept {
  return 20 * delta * static_cast<Value>(l);
}

/// Encoding bound used for centred segment pairs. Representatives of a
/// segment span one bucket width, but the other entries of its blocks can
/// sit up to 3 * (delta - 1) * (l - 1) away from their representative on
/// either side, so a shared offset only fits both sides within
/// [-(w + 3 * delta * l), w + 3 * delta * l].
constexpr Value encoding_bound(Value delta, std::size_t l) noexcept {
  return segment_width(delta, l) + 3 * delta * static_cast<Value>(l);
}

/// The three pairings: A-bucket p corresponds to B-bucket -p + relation.
inline constexpr std::array<int, 3> kRelations{-2, -1, 0};

constexpr std::int64_t partner_bucket(std::int64_t p, int relation) noexcept {
  return -p + relation;
}

/// Floor-bucketed segments along one side. For the A side a line is a block
/// column and the members are block rows; for the B side a line is a block
/// row and the members are block columns.
class SegmentTable {
 public:
  SegmentTable() = default;
  SegmentTable(std::size_t blocks, Value width);

  std::size_t blocks() const noexcept { return blocks_; }
  Value width() const noexcept { return width_; }

  void insert(std::size_t line, std::size_t member, Value representative);

  std::int64_t bucket(std::size_t line, std::size_t member) const noexcept {
    return bucket_[line * blocks_ + member];
  }
  const std::map<std::int64_t, std::vector<std::uint32_t>>& line(std::size_t l) const {
    return lines_[l];
  }
  std::span<const std::uint32_t> segment(std::size_t line, std::int64_t p) const;

  std::size_t segment_count() const noexcept;

 private:
  std::size_t blocks_ = 0;
  Value width_ = 1;
  std::vector<std::int64_t> bucket_;
  std::vector<std::map<std::int64_t, std::vector<std::uint32_t>>> lines_;
};

struct Segmentation {
  BlockGrid grid;
  Value delta;
  SegmentTable a;
  SegmentTable b;
};

/// Buckets every representative of a_r (per block column) and b_r (per block
/// row) with width 20 * delta * l.
Segmentation build_segments(const Matrix& a_r, const Matrix& b_r, std::size_t l,
                            Value delta);

}  // namespace bdmp
