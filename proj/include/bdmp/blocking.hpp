#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bdmp/matrix.hpp"

namespace bdmp {

struct BlockPair {
  std::uint32_t bi = 0;
  std::uint32_t bj = 0;
  auto operator<=>(const BlockPair&) const = default;
};

/// Partition of [0, n) into intervals of length l. Block b covers
/// [b*l, (b+1)*l) and its representative index is b*l.
class BlockGrid {
 public:
  BlockGrid(std::size_t n, std::size_t l);

  std::size_t n() const noexcept { return n_; }
  std::size_t l() const noexcept { return l_; }
  std::size_t blocks() const noexcept { return n_ / l_; }
  std::size_t block_of(std::size_t index) const noexcept { return index / l_; }
  std::size_t representative(std::size_t block) const noexcept { return block * l_; }
  std::vector<std::size_t> representatives() const;

  /// 1 - log_n(l); zero for n == 1.
  double alpha_equiv() const noexcept;

  BlockGrid halved() const;

 private:
  std::size_t n_;
  std::size_t l_;
};

/// Candidate block columns for each block pair. Pairs that were not computed
/// (partial refinement) have defined(...) == false.
class CandidateSets {
 public:
  CandidateSets(BlockGrid grid, Value delta);

  const BlockGrid& grid() const noexcept { return grid_; }
  Value delta() const noexcept { return delta_; }

  /// C~ over representatives; kInf where undefined.
  const Matrix& approx() const noexcept { return approx_; }

  bool defined(std::size_t bi, std::size_t bj) const noexcept {
    return defined_[index(bi, bj)] != 0;
  }
  std::span<const std::uint32_t> set(std::size_t bi, std::size_t bj) const noexcept {
    return sets_[index(bi, bj)];
  }
  std::size_t size(std::size_t bi, std::size_t bj) const noexcept {
    return sets_[index(bi, bj)].size();
  }

  /// approx + 8 * delta * l.
  Value threshold(std::size_t bi, std::size_t bj) const noexcept {
    return approx_(bi, bj) + 8 * delta_ * static_cast<Value>(grid_.l());
  }

  void assign(std::size_t bi, std::size_t bj, Value approx,
              std::vector<std::uint32_t> set);

 private:
  std::size_t index(std::size_t bi, std::size_t bj) const noexcept {
    return bi * grid_.blocks() + bj;
  }

  BlockGrid grid_;
  Value delta_;
  Matrix approx_;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<std::uint8_t> defined_;
};

/// Representative min-plus product, an (n/l) x (n/l) matrix.
Matrix approx_matrix(const BDMatrix& a, const BDMatrix& b, std::size_t l);

/// Full enumeration over representative triples.
CandidateSets candidate_sets(const BDMatrix& a, const BDMatrix& b, std::size_t l);

/// Candidate sets at l/2 for every child of every defined parent pair, found
/// by scanning only the children of the parent's candidate blocks.
CandidateSets refine_candidates(const CandidateSets& parent, const BDMatrix& a,
                                const BDMatrix& b);

/// Same, restricted to the children of the listed parent pairs.
CandidateSets refine_candidates(const CandidateSets& parent, const BDMatrix& a,
                                const BDMatrix& b, std::span<const BlockPair> parents);

/// Minimum over candidate blocks of the naive product of the l x l blocks,
/// written into out. Returns the number of block products performed.
std::size_t enumerate_block(const BDMatrix& a, const BDMatrix& b, const BlockGrid& grid,
                            BlockPair pair, std::span<const std::uint32_t> candidates,
                            Matrix& out);

}  // namespace bdmp
