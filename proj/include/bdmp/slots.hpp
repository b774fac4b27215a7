#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bdmp/blocking.hpp"
#include "bdmp/counters.hpp"
#include "bdmp/matrix.hpp"
#include "bdmp/random.hpp"
#include "bdmp/segments.hpp"

namespace bdmp {

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

/// An A-side segment together with the B-side segment it corresponds to,
/// placed in one block column ("slot") of the rectangular extension A_F.
/// The B partner occupies the matching block row of B_F.
struct PlacedSegment {
  std::uint32_t line = 0;   // block column of A^r, block row of B^r
  std::int64_t bucket = 0;  // A-side bucket
  std::vector<std::uint32_t> a_blocks;  // block rows, sorted
  std::vector<std::uint32_t> b_blocks;  // partner block columns, sorted
  std::uint32_t slot = 0;
  std::uint32_t parent = kNoParent;
  Value offset = 0;  // added to A entries, subtracted from B entries
};

/// A co-located non-corresponding pair: the A side of item a_item meets the
/// B side that belongs to item b_item.
struct Collision {
  std::uint32_t slot = 0;
  std::uint32_t a_item = 0;
  std::uint32_t b_item = 0;
  auto operator<=>(const Collision&) const = default;
};

struct SlotLayout {
  BlockGrid grid;
  std::size_t slot_count = 0;
  std::vector<PlacedSegment> items;
};

/// Segment pairs of one relation, split at the large-segment threshold.
/// Pairs whose B side is empty contribute nothing and are dropped.
struct SegmentPairs {
  std::vector<PlacedSegment> large;
  std::vector<PlacedSegment> small;
};

SegmentPairs pair_segments(const Segmentation& seg, int relation, std::size_t t_gamma);

/// Each item gets its own slot, in order.
SlotLayout separate_layout(const BlockGrid& grid, std::vector<PlacedSegment> items);

/// Uniform independent slot choice per item.
SlotLayout random_layout(const BlockGrid& grid, std::vector<PlacedSegment> items,
                         std::size_t slot_count, Rng& rng);

/// Exhaustive per-slot enumeration of every ordered co-located pair of
/// distinct items. Sorted.
std::vector<Collision> find_collisions(const SlotLayout& layout);

/// s = sum over collisions of |A side of a_item| * |B side of b_item|.
std::uint64_t enumeration_cost(const SlotLayout& layout, std::span<const Collision> collisions);

/// (sum_p |A_p|) (sum_q |B_q|) / slot_count.
double predicted_enumeration_cost(const SlotLayout& layout);

/// Chooses per-item offsets so every entry of the A side (plus offset) and
/// of the B side (minus offset) lies in [-m_bound, m_bound]. Throws
/// std::logic_error when no such offset exists.
void center_offsets(SlotLayout& layout, const Matrix& a_r, const Matrix& b_r, Value m_bound);

struct EvalStats {
  std::uint64_t monomial_ops = 0;
  std::uint64_t collisions_subtracted = 0;
  std::uint64_t cross_pairs = 0;
};

/// Polynomial product of the slot matrices A_F(x) * B_F(x), restricted to the
/// listed output blocks, with every listed collision's block product
/// subtracted coefficientwise before the lowest degree is read off.
/// Entries are encoded as x^(v + m_bound), so each returned l x l block holds
/// min over corresponding pairs of a_r + b_r (offsets cancel), or kInf.
/// Throws std::logic_error on a negative coefficient.
std::vector<Matrix> evaluate_blocks(const Matrix& a_r, const Matrix& b_r,
                                    const SlotLayout& layout,
                                    std::span<const Collision> collisions,
                                    std::span<const BlockPair> needed, Value m_bound,
                                    EvalStats* stats = nullptr);

}  // namespace bdmp
