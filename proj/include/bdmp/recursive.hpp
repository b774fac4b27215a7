#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bdmp/blocking.hpp"
#include "bdmp/counters.hpp"
#include "bdmp/matrix.hpp"
#include "bdmp/params.hpp"
#include "bdmp/random.hpp"
#include "bdmp/segments.hpp"
#include "bdmp/slots.hpp"

namespace bdmp {

/// Surviving block pairs at one block length, split at T_beta.
struct LevelState {
  BlockGrid grid;
  double theta_equiv = 0.0;  // 1 - log_n(l)
  double gamma_l = 0.0;      // theta + omega / 3 - 1
  std::vector<BlockPair> active;   // |K_l| > T_beta, sampled at this level
  std::vector<BlockPair> pending;  // refined to l / 2, or enumerated at l == 1
};

/// Levels with fewer than this many blocks per side never sample.
inline constexpr std::size_t kMinActiveBlocks = 4;

/// pairs must be defined in k. active is empty when n / l < kMinActiveBlocks.
LevelState partition_level(const CandidateSets& k, std::span<const BlockPair> pairs,
                           std::size_t t_beta, double omega);

/// One level of a slot tree: the layout plus its full collision list.
struct SlotLevel {
  SlotLayout layout;
  std::vector<Collision> collisions;
  // Child slots owned by each slot of this level, filled when a finer level
  // is allocated below it.
  std::vector<std::array<std::uint32_t, 4>> child_slots;
};

/// levels.front() is the top block length, levels.back() the target.
struct SlotTree {
  std::vector<SlotLevel> levels;
};

/// Every A segment of the relation with its partner, which may be empty.
std::vector<PlacedSegment> top_segments(const Segmentation& seg, int relation);

/// Splits every item of `parent` into the child blocks at half the block
/// length, grouped by (child line, child bucket). B partners come from the
/// child segmentation and are not split by parent.
std::vector<PlacedSegment> sub_segments(const SlotLayout& parent, const Segmentation& child,
                                        int relation);

/// Gives every parent slot 4 disjoint child slots (a random permutation of
/// 4 * parent.slot_count) and places each sub-segment uniformly among its
/// parent slot's children. Throws std::logic_error on a missing parent.
SlotLayout allocate_recursive(const SlotLayout& parent, std::vector<PlacedSegment> subs,
                              Rng& rng,
                              std::vector<std::array<std::uint32_t, 4>>* child_slots = nullptr);

/// Level collisions derived from the parent level: children of a parent
/// collision or of one parent item that share a slot and are distinct.
/// checks counts the child pairs examined.
std::vector<Collision> collisions_incremental(const SlotLayout& parent,
                                              std::span<const Collision> parent_collisions,
                                              const SlotLayout& child,
                                              std::uint64_t* checks = nullptr);

/// Slot tree for one (r, relation) from l_top down to l_target, with
/// exhaustive collisions at the top and incremental ones below.
SlotTree build_slot_chain(const Matrix& a_r, const Matrix& b_r, Value delta, std::size_t l_top,
                          std::size_t l_target, int relation, std::size_t top_slots,
                          Rng& top_rng, Rng& child_rng, std::uint64_t* checks = nullptr);

/// C[i][j] = min over k in K_1(i, j) of a[i][k] + b[k][j] for every pending
/// pair; returns the number of terms evaluated.
std::size_t finish_tail(std::span<const BlockPair> pending, const CandidateSets& k1,
                        const BDMatrix& a, const BDMatrix& b, Matrix& out);

struct LevelSummary {
  std::size_t l = 0;
  std::size_t active = 0;
  std::size_t pending = 0;
  std::size_t samples = 0;
  std::size_t unassigned = 0;
  std::size_t top_slots = 0;
  std::size_t target_slots = 0;
};

/// Exact min-plus product through level-by-level refinement. Every output
/// entry is finalized exactly once; a coverage bitmap enforces this.
Matrix recursive_minplus(const BDMatrix& a, const BDMatrix& b, const AlgoParams& params,
                         RunStats* stats = nullptr,
                         std::vector<LevelSummary>* levels = nullptr);

}  // namespace bdmp
