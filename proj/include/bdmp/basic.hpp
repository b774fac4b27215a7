#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
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

/// Pairs with |K| <= t_beta are finished by enumerating their candidate
/// blocks into out (which must start at kInf on those blocks). Returns the
/// remaining pairs in row-major order.
std::vector<BlockPair> handle_small_candidates(const BDMatrix& a, const BDMatrix& b,
                                               const CandidateSets& k, std::size_t t_beta,
                                               Matrix& out, Counters& counters);

/// Needed blocks per sampled block column (the sets Gamma^r).
struct Sampling {
  std::vector<std::uint32_t> columns;  // R, deduplicated block columns, ascending
  std::map<std::uint32_t, std::vector<BlockPair>> needed;
  std::vector<BlockPair> unassigned;  // R misses K; finished by the fallback
};

/// Draws `draws` block columns uniformly with replacement and assigns every
/// remaining pair to the smallest r in R intersected with its candidate set.
Sampling sample_r(const CandidateSets& k, std::span<const BlockPair> remaining,
                  std::size_t draws, Rng& rng);

// The slot products below return one l x l block per entry of `needed`, in
// the shifted space: min over covered k of a_r[i][k] + b_r[k][j], or kInf.

/// Large segments, one slot each; returns block minima for `needed`.
std::vector<Matrix> process_large_segments(const Segmentation& seg, int relation,
                                           const Matrix& a_r, const Matrix& b_r,
                                           std::size_t t_gamma,
                                           std::span<const BlockPair> needed,
                                           RunStats& stats);

/// Small segments placed uniformly at random into slot_count slots.
SlotLayout process_small_segments(const Segmentation& seg, int relation,
                                  std::size_t t_gamma, std::size_t slot_count, Rng& rng);

/// Restricted product of the small-segment slot matrices minus the listed
/// collisions, read off for `needed`. Centers the layout offsets first.
std::vector<Matrix> subtract_collisions(SlotLayout& layout,
                                        std::span<const Collision> collisions,
                                        std::span<const BlockPair> needed,
                                        const Matrix& a_r, const Matrix& b_r, Value m_bound,
                                        RunStats& stats, SlotStats* slot_stats = nullptr);

/// Exact min-plus product through the blocked randomized pipeline. Pairs
/// that sampling misses are enumerated, so the result never depends on luck.
Matrix basic_minplus(const BDMatrix& a, const BDMatrix& b, const AlgoParams& params,
                     RunStats* stats = nullptr);

}  // namespace bdmp
