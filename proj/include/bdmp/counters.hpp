#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bdmp {

/// Work counters. Each one tracks a cost term of the algorithms so that run
/// records can be checked against numeric bounds.
struct Counters {
  std::uint64_t block_products = 0;    // trivial l x l block min-plus products
  std::uint64_t collision_checks = 0;  // sum over collisions of |A_p| * |B_q|
  std::uint64_t collisions_found = 0;  // collisions with a nonempty B side
  std::uint64_t fallback_pairs = 0;    // large-candidate pairs missed by R
  std::uint64_t poly_degree_ops = 0;   // monomial accumulations in slot products

  std::uint64_t small_pairs = 0;         // pairs finished by candidate enumeration
  std::uint64_t sampled_pairs = 0;       // pairs finished through a sampled r
  std::uint64_t incremental_checks = 0;  // child pairs examined while inheriting collisions

  Counters& operator+=(const Counters& o) noexcept;
};

/// Collision bookkeeping for one (r, relation) randomized slot product.
struct SlotStats {
  std::size_t slot_count = 0;
  std::size_t needed_blocks = 0;
  std::uint64_t enumeration_cost = 0;   // s
  double predicted_cost = 0.0;          // (sum |A_p|) (sum |B_q|) / slot_count
  std::uint64_t block_collisions = 0;   // summed over needed blocks
  std::uint64_t block_cross_pairs = 0;  // non-corresponding pairs touching needed blocks
};

struct RunStats {
  std::size_t n = 0;
  std::size_t block_length = 0;  // top-level l
  std::size_t t_beta = 0;
  std::size_t t_gamma = 0;
  std::size_t sample_count = 0;  // draws for R at the top level

  // Block length of the phase that enumerates small candidate sets: l for
  // the basic algorithm, 1 for the recursive tail.
  std::size_t enumeration_block_length = 0;

  std::uint64_t large_candidate_pairs = 0;
  std::uint64_t unassigned_pairs = 0;
  std::uint64_t max_large_slots = 0;  // per (r, relation)

  Counters counters;
  std::vector<SlotStats> slot_stats;
};

/// Evaluates the work-count bounds; returns one message per violation.
///   block_products <= (n/l')^2 * T_beta + fallback_pairs * T_beta
///   large slots per (r, relation) <= (n/l)^2 / T_gamma
///   collisions_found <= collision_checks
std::vector<std::string> check_work_bounds(const RunStats& stats);

}  // namespace bdmp
