#include "bdmp/basic.hpp"

#include <algorithm>
#include <stdexcept>

namespace bdmp {

std::vector<BlockPair> handle_small_candidates(const BDMatrix& a, const BDMatrix& b,
                                               const CandidateSets& k, std::size_t t_beta,
                                               Matrix& out, Counters& counters) {
  const BlockGrid& g = k.grid();
  std::vector<BlockPair> remaining;
  for (std::uint32_t bi = 0; bi < g.blocks(); ++bi)
    for (std::uint32_t bj = 0; bj < g.blocks(); ++bj) {
      if (k.size(bi, bj) > t_beta) {
        remaining.push_back({bi, bj});
        continue;
      }
      counters.block_products += enumerate_block(a, b, g, {bi, bj}, k.set(bi, bj), out);
      ++counters.small_pairs;
    }
  return remaining;
}

Sampling sample_r(const CandidateSets& k, std::span<const BlockPair> remaining,
                  std::size_t draws, Rng& rng) {
  const std::size_t nb = k.grid().blocks();
  Sampling out;
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(nb - 1));
  std::vector<std::uint8_t> chosen(nb, 0);
  for (std::size_t t = 0; t < draws; ++t) chosen[pick(rng)] = 1;
  for (std::uint32_t c = 0; c < nb; ++c)
    if (chosen[c]) out.columns.push_back(c);

  for (const BlockPair& p : remaining) {
    // Candidate sets are sorted, so the first hit is the smallest r.
    const auto set = k.set(p.bi, p.bj);
    auto it = std::find_if(set.begin(), set.end(), [&](std::uint32_t c) { return chosen[c] != 0; });
    if (it == set.end())
      out.unassigned.push_back(p);
    else
      out.needed[*it].push_back(p);
  }
  return out;
}

namespace {

void min_combine(std::vector<Matrix>& into, const std::vector<Matrix>& from) {
  for (std::size_t t = 0; t < into.size(); ++t) {
    auto dst = into[t].data();
    auto src = from[t].data();
    for (std::size_t e = 0; e < dst.size(); ++e) dst[e] = std::min(dst[e], src[e]);
  }
}

}  // namespace

std::vector<Matrix> process_large_segments(const Segmentation& seg, int relation,
                                           const Matrix& a_r, const Matrix& b_r,
                                           std::size_t t_gamma,
                                           std::span<const BlockPair> needed,
                                           RunStats& stats) {
  auto pairs = pair_segments(seg, relation, t_gamma);
  stats.max_large_slots =
      std::max<std::uint64_t>(stats.max_large_slots, pairs.large.size());
  const std::size_t l = seg.grid.l();
  if (pairs.large.empty()) return std::vector<Matrix>(needed.size(), Matrix(l, l, kInf));
  SlotLayout layout = separate_layout(seg.grid, std::move(pairs.large));
  const Value m = encoding_bound(seg.delta, l);
  center_offsets(layout, a_r, b_r, m);
  EvalStats es;
  auto blocks = evaluate_blocks(a_r, b_r, layout, {}, needed, m, &es);
  stats.counters.poly_degree_ops += es.monomial_ops;
  return blocks;
}

SlotLayout process_small_segments(const Segmentation& seg, int relation,
                                  std::size_t t_gamma, std::size_t slot_count, Rng& rng) {
  auto pairs = pair_segments(seg, relation, t_gamma);
  return random_layout(seg.grid, std::move(pairs.small), slot_count, rng);
}

std::vector<Matrix> subtract_collisions(SlotLayout& layout,
                                        std::span<const Collision> collisions,
                                        std::span<const BlockPair> needed,
                                        const Matrix& a_r, const Matrix& b_r, Value m_bound,
                                        RunStats& stats, SlotStats* slot_stats) {
  const std::size_t l = layout.grid.l();
  if (layout.items.empty()) return std::vector<Matrix>(needed.size(), Matrix(l, l, kInf));
  center_offsets(layout, a_r, b_r, m_bound);
  EvalStats es;
  auto blocks = evaluate_blocks(a_r, b_r, layout, collisions, needed, m_bound, &es);
  stats.counters.poly_degree_ops += es.monomial_ops;
  if (slot_stats) {
    slot_stats->slot_count = layout.slot_count;
    slot_stats->needed_blocks = needed.size();
    slot_stats->enumeration_cost = enumeration_cost(layout, collisions);
    slot_stats->predicted_cost = predicted_enumeration_cost(layout);
    slot_stats->block_collisions = es.collisions_subtracted;
    slot_stats->block_cross_pairs = es.cross_pairs;
  }
  return blocks;
}

Matrix basic_minplus(const BDMatrix& a, const BDMatrix& b, const AlgoParams& params,
                     RunStats* stats_out) {
  params.validate();
  if (a.n() != b.n()) throw std::invalid_argument("basic_minplus: dimension mismatch");
  if (a.delta() != b.delta()) throw std::invalid_argument("basic_minplus: delta mismatch");
  const std::size_t n = a.n();
  const Value delta = a.delta();
  const std::size_t l = block_length_for(n, params.alpha);

  RunStats stats;
  stats.n = n;
  stats.block_length = l;
  stats.enumeration_block_length = l;
  stats.t_beta = ceil_power(n, params.beta);
  stats.t_gamma = ceil_power(n, params.gamma);
  stats.sample_count = sample_count(n, params.alpha, params.beta, params.c0);
  const std::size_t slot_count =
      std::max<std::size_t>(1, ceil_power(n, 2 * params.alpha - params.gamma));

  Matrix out(n, n, kInf);
  const CandidateSets k = candidate_sets(a, b, l);
  const auto remaining =
      handle_small_candidates(a, b, k, stats.t_beta, out, stats.counters);
  stats.large_candidate_pairs = remaining.size();

  Rng sample_rng = make_rng(params.seed, {static_cast<std::uint64_t>(Phase::kSample), l});
  const Sampling sampling = sample_r(k, remaining, stats.sample_count, sample_rng);
  stats.unassigned_pairs = sampling.unassigned.size();
  for (const BlockPair& p : sampling.unassigned) {
    stats.counters.block_products +=
        enumerate_block(a, b, k.grid(), p, k.set(p.bi, p.bj), out);
    ++stats.counters.fallback_pairs;
  }

  const Value m_bound = encoding_bound(delta, l);
  for (const auto& [r, needed] : sampling.needed) {
    const std::size_t rc = static_cast<std::size_t>(r) * l;
    const auto [a_r, b_r] = shift_matrices(a.base(), b.base(), rc);
    const Segmentation seg = build_segments(a_r, b_r, l, delta);
    std::vector<Matrix> best(needed.size(), Matrix(l, l, kInf));
    for (std::size_t ri = 0; ri < kRelations.size(); ++ri) {
      const int relation = kRelations[ri];
      min_combine(best, process_large_segments(seg, relation, a_r, b_r, stats.t_gamma,
                                               needed, stats));
      Rng rng = make_rng(params.seed,
                         {static_cast<std::uint64_t>(Phase::kAllocate), l, r, ri});
      SlotLayout layout = process_small_segments(seg, relation, stats.t_gamma, slot_count, rng);
      if (layout.items.empty()) continue;
      const auto collisions = find_collisions(layout);
      SlotStats ss;
      min_combine(best, subtract_collisions(layout, collisions, needed, a_r, b_r, m_bound,
                                            stats, &ss));
      stats.counters.collision_checks += ss.enumeration_cost;
      stats.counters.collisions_found += collisions.size();
      stats.slot_stats.push_back(ss);
    }
    for (std::size_t t = 0; t < needed.size(); ++t) {
      const std::size_t i0 = needed[t].bi * l, j0 = needed[t].bj * l;
      for (std::size_t ii = 0; ii < l; ++ii)
        for (std::size_t jj = 0; jj < l; ++jj) {
          const Value v = best[t](ii, jj);
          if (is_inf(v)) continue;
          const Value full = v + a(i0 + ii, rc) + b(rc, j0 + jj);
          Value& dst = out(i0 + ii, j0 + jj);
          dst = std::min(dst, full);
        }
    }
    stats.counters.sampled_pairs += needed.size();
  }
  if (stats_out) *stats_out = std::move(stats);
  return out;
}

}  // namespace bdmp
