#include "bdmp/recursive.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "bdmp/basic.hpp"

namespace bdmp {

LevelState partition_level(const CandidateSets& k, std::span<const BlockPair> pairs,
                           std::size_t t_beta, double omega) {
  LevelState s{k.grid(), k.grid().alpha_equiv(), 0.0, {}, {}};
  s.gamma_l = s.theta_equiv + omega / 3.0 - 1.0;
  const bool can_sample = k.grid().blocks() >= kMinActiveBlocks;
  for (const BlockPair& p : pairs) {
    if (!k.defined(p.bi, p.bj)) throw std::logic_error("partition_level: undefined pair");
    (can_sample && k.size(p.bi, p.bj) > t_beta ? s.active : s.pending).push_back(p);
  }
  return s;
}

std::vector<PlacedSegment> top_segments(const Segmentation& seg, int relation) {
  std::vector<PlacedSegment> out;
  for (std::size_t bk = 0; bk < seg.grid.blocks(); ++bk)
    for (const auto& [p, rows] : seg.a.line(bk)) {
      PlacedSegment item;
      item.line = static_cast<std::uint32_t>(bk);
      item.bucket = p;
      item.a_blocks = rows;
      auto partner = seg.b.segment(bk, partner_bucket(p, relation));
      item.b_blocks.assign(partner.begin(), partner.end());
      out.push_back(std::move(item));
    }
  return out;
}

std::vector<PlacedSegment> sub_segments(const SlotLayout& parent, const Segmentation& child,
                                        int relation) {
  if (child.grid.l() * 2 != parent.grid.l())
    throw std::invalid_argument("sub_segments: child grid must halve the parent grid");
  std::vector<PlacedSegment> out;
  for (std::uint32_t t = 0; t < parent.items.size(); ++t) {
    const PlacedSegment& item = parent.items[t];
    std::map<std::pair<std::uint32_t, std::int64_t>, std::vector<std::uint32_t>> groups;
    for (std::uint32_t kc = 2 * item.line; kc <= 2 * item.line + 1; ++kc)
      for (std::uint32_t bi : item.a_blocks)
        for (std::uint32_t ic = 2 * bi; ic <= 2 * bi + 1; ++ic)
          groups[{kc, child.a.bucket(kc, ic)}].push_back(ic);
    for (auto& [key, rows] : groups) {
      PlacedSegment sub;
      sub.line = key.first;
      sub.bucket = key.second;
      std::sort(rows.begin(), rows.end());
      sub.a_blocks = std::move(rows);
      auto partner = child.b.segment(key.first, partner_bucket(key.second, relation));
      sub.b_blocks.assign(partner.begin(), partner.end());
      sub.parent = t;
      out.push_back(std::move(sub));
    }
  }
  return out;
}

SlotLayout allocate_recursive(const SlotLayout& parent, std::vector<PlacedSegment> subs,
                              Rng& rng, std::vector<std::array<std::uint32_t, 4>>* child_slots) {
  const std::size_t count = 4 * parent.slot_count;
  std::vector<std::uint32_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::array<std::uint32_t, 4>> owned(parent.slot_count);
  for (std::size_t s = 0; s < parent.slot_count; ++s)
    for (std::size_t c = 0; c < 4; ++c) owned[s][c] = perm[4 * s + c];

  std::uniform_int_distribution<int> pick(0, 3);
  for (auto& sub : subs) {
    if (sub.parent == kNoParent || sub.parent >= parent.items.size())
      throw std::logic_error("allocate_recursive: sub-segment without a parent");
    sub.slot = owned[parent.items[sub.parent].slot][pick(rng)];
  }
  if (child_slots) *child_slots = std::move(owned);
  return SlotLayout{parent.grid.halved(), count, std::move(subs)};
}

std::vector<Collision> collisions_incremental(const SlotLayout& parent,
                                              std::span<const Collision> parent_collisions,
                                              const SlotLayout& child,
                                              std::uint64_t* checks) {
  std::vector<std::vector<std::uint32_t>> kids(parent.items.size());
  for (std::uint32_t t = 0; t < child.items.size(); ++t)
    kids.at(child.items[t].parent).push_back(t);

  std::vector<Collision> out;
  std::uint64_t examined = 0;
  auto expand = [&](std::uint32_t pa, std::uint32_t pb) {
    for (std::uint32_t ca : kids[pa])
      for (std::uint32_t cb : kids[pb]) {
        ++examined;
        if (ca != cb && child.items[ca].slot == child.items[cb].slot)
          out.push_back({child.items[ca].slot, ca, cb});
      }
  };
  for (std::uint32_t t = 0; t < parent.items.size(); ++t) expand(t, t);
  for (const Collision& c : parent_collisions) expand(c.a_item, c.b_item);
  std::sort(out.begin(), out.end());
  if (checks) *checks += examined;
  return out;
}

SlotTree build_slot_chain(const Matrix& a_r, const Matrix& b_r, Value delta, std::size_t l_top,
                          std::size_t l_target, int relation, std::size_t top_slots,
                          Rng& top_rng, Rng& child_rng, std::uint64_t* checks) {
  if (l_target == 0 || l_target > l_top || l_top % l_target != 0)
    throw std::invalid_argument("build_slot_chain: target must divide the top block length");
  SlotTree tree;
  const Segmentation top = build_segments(a_r, b_r, l_top, delta);
  SlotLayout layout =
      random_layout(top.grid, top_segments(top, relation), std::max<std::size_t>(1, top_slots),
                    top_rng);
  auto collisions = find_collisions(layout);
  tree.levels.push_back({std::move(layout), std::move(collisions), {}});

  for (std::size_t l = l_top / 2; l >= l_target; l /= 2) {
    SlotLevel& prev = tree.levels.back();
    const Segmentation seg = build_segments(a_r, b_r, l, delta);
    SlotLayout next = allocate_recursive(prev.layout, sub_segments(prev.layout, seg, relation),
                                         child_rng, &prev.child_slots);
    auto next_collisions = collisions_incremental(prev.layout, prev.collisions, next, checks);
    tree.levels.push_back({std::move(next), std::move(next_collisions), {}});
    if (l == 1) break;
  }
  return tree;
}

std::size_t finish_tail(std::span<const BlockPair> pending, const CandidateSets& k1,
                        const BDMatrix& a, const BDMatrix& b, Matrix& out) {
  if (k1.grid().l() != 1) throw std::invalid_argument("finish_tail: candidates must be at l = 1");
  std::size_t terms = 0;
  for (const BlockPair& p : pending) {
    Value best = kInf;
    for (std::uint32_t k : k1.set(p.bi, p.bj))
      best = std::min(best, saturating_add(a(p.bi, k), b(k, p.bj)));
    out(p.bi, p.bj) = best;
    terms += k1.size(p.bi, p.bj);
  }
  return terms;
}

namespace {

class Coverage {
 public:
  explicit Coverage(std::size_t n) : n_(n), seen_(n * n, 0) {}

  void mark(const BlockGrid& g, BlockPair p) {
    const std::size_t l = g.l();
    for (std::size_t i = p.bi * l; i < (p.bi + 1) * l; ++i)
      for (std::size_t j = p.bj * l; j < (p.bj + 1) * l; ++j) {
        if (seen_[i * n_ + j]) throw std::logic_error("recursive_minplus: entry finalized twice");
        seen_[i * n_ + j] = 1;
      }
  }

  void require_complete() const {
    if (std::find(seen_.begin(), seen_.end(), 0) != seen_.end())
      throw std::logic_error("recursive_minplus: entry never finalized");
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> seen_;
};

std::vector<BlockPair> children_of(std::span<const BlockPair> parents) {
  std::vector<BlockPair> out;
  out.reserve(parents.size() * 4);
  for (const BlockPair& p : parents)
    for (std::uint32_t x = 0; x < 2; ++x)
      for (std::uint32_t y = 0; y < 2; ++y) out.push_back({2 * p.bi + x, 2 * p.bj + y});
  return out;
}

}  // namespace

Matrix recursive_minplus(const BDMatrix& a, const BDMatrix& b, const AlgoParams& params,
                         RunStats* stats_out, std::vector<LevelSummary>* levels_out) {
  params.validate();
  if (a.n() != b.n()) throw std::invalid_argument("recursive_minplus: dimension mismatch");
  if (a.delta() != b.delta()) throw std::invalid_argument("recursive_minplus: delta mismatch");
  const std::size_t n = a.n();
  const Value delta = a.delta();
  const std::size_t l0 = block_length_for(n, params.alpha);

  RunStats stats;
  stats.n = n;
  stats.block_length = l0;
  stats.enumeration_block_length = 1;
  stats.t_beta = ceil_power(n, params.beta);
  stats.t_gamma = ceil_power(n, params.gamma);
  stats.sample_count = sample_count(n, BlockGrid(n, l0).alpha_equiv(), params.beta, params.c0);
  std::vector<LevelSummary> summaries;

  Matrix out(n, n, kInf);
  Coverage coverage(n);
  CandidateSets k = candidate_sets(a, b, l0);
  std::vector<BlockPair> pairs;
  for (std::uint32_t bi = 0; bi < k.grid().blocks(); ++bi)
    for (std::uint32_t bj = 0; bj < k.grid().blocks(); ++bj) pairs.push_back({bi, bj});
  const double theta0 = k.grid().alpha_equiv();

  for (;;) {
    const std::size_t l = k.grid().l();
    LevelState level = partition_level(k, pairs, stats.t_beta, params.omega);
    LevelSummary summary;
    summary.l = l;
    summary.active = level.active.size();
    summary.pending = level.pending.size();

    if (!level.active.empty()) {
      stats.large_candidate_pairs += level.active.size();
      const std::size_t draws = sample_count(n, level.theta_equiv, params.beta, params.c0);
      Rng sample_rng = make_rng(params.seed, {static_cast<std::uint64_t>(Phase::kSample), l});
      const Sampling sampling = sample_r(k, level.active, draws, sample_rng);
      summary.samples = draws;
      summary.unassigned = sampling.unassigned.size();
      stats.unassigned_pairs += sampling.unassigned.size();
      for (const BlockPair& p : sampling.unassigned) {
        stats.counters.block_products += enumerate_block(a, b, k.grid(), p, k.set(p.bi, p.bj), out);
        ++stats.counters.fallback_pairs;
        coverage.mark(k.grid(), p);
      }

      const std::size_t top_slots =
          std::max<std::size_t>(1, ceil_power(n, 2 * theta0 - level.gamma_l));
      summary.top_slots = top_slots;
      summary.target_slots = top_slots * (l0 / l) * (l0 / l);
      const Value m_bound = encoding_bound(delta, l);
      for (const auto& [r, needed] : sampling.needed) {
        const std::size_t rc = static_cast<std::size_t>(r) * l;
        const auto [a_r, b_r] = shift_matrices(a.base(), b.base(), rc);
        std::vector<Matrix> best(needed.size(), Matrix(l, l, kInf));
        for (std::size_t ri = 0; ri < kRelations.size(); ++ri) {
          const int relation = kRelations[ri];
          Rng top_rng = make_rng(params.seed,
                                 {static_cast<std::uint64_t>(Phase::kAllocate), l, r, ri});
          Rng child_rng = make_rng(params.seed,
                                   {static_cast<std::uint64_t>(Phase::kChildSlots), l, r, ri});
          SlotTree tree = build_slot_chain(a_r, b_r, delta, l0, l, relation, top_slots, top_rng,
                                           child_rng, &stats.counters.incremental_checks);
          SlotLevel& target = tree.levels.back();
          SlotStats ss;
          auto blocks = subtract_collisions(target.layout, target.collisions, needed, a_r, b_r,
                                            m_bound, stats, &ss);
          if (blocks.empty()) continue;
          for (std::size_t t = 0; t < best.size(); ++t) {
            auto dst = best[t].data();
            auto src = blocks[t].data();
            for (std::size_t e = 0; e < dst.size(); ++e) dst[e] = std::min(dst[e], src[e]);
          }
          stats.counters.collision_checks += ss.enumeration_cost;
          stats.counters.collisions_found += static_cast<std::uint64_t>(std::count_if(
              target.collisions.begin(), target.collisions.end(), [&](const Collision& c) {
                return !target.layout.items[c.b_item].b_blocks.empty();
              }));
          if (ss.slot_count) stats.slot_stats.push_back(ss);
        }
        for (std::size_t t = 0; t < needed.size(); ++t) {
          const std::size_t i0 = needed[t].bi * l, j0 = needed[t].bj * l;
          for (std::size_t ii = 0; ii < l; ++ii)
            for (std::size_t jj = 0; jj < l; ++jj) {
              const Value v = best[t](ii, jj);
              if (is_inf(v)) continue;
              Value& dst = out(i0 + ii, j0 + jj);
              dst = std::min(dst, v + a(i0 + ii, rc) + b(rc, j0 + jj));
            }
          coverage.mark(k.grid(), needed[t]);
        }
        stats.counters.sampled_pairs += needed.size();
      }
    }
    summaries.push_back(summary);

    if (l == 1) {
      stats.counters.block_products += finish_tail(level.pending, k, a, b, out);
      stats.counters.small_pairs += level.pending.size();
      for (const BlockPair& p : level.pending) coverage.mark(k.grid(), p);
      break;
    }
    if (level.pending.empty()) break;
    k = refine_candidates(k, a, b, level.pending);
    pairs = children_of(level.pending);
  }
  coverage.require_complete();
  if (stats_out) *stats_out = std::move(stats);
  if (levels_out) *levels_out = std::move(summaries);
  return out;
}

}  // namespace bdmp
