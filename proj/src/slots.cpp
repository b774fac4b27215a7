#include "bdmp/slots.hpp"

#include <algorithm>
#include <stdexcept>

namespace bdmp {

SegmentPairs pair_segments(const Segmentation& seg, int relation, std::size_t t_gamma) {
  SegmentPairs out;
  const std::size_t nb = seg.grid.blocks();
  for (std::size_t bk = 0; bk < nb; ++bk) {
    for (const auto& [p, rows] : seg.a.line(bk)) {
      auto partner = seg.b.segment(bk, partner_bucket(p, relation));
      if (partner.empty()) continue;
      PlacedSegment item;
      item.line = static_cast<std::uint32_t>(bk);
      item.bucket = p;
      item.a_blocks = rows;
      item.b_blocks.assign(partner.begin(), partner.end());
      (rows.size() >= t_gamma ? out.large : out.small).push_back(std::move(item));
    }
  }
  return out;
}

SlotLayout separate_layout(const BlockGrid& grid, std::vector<PlacedSegment> items) {
  SlotLayout layout{grid, items.size(), std::move(items)};
  for (std::size_t t = 0; t < layout.items.size(); ++t)
    layout.items[t].slot = static_cast<std::uint32_t>(t);
  return layout;
}

SlotLayout random_layout(const BlockGrid& grid, std::vector<PlacedSegment> items,
                         std::size_t slot_count, Rng& rng) {
  if (slot_count == 0) throw std::invalid_argument("random_layout: no slots");
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(slot_count - 1));
  for (auto& item : items) item.slot = pick(rng);
  return SlotLayout{grid, slot_count, std::move(items)};
}

std::vector<Collision> find_collisions(const SlotLayout& layout) {
  std::vector<std::vector<std::uint32_t>> by_slot(layout.slot_count);
  for (std::size_t t = 0; t < layout.items.size(); ++t)
    by_slot.at(layout.items[t].slot).push_back(static_cast<std::uint32_t>(t));
  std::vector<Collision> out;
  for (std::size_t s = 0; s < by_slot.size(); ++s) {
    const auto& members = by_slot[s];
    for (std::uint32_t a : members)
      for (std::uint32_t b : members)
        if (a != b) out.push_back({static_cast<std::uint32_t>(s), a, b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t enumeration_cost(const SlotLayout& layout,
                               std::span<const Collision> collisions) {
  std::uint64_t s = 0;
  for (const Collision& c : collisions)
    s += layout.items[c.a_item].a_blocks.size() * layout.items[c.b_item].b_blocks.size();
  return s;
}

double predicted_enumeration_cost(const SlotLayout& layout) {
  if (layout.slot_count == 0) return 0.0;
  double sa = 0, sb = 0;
  for (const auto& item : layout.items) {
    sa += static_cast<double>(item.a_blocks.size());
    sb += static_cast<double>(item.b_blocks.size());
  }
  return sa * sb / static_cast<double>(layout.slot_count);
}

void center_offsets(SlotLayout& layout, const Matrix& a_r, const Matrix& b_r,
                    Value m_bound) {
  const std::size_t l = layout.grid.l();
  for (auto& item : layout.items) {
    Value a0 = kInf, a1 = -kInf, b0 = kInf, b1 = -kInf;
    const std::size_t k0 = item.line * l;
    for (std::uint32_t bi : item.a_blocks)
      for (std::size_t i = bi * l; i < (bi + 1) * l; ++i)
        for (std::size_t k = k0; k < k0 + l; ++k) {
          a0 = std::min(a0, a_r(i, k));
          a1 = std::max(a1, a_r(i, k));
        }
    for (std::size_t k = k0; k < k0 + l; ++k)
      for (std::uint32_t bj : item.b_blocks)
        for (std::size_t j = bj * l; j < (bj + 1) * l; ++j) {
          b0 = std::min(b0, b_r(k, j));
          b1 = std::max(b1, b_r(k, j));
        }
    Value lo = -m_bound - a0, hi = m_bound - a1;
    if (!item.b_blocks.empty()) {
      lo = std::max(lo, b1 - m_bound);
      hi = std::min(hi, b0 + m_bound);
    }
    if (lo > hi)
      throw std::logic_error("center_offsets: segment pair does not fit the encoding bound");
    item.offset = lo + (hi - lo) / 2;
  }
}

std::vector<Matrix> evaluate_blocks(const Matrix& a_r, const Matrix& b_r,
                                    const SlotLayout& layout,
                                    std::span<const Collision> collisions,
                                    std::span<const BlockPair> needed, Value m_bound,
                                    EvalStats* stats) {
  const std::size_t l = layout.grid.l();
  const std::size_t nb = layout.grid.blocks();
  const std::size_t n_items = layout.items.size();
  const std::size_t stride = static_cast<std::size_t>(4 * m_bound + 1);

  std::vector<std::vector<std::uint32_t>> rows_index(nb), slot_items(layout.slot_count),
      coll_by_a(n_items);
  std::vector<std::uint8_t> b_member(n_items * nb, 0);
  std::vector<std::uint32_t> b_count(nb, 0);
  for (std::uint32_t t = 0; t < n_items; ++t) {
    const auto& item = layout.items[t];
    for (std::uint32_t bi : item.a_blocks) rows_index[bi].push_back(t);
    for (std::uint32_t bj : item.b_blocks) {
      b_member[t * nb + bj] = 1;
      ++b_count[bj];
    }
    slot_items.at(item.slot).push_back(t);
  }
  for (std::uint32_t c = 0; c < collisions.size(); ++c)
    coll_by_a[collisions[c].a_item].push_back(c);

  EvalStats local;
  std::vector<std::int64_t> coeff(l * l * stride);
  std::vector<Matrix> out;
  out.reserve(needed.size());

  auto accumulate = [&](const PlacedSegment& a, const PlacedSegment& b, std::size_t i0,
                        std::size_t j0, std::int64_t sign) {
    const std::size_t ka = a.line * l, kb = b.line * l;
    for (std::size_t ii = 0; ii < l; ++ii)
      for (std::size_t t = 0; t < l; ++t) {
        const Value da = a_r(i0 + ii, ka + t) + a.offset + m_bound;
        std::int64_t* cell = coeff.data() + ii * l * stride;
        for (std::size_t jj = 0; jj < l; ++jj) {
          const Value d = da + b_r(kb + t, j0 + jj) - b.offset + m_bound;
          cell[jj * stride + static_cast<std::size_t>(d)] += sign;
        }
      }
    local.monomial_ops += l * l * l;
  };

  for (const BlockPair& p : needed) {
    std::fill(coeff.begin(), coeff.end(), 0);
    const std::size_t i0 = p.bi * l, j0 = p.bj * l;
    std::uint64_t both = 0;
    for (std::uint32_t ta : rows_index[p.bi]) {
      const auto& a = layout.items[ta];
      if (b_member[ta * nb + p.bj]) ++both;
      for (std::uint32_t tb : slot_items[a.slot])
        if (b_member[tb * nb + p.bj]) accumulate(a, layout.items[tb], i0, j0, +1);
      for (std::uint32_t c : coll_by_a[ta]) {
        const std::uint32_t tb = collisions[c].b_item;
        if (!b_member[tb * nb + p.bj]) continue;
        accumulate(a, layout.items[tb], i0, j0, -1);
        ++local.collisions_subtracted;
      }
    }
    local.cross_pairs += rows_index[p.bi].size() * b_count[p.bj] - both;

    Matrix block(l, l, kInf);
    for (std::size_t ii = 0; ii < l; ++ii)
      for (std::size_t jj = 0; jj < l; ++jj) {
        const std::int64_t* cell = coeff.data() + (ii * l + jj) * stride;
        for (std::size_t d = 0; d < stride; ++d) {
          if (cell[d] < 0)
            throw std::logic_error("evaluate_blocks: negative coefficient after subtraction");
          if (cell[d] > 0) {
            block(ii, jj) = static_cast<Value>(d) - 2 * m_bound;
            for (std::size_t e = d + 1; e < stride; ++e)
              if (cell[e] < 0)
                throw std::logic_error(
                    "evaluate_blocks: negative coefficient after subtraction");
            break;
          }
        }
      }
    out.push_back(std::move(block));
  }
  if (stats) {
    stats->monomial_ops += local.monomial_ops;
    stats->collisions_subtracted += local.collisions_subtracted;
    stats->cross_pairs += local.cross_pairs;
  }
  return out;
}

}  // namespace bdmp
