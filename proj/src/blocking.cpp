#include "bdmp/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bdmp {

BlockGrid::BlockGrid(std::size_t n, std::size_t l) : n_(n), l_(l) {
  if (n == 0 || l == 0 || l > n || n % l != 0)
    throw std::invalid_argument("block length must divide n");
}

std::vector<std::size_t> BlockGrid::representatives() const {
  std::vector<std::size_t> out(blocks());
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = representative(b);
  return out;
}

double BlockGrid::alpha_equiv() const noexcept {
  if (n_ <= 1) return 0.0;
  return 1.0 - std::log2(static_cast<double>(l_)) / std::log2(static_cast<double>(n_));
}

BlockGrid BlockGrid::halved() const {
  if (l_ < 2) throw std::invalid_argument("cannot halve block length 1");
  return BlockGrid(n_, l_ / 2);
}

CandidateSets::CandidateSets(BlockGrid grid, Value delta)
    : grid_(grid),
      delta_(delta),
      approx_(grid.blocks(), grid.blocks(), kInf),
      sets_(grid.blocks() * grid.blocks()),
      defined_(grid.blocks() * grid.blocks(), 0) {}

void CandidateSets::assign(std::size_t bi, std::size_t bj, Value approx,
                           std::vector<std::uint32_t> set) {
  approx_(bi, bj) = approx;
  sets_[index(bi, bj)] = std::move(set);
  defined_[index(bi, bj)] = 1;
}

namespace {

void check_pair(const BDMatrix& a, const BDMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("matrix sizes differ");
}

// Candidates for one pair from an explicit list of k-blocks at grid g.
void fill_pair(const BDMatrix& a, const BDMatrix& b, const BlockGrid& g,
               std::size_t bi, std::size_t bj, std::span<const std::uint32_t> ks,
               CandidateSets& out, std::vector<Value>& sums) {
  const std::size_t i = g.representative(bi), j = g.representative(bj);
  sums.resize(ks.size());
  Value best = kInf;
  for (std::size_t t = 0; t < ks.size(); ++t) {
    const std::size_t k = g.representative(ks[t]);
    sums[t] = a(i, k) + b(k, j);
    best = std::min(best, sums[t]);
  }
  const Value limit = best + 8 * static_cast<Value>(g.l()) * out.delta();
  std::vector<std::uint32_t> set;
  for (std::size_t t = 0; t < ks.size(); ++t)
    if (sums[t] <= limit) set.push_back(ks[t]);
  out.assign(bi, bj, best, std::move(set));
}

}  // namespace

Matrix approx_matrix(const BDMatrix& a, const BDMatrix& b, std::size_t l) {
  check_pair(a, b);
  const BlockGrid g(a.n(), l);
  const std::size_t nb = g.blocks();
  Matrix out(nb, nb, kInf);
  for (std::size_t bi = 0; bi < nb; ++bi)
    for (std::size_t bk = 0; bk < nb; ++bk) {
      const Value av = a(g.representative(bi), g.representative(bk));
      for (std::size_t bj = 0; bj < nb; ++bj)
        out(bi, bj) = std::min(out(bi, bj),
                               av + b(g.representative(bk), g.representative(bj)));
    }
  return out;
}

CandidateSets candidate_sets(const BDMatrix& a, const BDMatrix& b, std::size_t l) {
  check_pair(a, b);
  const BlockGrid g(a.n(), l);
  const std::size_t nb = g.blocks();
  CandidateSets out(g, a.delta());
  std::vector<std::uint32_t> all(nb);
  for (std::size_t t = 0; t < nb; ++t) all[t] = static_cast<std::uint32_t>(t);
  std::vector<Value> sums;
  for (std::size_t bi = 0; bi < nb; ++bi)
    for (std::size_t bj = 0; bj < nb; ++bj) fill_pair(a, b, g, bi, bj, all, out, sums);
  return out;
}

CandidateSets refine_candidates(const CandidateSets& parent, const BDMatrix& a,
                                const BDMatrix& b, std::span<const BlockPair> parents) {
  check_pair(a, b);
  if (parent.grid().l() < 2)
    throw std::invalid_argument("refine_candidates: parent block length is 1");
  const BlockGrid child = parent.grid().halved();
  CandidateSets out(child, parent.delta());
  std::vector<std::uint32_t> ks;
  std::vector<Value> sums;
  for (const BlockPair& p : parents) {
    if (!parent.defined(p.bi, p.bj))
      throw std::invalid_argument("refine_candidates: parent pair is undefined");
    ks.clear();
    for (std::uint32_t k : parent.set(p.bi, p.bj)) {
      ks.push_back(2 * k);
      ks.push_back(2 * k + 1);
    }
    for (std::size_t di = 0; di < 2; ++di)
      for (std::size_t dj = 0; dj < 2; ++dj)
        fill_pair(a, b, child, 2 * p.bi + di, 2 * p.bj + dj, ks, out, sums);
  }
  return out;
}

CandidateSets refine_candidates(const CandidateSets& parent, const BDMatrix& a,
                                const BDMatrix& b) {
  std::vector<BlockPair> all;
  const std::size_t nb = parent.grid().blocks();
  for (std::uint32_t bi = 0; bi < nb; ++bi)
    for (std::uint32_t bj = 0; bj < nb; ++bj)
      if (parent.defined(bi, bj)) all.push_back({bi, bj});
  return refine_candidates(parent, a, b, all);
}

std::size_t enumerate_block(const BDMatrix& a, const BDMatrix& b, const BlockGrid& grid,
                            BlockPair pair, std::span<const std::uint32_t> candidates,
                            Matrix& out) {
  const std::size_t l = grid.l();
  const std::size_t i0 = grid.representative(pair.bi);
  const std::size_t j0 = grid.representative(pair.bj);
  for (std::uint32_t bk : candidates) {
    const std::size_t k0 = grid.representative(bk);
    for (std::size_t i = i0; i < i0 + l; ++i)
      for (std::size_t k = k0; k < k0 + l; ++k) {
        const Value av = a(i, k);
        for (std::size_t j = j0; j < j0 + l; ++j) {
          const Value s = av + b(k, j);
          if (s < out(i, j)) out(i, j) = s;
        }
      }
  }
  return candidates.size();
}

}  // namespace bdmp
