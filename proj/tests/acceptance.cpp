// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bdmp/basic.hpp"
#include "bdmp/blocking.hpp"
#include "bdmp/cli.hpp"
#include "bdmp/recursive.hpp"
#include "bdmp/segments.hpp"
#include "bdmp/semiring.hpp"
#include "bdmp/slots.hpp"
#include "support.hpp"

namespace {

using namespace bdmp;

struct Verdict {
  bool pass = true;
  std::string detail;
};

constexpr std::array<std::size_t, 3> kSizes{32, 64, 128};
constexpr std::array<Value, 3> kDeltas{1, 2, 5};
constexpr std::uint64_t kSeeds = 30;

std::uint64_t instance_seed(std::size_t n, Value delta, std::uint64_t seed, std::uint64_t side) {
  return derive_seed(seed, {n, static_cast<std::uint64_t>(delta), side});
}

// Products whose inputs were delta-BD and whose output matched naive, kept for
// the BD preservation check.
struct VerifiedProduct {
  Matrix c;
  Value delta;
};
std::vector<VerifiedProduct> g_verified;

Verdict oracle_grid(const std::function<Matrix(const BDMatrix&, const BDMatrix&, std::uint64_t)>& run) {
  std::size_t total = 0, exact = 0;
  std::string first_bad;
  for (std::size_t n : kSizes)
    for (Value delta : kDeltas)
      for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 0));
        const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 1));
        const Matrix c = run(a, b, seed);
        ++total;
        if (c == minplus_naive(a.base(), b.base())) {
          ++exact;
          g_verified.push_back({c, delta});
        } else if (first_bad.empty()) {
          first_bad = " first mismatch n=" + std::to_string(n) + " delta=" +
                      std::to_string(delta) + " seed=" + std::to_string(seed);
        }
      }
  return {exact == total, std::to_string(exact) + "/" + std::to_string(total) + " exact" + first_bad};
}

Verdict criterion1() {
  return oracle_grid([](const BDMatrix& a, const BDMatrix& b, std::uint64_t seed) {
    AlgoParams p = AlgoParams::basic_defaults();
    p.seed = seed;
    return basic_minplus(a, b, p);
  });
}

Verdict criterion2() {
  return oracle_grid([](const BDMatrix& a, const BDMatrix& b, std::uint64_t seed) {
    AlgoParams p = AlgoParams::recursive_defaults();
    p.seed = seed;
    return recursive_minplus(a, b, p);
  });
}

Verdict criterion3() {
  std::mt19937_64 rng(3);
  constexpr std::array<double, 4> kInfRates{0.0, 0.1, 0.5, 1.0};
  std::size_t exact = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
    const std::size_t inner = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
    const std::size_t m_cols = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
    const Value m = std::uniform_int_distribution<Value>(1, 64)(rng);
    const double rate = kInfRates[t % kInfRates.size()];
    Matrix a = testing::random_small(n, inner, m, rate, rng);
    Matrix b = testing::random_small(inner, m_cols, m, rate, rng);
    if (t % 7 == 0) {
      for (std::size_t k = 0; k < inner; ++k) a(0, k) = kInf;
      for (std::size_t k = 0; k < inner; ++k) b(k, m_cols - 1) = kInf;
    }
    if (minplus_small_entries(a, b, m) == minplus_naive(a, b)) ++exact;
  }
  return {exact == trials, std::to_string(exact) + "/" + std::to_string(trials) + " exact"};
}

Verdict criterion4() {
  constexpr std::size_t n = 64, l = 8;
  constexpr Value delta = 2;
  Value worst_entry = 0, worst_gap = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 4));
    const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 5));
    const Matrix c = minplus_naive(a.base(), b.base());
    const Matrix approx = approx_matrix(a, b, l);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_entry = std::max(worst_entry, std::abs(c(i, j) - approx(i / l, j / l)));
    const std::size_t nb = n / l;
    for (std::size_t bi = 0; bi < nb; ++bi)
      for (std::size_t bj = 0; bj < nb; ++bj) {
        const std::size_t i = bi * l, j = bj * l;
        if (bj + 1 < nb) {
          worst_gap = std::max(worst_gap, std::abs(approx(bi, bj) - approx(bi, bj + 1)));
          worst_gap = std::max(worst_gap, std::abs(c(i, j) - c(i, j + l)));
        }
        if (bi + 1 < nb) {
          worst_gap = std::max(worst_gap, std::abs(approx(bi, bj) - approx(bi + 1, bj)));
          worst_gap = std::max(worst_gap, std::abs(c(i, j) - c(i + l, j)));
        }
      }
  }
  const Value entry_bound = 4 * delta * l, gap_bound = 2 * delta * l;
  return {worst_entry <= entry_bound && worst_gap <= gap_bound,
          "max |C - C~| = " + std::to_string(worst_entry) + " (<= " +
              std::to_string(entry_bound) + "), max adjacent gap = " + std::to_string(worst_gap) +
              " (<= " + std::to_string(gap_bound) + ")"};
}

Verdict criterion5() {
  constexpr std::size_t n = 64;
  std::size_t witness_bad = 0, spread_bad = 0, checked = 0;
  for (Value delta : kDeltas)
    for (std::size_t l : {1, 2, 4, 8, 16})
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 6));
        const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 7));
        const CandidateSets k = candidate_sets(a, b, l);
        const Value bound = 16 * delta * static_cast<Value>(l);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            ++checked;
            const auto set = k.set(i / l, j / l);
            const std::size_t w = testing::oracle_argmin(a.base(), b.base(), i, j);
            if (!std::binary_search(set.begin(), set.end(), static_cast<std::uint32_t>(w / l)))
              ++witness_bad;
            Value lo = kInf, hi = -kInf;
            for (std::uint32_t kb : set) {
              const Value v = a(i, kb * l) + b(kb * l, j);
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
            if (hi - lo > bound) ++spread_bad;
          }
      }
  return {witness_bad == 0 && spread_bad == 0,
          std::to_string(checked) + " entries, " + std::to_string(witness_bad) +
              " witness violations, " + std::to_string(spread_bad) + " closeness violations"};
}

Verdict criterion6() {
  constexpr std::size_t n = 64;
  double worst = 0.0;
  std::size_t runs_over = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Value delta = kDeltas[seed % kDeltas.size()];
    const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 8));
    const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 9));
    AlgoParams p = AlgoParams::basic_defaults();
    p.seed = seed;
    RunStats stats;
    basic_minplus(a, b, p, &stats);
    const double frac = stats.large_candidate_pairs == 0
                            ? 0.0
                            : static_cast<double>(stats.unassigned_pairs) /
                                  static_cast<double>(stats.large_candidate_pairs);
    worst = std::max(worst, frac);
    if (frac > 0.05) ++runs_over;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "worst unassigned fraction %.4f (<= 0.05), %zu runs over", worst,
                runs_over);
  return {runs_over == 0, buf};
}

Verdict criterion7() {
  constexpr std::size_t n = 128;
  AlgoParams p = AlgoParams::basic_defaults();
  p.alpha = 4.0 / 7.0;  // l = 8
  p.beta = 0.3;  // T_beta below the 16 block columns, so pairs reach the slot products
  double sum_s = 0, sum_pred_s = 0, sum_coll = 0, sum_pred_coll = 0;
  std::size_t samples = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Value delta = kDeltas[seed % kDeltas.size()];
    const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 10));
    const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 11));
    p.seed = seed;
    RunStats stats;
    basic_minplus(a, b, p, &stats);
    for (const SlotStats& s : stats.slot_stats) {
      ++samples;
      sum_s += static_cast<double>(s.enumeration_cost);
      sum_pred_s += s.predicted_cost;
      sum_coll += static_cast<double>(s.block_collisions);
      sum_pred_coll +=
          static_cast<double>(s.block_cross_pairs) / static_cast<double>(s.slot_count);
    }
  }
  const double rs = sum_pred_s > 0 ? sum_s / sum_pred_s : 0.0;
  const double rc = sum_pred_coll > 0 ? sum_coll / sum_pred_coll : 0.0;
  auto within = [](double r) { return r >= 0.25 && r <= 4.0; };
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "%zu slot products (l=%zu), mean s / predicted = %.3f, mean block collisions / "
                "predicted = %.3f (each in [0.25, 4])",
                samples, block_length_for(n, p.alpha), rs, rc);
  return {samples > 0 && within(rs) && within(rc), buf};
}

Verdict criterion8() {
  std::size_t levels = 0, unequal = 0, collisions = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (std::size_t n : {32, 64, 128}) {
      const Value delta = kDeltas[seed % kDeltas.size()];
      const BDMatrix a = generate_bd(n, delta, instance_seed(n, delta, seed, 12));
      const BDMatrix b = generate_bd(n, delta, instance_seed(n, delta, seed, 13));
      const std::size_t l0 = block_length_for(n, 0.5);
      const std::size_t nb = n / l0;
      for (std::size_t r : {std::size_t{0}, seed % nb, nb - 1}) {
        const auto [ar, br] = shift_matrices(a.base(), b.base(), r * l0);
        for (std::size_t ri = 0; ri < kRelations.size(); ++ri)
          for (std::size_t top_slots : {1, 2, 5}) {
            Rng top = make_rng(seed, {n, r, ri, top_slots, 1});
            Rng child = make_rng(seed, {n, r, ri, top_slots, 2});
            const SlotTree tree =
                build_slot_chain(ar, br, delta, l0, 1, kRelations[ri], top_slots, top, child);
            for (const SlotLevel& lv : tree.levels) {
              ++levels;
              collisions += lv.collisions.size();
              if (lv.collisions != find_collisions(lv.layout)) ++unequal;
            }
          }
      }
    }
  return {unequal == 0 && levels > 0,
          std::to_string(levels) + " levels, " + std::to_string(collisions) +
              " collisions, " + std::to_string(unequal) + " unequal"};
}

Verdict criterion9() {
  std::size_t records = 0, violations = 0, unverified = 0;
  std::string first;
  for (Value delta : kDeltas)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      BenchOptions o;
      o.sizes = {kSizes.begin(), kSizes.end()};
      o.algos = {"basic", "recursive"};
      o.seed = seed;
      o.delta = delta;
      const BenchOutcome out = cmd_bench(o);
      records += out.records.size();
      violations += out.violations.size();
      if (first.empty() && !out.violations.empty()) first = "; first: " + out.violations.front();
      for (const auto& r : out.records)
        if (r.verified != std::optional<bool>(true)) ++unverified;
    }
  return {violations == 0 && unverified == 0,
          std::to_string(records) + " records, " + std::to_string(violations) +
              " violations, " + std::to_string(unverified) + " unverified" + first};
}

Verdict criterion10() {
  std::size_t bad = 0;
  for (const auto& v : g_verified)
    if (!validate_bd(v.c, v.delta)) ++bad;
  return {!g_verified.empty() && bad == 0,
          std::to_string(g_verified.size()) + " verified products, " + std::to_string(bad) +
              " not delta-BD"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"oracle equivalence, basic", criterion1},
      {"oracle equivalence, recursive", criterion2},
      {"small-entry product", criterion3},
      {"approximation bounds", criterion4},
      {"candidate soundness", criterion5},
      {"sampling coverage", criterion6},
      {"collision statistics", criterion7},
      {"incremental collision equality", criterion8},
      {"work counters", criterion9},
      {"BD preservation", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
