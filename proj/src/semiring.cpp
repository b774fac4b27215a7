#include "bdmp/semiring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bdmp/kernel.hpp"

namespace bdmp {

Matrix minplus_naive(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("minplus_naive: inner dimensions differ");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  Matrix c(m, n, kInf);
  std::span<Value> out = c.data();
  std::span<const Value> bd = b.data();
  for (std::size_t i = 0; i < m; ++i) {
    Value* crow = out.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const Value av = a(i, p);
      if (is_inf(av)) continue;
      const Value* brow = bd.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const Value s = saturating_add(av, brow[j]);
        if (s < crow[j]) crow[j] = s;
      }
    }
  }
  return c;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t degree_bound)
    : rows_(rows),
      cols_(cols),
      degree_bound_(degree_bound),
      coeffs_(rows * cols * (degree_bound + 1), 0) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("PolyMatrix dimensions must be positive");
}

PolyMatrix encode_poly(const Matrix& a, Value m_bound) {
  if (m_bound < 0) throw std::invalid_argument("encode_poly: negative bound");
  PolyMatrix p(a.rows(), a.cols(), static_cast<std::size_t>(2 * m_bound));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Value v = a(i, j);
      if (is_inf(v)) continue;
      if (v < -m_bound || v > m_bound)
        throw std::out_of_range("encode_poly: entry " + std::to_string(v) +
                                " outside [-" + std::to_string(m_bound) + ", " +
                                std::to_string(m_bound) + "]");
      p.cell(i, j)[static_cast<std::size_t>(v + m_bound)] = 1;
    }
  }
  return p;
}

namespace {

// Dense (rows x cols) coefficient slice of one degree; empty if all zero.
std::vector<std::uint64_t> degree_slice(const PolyMatrix& p, std::size_t d) {
  std::vector<std::uint64_t> s(p.rows() * p.cols(), 0);
  bool any = false;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const std::uint64_t c = p.cell(i, j)[d];
      s[i * p.cols() + j] = c;
      any = any || c != 0;
    }
  }
  if (!any) s.clear();
  return s;
}

}  // namespace

PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("poly_matmul: inner dimensions differ");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const std::size_t da = a.degree_bound(), db = b.degree_bound();

  std::vector<std::vector<std::uint64_t>> a_slices(da + 1), b_slices(db + 1);
  for (std::size_t d = 0; d <= da; ++d) a_slices[d] = degree_slice(a, d);
  for (std::size_t d = 0; d <= db; ++d) b_slices[d] = degree_slice(b, d);

  PolyMatrix c(m, n, da + db);
  std::vector<std::uint64_t> acc(m * n);
  for (std::size_t d = 0; d <= da + db; ++d) {
    std::fill(acc.begin(), acc.end(), 0);
    bool touched = false;
    const std::size_t lo = d > db ? d - db : 0;
    const std::size_t hi = std::min(d, da);
    for (std::size_t x = lo; x <= hi; ++x) {
      const auto& as = a_slices[x];
      const auto& bs = b_slices[d - x];
      if (as.empty() || bs.empty()) continue;
      gemm_accumulate(as, bs, acc, m, k, n);
      touched = true;
    }
    if (!touched) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) c.cell(i, j)[d] = acc[i * n + j];
  }
  return c;
}

Matrix extract_min(const PolyMatrix& c, Value m_total) {
  Matrix out(c.rows(), c.cols(), kInf);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      const auto cell = c.cell(i, j);
      auto it = std::find_if(cell.begin(), cell.end(), [](std::uint64_t x) { return x != 0; });
      if (it != cell.end()) out(i, j) = static_cast<Value>(it - cell.begin()) - m_total;
    }
  }
  return out;
}

Matrix minplus_small_entries(const Matrix& a, const Matrix& b, Value m_bound) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("minplus_small_entries: inner dimensions differ");
  return extract_min(poly_matmul(encode_poly(a, m_bound), encode_poly(b, m_bound)),
                     2 * m_bound);
}

Value max_abs_finite(const Matrix& m) {
  Value best = 0;
  for (Value v : m.data())
    if (!is_inf(v)) best = std::max(best, v < 0 ? -v : v);
  return best;
}

}  // namespace bdmp
