#include "bdmp/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bdmp {

namespace {

void check_entry(Value v) {
  if (v != kInf && (v > kMaxMagnitude || v < -kMaxMagnitude))
    throw std::out_of_range("matrix entry exceeds 2^60 headroom: " +
                            std::to_string(v));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Value fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("matrix dimensions must be positive");
  check_entry(fill);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Value> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("matrix dimensions must be positive");
  if (data_.size() != rows * cols)
    throw std::invalid_argument("entry count does not match dimensions");
  std::for_each(data_.begin(), data_.end(), check_entry);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Value>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("matrix dimensions must be positive");
  std::vector<Value> flat;
  flat.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) {
    if (r.size() != rows.front().size())
      throw std::invalid_argument("ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), rows.front().size(), std::move(flat));
}

bool Matrix::all_finite() const noexcept {
  return std::none_of(data_.begin(), data_.end(), is_inf);
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool validate_bd(const Matrix& m, Value delta) {
  if (!m.square()) throw std::invalid_argument("validate_bd: matrix is not square");
  if (!m.all_finite()) throw std::invalid_argument("validate_bd: matrix contains inf");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 < n && std::abs(m(i, j) - m(i, j + 1)) >= delta) return false;
      if (i + 1 < n && std::abs(m(i, j) - m(i + 1, j)) >= delta) return false;
    }
  }
  return true;
}

BDMatrix::BDMatrix(Matrix m, Value delta) : base_(std::move(m)), delta_(delta) {
  if (delta_ < 1) throw std::invalid_argument("delta must be positive");
  if (!base_.square()) throw std::invalid_argument("BDMatrix must be square");
  if (!is_power_of_two(base_.rows()))
    throw std::invalid_argument("BDMatrix size must be a power of two");
  if (!validate_bd(base_, delta_))
    throw std::invalid_argument("matrix is not delta-bounded-difference");
}

BDMatrix generate_bd(std::size_t n, Value delta, std::uint64_t seed) {
  if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of two");
  if (delta < 1) throw std::invalid_argument("delta must be positive");
  std::mt19937_64 rng(seed);
  const Value step = delta - 1;
  auto draw = [&rng](Value lo, Value hi) {
    return std::uniform_int_distribution<Value>(lo, hi)(rng);
  };
  Matrix m(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      Value lo = -kMaxMagnitude, hi = kMaxMagnitude;
      if (j > 0) {
        lo = std::max(lo, m(i, j - 1) - step);
        hi = std::min(hi, m(i, j - 1) + step);
      }
      if (i > 0) {
        lo = std::max(lo, m(i - 1, j) - step);
        hi = std::min(hi, m(i - 1, j) + step);
      }
      // Both neighbours touch m(i-1, j-1), so they differ by at most
      // 2*step and the interval is never empty.
      m(i, j) = draw(lo, hi);
    }
  }
  return BDMatrix(std::move(m), delta);
}

Matrix pad_to_power_of_two(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("padding requires a square matrix");
  std::size_t p = 1;
  while (p < m.rows()) p <<= 1;
  if (p == m.rows()) return m;
  Matrix out(p, p);
  const std::size_t last = m.rows() - 1;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out(i, j) = m(std::min(i, last), std::min(j, last));
  return out;
}

Matrix crop(const Matrix& m, std::size_t rows, std::size_t cols) {
  if (rows > m.rows() || cols > m.cols())
    throw std::invalid_argument("crop larger than source");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

bool parse_int(const std::string& tok, Value& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::size_t parse_dim(const std::string& tok, std::size_t line) {
  Value v = 0;
  if (!parse_int(tok, v) || v <= 0)
    throw ParseError(line, "invalid dimension '" + tok + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

MatrixFile parse_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing MPM1 header");
  ++lineno;
  auto header = split_tokens(line);
  if (header.size() != 3 || header[0] != "MPM1")
    throw ParseError(lineno, "expected 'MPM1 <rows> <cols>'");
  const std::size_t rows = parse_dim(header[1], lineno);
  const std::size_t cols = parse_dim(header[2], lineno);

  MatrixFile file;
  std::vector<Value> entries;
  entries.reserve(rows * cols);
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "DELTA") {
      if (lineno != 2) throw ParseError(lineno, "DELTA must directly follow the header");
      Value d = 0;
      if (toks.size() != 2 || !parse_int(toks[1], d) || d <= 0)
        throw ParseError(lineno, "invalid DELTA line");
      file.delta = d;
      continue;
    }
    if (rows_read == rows) throw ParseError(lineno, "more rows than declared");
    if (toks.size() != cols)
      throw ParseError(lineno, "expected " + std::to_string(cols) + " tokens, got " +
                                   std::to_string(toks.size()));
    for (const auto& tok : toks) {
      Value v = 0;
      if (tok == "inf") {
        v = kInf;
      } else if (!parse_int(tok, v)) {
        throw ParseError(lineno, "invalid token '" + tok + "'");
      } else if (v > kMaxMagnitude || v < -kMaxMagnitude) {
        throw ParseError(lineno, "value out of range '" + tok + "'");
      }
      entries.push_back(v);
    }
    ++rows_read;
  }
  if (rows_read != rows)
    throw ParseError(lineno + 1, "expected " + std::to_string(rows) + " rows, got " +
                                 std::to_string(rows_read));
  file.matrix = Matrix(rows, cols, std::move(entries));
  return file;
}

void format_matrix(std::ostream& out, const Matrix& m, std::optional<Value> delta) {
  out << "MPM1 " << m.rows() << ' ' << m.cols() << '\n';
  if (delta) out << "DELTA " << *delta << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      if (is_inf(m(i, j)))
        out << "inf";
      else
        out << m(i, j);
    }
    out << '\n';
  }
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_matrix(in);
}

Matrix read_matrix(const std::string& path) { return read_matrix_file(path).matrix; }

void write_matrix(const Matrix& m, const std::string& path, std::optional<Value> delta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  format_matrix(out, m, delta);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace bdmp
