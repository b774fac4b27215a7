#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdmp {

using Value = std::int64_t;

/// Distinguished +infinity entry. Absorbing under saturating_add.
inline constexpr Value kInf = std::numeric_limits<Value>::max();

/// Finite entries must satisfy |v| <= kMaxMagnitude so that sums of two
/// entries plus per-segment offsets stay far from overflow.
inline constexpr Value kMaxMagnitude = Value{1} << 60;

constexpr bool is_inf(Value v) noexcept { return v == kInf; }

constexpr Value saturating_add(Value x, Value y) noexcept {
  return (x == kInf || y == kInf) ? kInf : x + y;
}

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// Dense row-major matrix of extended integers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Value fill = 0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Value> entries);

  static Matrix from_rows(const std::vector<std::vector<Value>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Value operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  // Unchecked write access for builders; headroom is the caller's job.
  Value& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Value> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Value> data() const noexcept { return data_; }
  std::span<Value> data() noexcept { return data_; }

  bool all_finite() const noexcept;
  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> data_;
};

/// Square all-finite matrix whose adjacent entries differ by less than delta.
class BDMatrix {
 public:
  /// Throws std::invalid_argument unless m is square with power-of-two size,
  /// all finite, delta >= 1 and the bounded-difference property holds.
  BDMatrix(Matrix m, Value delta);

  const Matrix& base() const noexcept { return base_; }
  Value delta() const noexcept { return delta_; }
  std::size_t n() const noexcept { return base_.rows(); }

  Value operator()(std::size_t r, std::size_t c) const noexcept {
    return base_(r, c);
  }

 private:
  Matrix base_;
  Value delta_;
};

/// Strict adjacency check. Throws std::invalid_argument for non-square or
/// INF-containing input rather than returning false.
bool validate_bd(const Matrix& m, Value delta);

/// Seeded 2-D random walk: each entry is drawn uniformly from the integers
/// within distance delta-1 of both its upper and its left neighbour.
BDMatrix generate_bd(std::size_t n, Value delta, std::uint64_t seed);

/// Extends a square matrix to the next power-of-two size by replicating its
/// last row and column. Replication keeps the bounded-difference property and
/// leaves the min-plus product on the original index range unchanged.
Matrix pad_to_power_of_two(const Matrix& m);

/// Top-left rows x cols submatrix.
Matrix crop(const Matrix& m, std::size_t rows, std::size_t cols);

// ---------------------------------------------------------------------------
// MPM1 text format

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct MatrixFile {
  Matrix matrix;
  std::optional<Value> delta;
};

MatrixFile parse_matrix(std::istream& in);
void format_matrix(std::ostream& out, const Matrix& m,
                   std::optional<Value> delta = std::nullopt);

MatrixFile read_matrix_file(const std::string& path);
Matrix read_matrix(const std::string& path);
void write_matrix(const Matrix& m, const std::string& path,
                  std::optional<Value> delta = std::nullopt);

}  // namespace bdmp
