#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "bdmp/matrix.hpp"
#include "support.hpp"

namespace bdmp {
namespace {

using testing::adjacent_bounded;

TEST(SaturatingAdd, InfIsAbsorbing) {
  EXPECT_EQ(saturating_add(5, kInf), kInf);
  EXPECT_EQ(saturating_add(kInf, -kMaxMagnitude), kInf);
  EXPECT_EQ(saturating_add(kInf, kInf), kInf);
}

TEST(SaturatingAdd, FiniteWithinHeadroomIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Value> v(-kMaxMagnitude, kMaxMagnitude);
  for (int t = 0; t < 1000; ++t) {
    const Value x = v(rng), y = v(rng);
    EXPECT_EQ(saturating_add(x, y), x + y);
  }
}

TEST(Matrix, RejectsEntriesBeyondHeadroom) {
  EXPECT_THROW(Matrix(1, 1, kMaxMagnitude + 1), std::out_of_range);
  EXPECT_THROW(Matrix(1, 2, std::vector<Value>{0, -kMaxMagnitude - 1}), std::out_of_range);
  EXPECT_NO_THROW(Matrix(1, 1, kInf));
  EXPECT_THROW(Matrix(2, 2, std::vector<Value>{1, 2, 3}), std::invalid_argument);
}

TEST(Matrix, TransposeSwapsIndices) {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, kInf}});
  const Matrix t = m.transposed();
  ASSERT_EQ(t.rows(), 3u);
  EXPECT_EQ(t(2, 1), kInf);
  EXPECT_EQ(t(1, 0), 2);
}

TEST(GenerateBd, SingleEntry) {
  const BDMatrix m = generate_bd(1, 1, 0);
  EXPECT_EQ(m.n(), 1u);
  EXPECT_TRUE(validate_bd(m.base(), 1));
}

TEST(GenerateBd, ValidatesForTheDocumentedInstance) {
  const BDMatrix m = generate_bd(64, 3, 7);
  EXPECT_TRUE(validate_bd(m.base(), 3));
  EXPECT_TRUE(adjacent_bounded(m.base(), 3));
}

TEST(GenerateBd, DeterministicForFixedSeed) {
  EXPECT_EQ(generate_bd(64, 3, 7).base(), generate_bd(64, 3, 7).base());
  EXPECT_NE(generate_bd(64, 3, 7).base(), generate_bd(64, 3, 8).base());
}

TEST(GenerateBd, FrozenFingerprint) {
  // Frozen from the first accepted build; guards the generator stream.
  const BDMatrix m = generate_bd(8, 3, 7);
  const std::vector<Value> row0{0, 1, 3, 1, 3, 1, -1, 1};
  for (std::size_t j = 0; j < row0.size(); ++j) EXPECT_EQ(m(0, j), row0[j]);
  EXPECT_EQ(testing::fingerprint(m.base()), 1140384866398588855ULL);
}

TEST(GenerateBd, PropertyOverSeeds) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Value delta = 1 + static_cast<Value>(seed % 6);
    const BDMatrix m = generate_bd(32, delta, seed);
    ASSERT_TRUE(validate_bd(m.base(), delta)) << "seed " << seed;
    ASSERT_TRUE(adjacent_bounded(m.base(), delta)) << "seed " << seed;
  }
}

TEST(GenerateBd, UsesTheFullStepRange) {
  // With delta = 3 both -2 and +2 steps must occur somewhere.
  const Matrix m = generate_bd(64, 3, 11).base();
  bool up = false, down = false;
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j + 1 < 64; ++j) {
      up |= m(i, j + 1) - m(i, j) == 2;
      down |= m(i, j + 1) - m(i, j) == -2;
    }
  EXPECT_TRUE(up);
  EXPECT_TRUE(down);
}

TEST(GenerateBd, RejectsBadArguments) {
  EXPECT_THROW(generate_bd(3, 1, 0), std::invalid_argument);
  EXPECT_THROW(generate_bd(0, 1, 0), std::invalid_argument);
  EXPECT_THROW(generate_bd(4, 0, 0), std::invalid_argument);
  EXPECT_THROW(generate_bd(4, -2, 0), std::invalid_argument);
}

TEST(ValidateBd, Examples) {
  EXPECT_TRUE(validate_bd(Matrix(4, 4, 0), 1));
  EXPECT_FALSE(validate_bd(Matrix::from_rows({{0, 5}, {0, 0}}), 3));
  // Strict inequality: a gap equal to delta fails.
  EXPECT_FALSE(validate_bd(Matrix::from_rows({{0, 3}, {1, 2}}), 3));
  EXPECT_TRUE(validate_bd(Matrix::from_rows({{0, 2}, {1, 2}}), 3));
  EXPECT_FALSE(validate_bd(Matrix::from_rows({{0, 0}, {3, 1}}), 3));
}

TEST(ValidateBd, ContractViolationsThrow) {
  EXPECT_THROW(validate_bd(Matrix(2, 3, 0), 1), std::invalid_argument);
  EXPECT_THROW(validate_bd(Matrix::from_rows({{0, kInf}, {0, 0}}), 1), std::invalid_argument);
}

TEST(BDMatrix, ConstructionChecks) {
  EXPECT_THROW(BDMatrix(Matrix(3, 3, 0), 1), std::invalid_argument);
  EXPECT_THROW(BDMatrix(Matrix::from_rows({{0, 5}, {0, 0}}), 3), std::invalid_argument);
  EXPECT_THROW(BDMatrix(Matrix(2, 2, 0), 0), std::invalid_argument);
  EXPECT_NO_THROW(BDMatrix(Matrix(2, 2, 0), 1));
}

TEST(Padding, ReplicatesEdgesAndKeepsBd) {
  Matrix m(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = static_cast<Value>(i) - static_cast<Value>(j);
  const Matrix p = pad_to_power_of_two(m);
  ASSERT_EQ(p.rows(), 8u);
  EXPECT_EQ(p(7, 7), m(4, 4));
  EXPECT_EQ(p(2, 6), m(2, 4));
  EXPECT_TRUE(validate_bd(p, 2));
  EXPECT_EQ(crop(p, 5, 5), m);
  EXPECT_EQ(pad_to_power_of_two(p), p);
}

TEST(Padding, LeavesTheProductUnchanged) {
  std::mt19937_64 rng(5);
  const Matrix a = crop(generate_bd(8, 2, 1).base(), 6, 6);
  const Matrix b = crop(generate_bd(8, 2, 2).base(), 6, 6);
  const Matrix padded = testing::oracle_minplus(pad_to_power_of_two(a), pad_to_power_of_two(b));
  EXPECT_EQ(crop(padded, 6, 6), testing::oracle_minplus(a, b));
}

TEST(MatrixIo, RoundTripWithInf) {
  const Matrix m = Matrix::from_rows({{1, kInf}, {-7, 0}});
  std::stringstream ss;
  format_matrix(ss, m);
  const MatrixFile f = parse_matrix(ss);
  EXPECT_EQ(f.matrix, m);
  EXPECT_FALSE(f.delta.has_value());
}

TEST(MatrixIo, RoundTripThroughFileWithDelta) {
  const auto path = std::filesystem::temp_directory_path() / "bdmp_io_roundtrip.mpm";
  const BDMatrix m = generate_bd(16, 4, 9);
  write_matrix(m.base(), path.string(), 4);
  const MatrixFile f = read_matrix_file(path.string());
  EXPECT_EQ(f.matrix, m.base());
  ASSERT_TRUE(f.delta.has_value());
  EXPECT_EQ(*f.delta, 4);
  EXPECT_EQ(read_matrix(path.string()), m.base());
  std::filesystem::remove(path);
}

TEST(MatrixIo, ExtremeValuesRoundTrip) {
  const Matrix m = Matrix::from_rows({{kMaxMagnitude, -kMaxMagnitude, kInf}});
  std::stringstream ss;
  format_matrix(ss, m);
  EXPECT_EQ(parse_matrix(ss).matrix, m);
}

TEST(MatrixIo, InfToken) {
  std::istringstream in("MPM1 1 2\n0 inf\n");
  EXPECT_EQ(parse_matrix(in).matrix(0, 1), kInf);
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_matrix(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(MatrixIo, TooManyRows) {
  EXPECT_EQ(parse_error_line("MPM1 2 2\n1 2\n3 4\n5 6\n"), 4u);
}

TEST(MatrixIo, MalformedInputsReportLines) {
  EXPECT_EQ(parse_error_line("MPM2 2 2\n1 2\n3 4\n"), 1u);
  EXPECT_EQ(parse_error_line("MPM1 2\n"), 1u);
  EXPECT_EQ(parse_error_line("MPM1 2 2\n1 2 3\n3 4\n"), 2u);
  EXPECT_EQ(parse_error_line("MPM1 2 2\n1 2\n3 x\n"), 3u);
  EXPECT_EQ(parse_error_line("MPM1 1 1\n99999999999999999999\n"), 2u);
  EXPECT_EQ(parse_error_line("MPM1 1 1\n2305843009213693953\n"), 2u);
  EXPECT_EQ(parse_error_line("MPM1 2 2\n1 2\n"), 3u);
  EXPECT_EQ(parse_error_line("MPM1 1 1\nDELTA 0\n1\n"), 2u);
}

TEST(MatrixIo, DeltaLineIsOptional) {
  std::istringstream in("MPM1 1 1\nDELTA 3\n5\n");
  const MatrixFile f = parse_matrix(in);
  EXPECT_EQ(f.matrix(0, 0), 5);
  EXPECT_EQ(f.delta, std::optional<Value>(3));
}

TEST(MatrixIo, MissingFileThrows) {
  EXPECT_THROW(read_matrix("/nonexistent/bdmp/matrix.mpm"), std::runtime_error);
}

}  // namespace
}  // namespace bdmp
