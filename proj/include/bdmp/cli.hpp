#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdmp/counters.hpp"
#include "bdmp/matrix.hpp"
#include "bdmp/params.hpp"

namespace bdmp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerify = 3;
inline constexpr int kExitStrict = 4;

inline constexpr const char* kCsvHeader =
    "algo,n,delta,alpha,beta,gamma,c0,seed,wall_ms,block_products,collision_checks,"
    "collisions_found,fallback_pairs,verified";

struct RunRecord {
  std::string algo;
  std::size_t n = 0;
  Value delta = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::uint32_t c0 = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::uint64_t block_products = 0;
  std::uint64_t collision_checks = 0;
  std::uint64_t collisions_found = 0;
  std::uint64_t fallback_pairs = 0;
  std::uint64_t poly_degree_ops = 0;  // not part of the CSV columns
  std::optional<bool> verified;       // set only when verification ran

  bool operator==(const RunRecord&) const = default;
};

/// One CSV line without a trailing newline. Doubles use shortest round-trip
/// formatting; an unset verified is an empty field.
std::string format_record(const RunRecord& r);

/// Inverse of format_record. Throws std::invalid_argument on malformed input.
RunRecord parse_record(const std::string& line);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// Reads a CSV with the exact header. Throws std::invalid_argument.
std::vector<RunRecord> read_csv(std::istream& in);

bool is_known_algo(const std::string& algo);

/// Default parameters for the named algorithm.
AlgoParams default_params(const std::string& algo);

/// naive | smallentry | basic | recursive. m_bound applies to smallentry and
/// defaults to the largest finite magnitude of either input.
Matrix run_algorithm(const std::string& algo, const Matrix& a, const Matrix& b, Value delta,
                     const AlgoParams& params, std::optional<Value> m_bound,
                     RunStats* stats = nullptr);

/// Writes generate_bd(n, delta, seed) with a DELTA line.
void cmd_gen(std::size_t n, Value delta, std::uint64_t seed, const std::string& out_path);

struct RunOptions {
  std::string algo;
  std::string a_path;
  std::string b_path;
  std::string out_path;
  AlgoParams params;
  std::optional<Value> m_bound;
  bool verify = false;
  bool strict = false;
};

struct RunOutcome {
  RunRecord record;
  std::vector<std::string> violations;  // work-bound failures
};

/// Reads both inputs, runs, writes the product. Inputs whose size is not a
/// power of two are padded by edge replication and the product is cropped.
RunOutcome cmd_run(const RunOptions& opts);

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::vector<std::string> algos;
  std::size_t reps = 1;
  std::string csv_path;
  std::uint64_t seed = 0;
  Value delta = 2;
};

struct BenchOutcome {
  std::vector<RunRecord> records;
  std::vector<std::string> violations;  // prefixed with algo and n
};

/// One verified record per (n, algo, rep), in that nesting order. Every rep
/// reuses the same inputs and seed.
BenchOutcome cmd_bench(const BenchOptions& opts);

/// Splits "32,64,128" style lists. Throws std::invalid_argument.
std::vector<std::string> split_list(const std::string& s);

}  // namespace bdmp
