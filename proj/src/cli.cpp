#include "bdmp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bdmp/basic.hpp"
#include "bdmp/random.hpp"
#include "bdmp/recursive.hpp"
#include "bdmp/semiring.hpp"

namespace bdmp {

namespace {

constexpr std::size_t kCsvFields = 14;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::logic_error("format_double: to_chars failed");
  return std::string(buf, end);
}

template <typename T>
T parse_number(const std::string& field, const char* name) {
  T v{};
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || field.empty())
    throw std::invalid_argument(std::string("csv: bad ") + name + " field '" + field + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

BDMatrix as_bd(const Matrix& m, Value delta) {
  return BDMatrix(m, delta);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void fill_counters(RunRecord& rec, const RunStats& stats) {
  rec.block_products = stats.counters.block_products;
  rec.collision_checks = stats.counters.collision_checks;
  rec.collisions_found = stats.counters.collisions_found;
  rec.fallback_pairs = stats.counters.fallback_pairs;
  rec.poly_degree_ops = stats.counters.poly_degree_ops;
}

RunRecord base_record(const std::string& algo, std::size_t n, Value delta,
                      const AlgoParams& p) {
  RunRecord rec;
  rec.algo = algo;
  rec.n = n;
  rec.delta = delta;
  rec.alpha = p.alpha;
  rec.beta = p.beta;
  rec.gamma = p.gamma;
  rec.c0 = p.c0;
  rec.seed = p.seed;
  return rec;
}

}  // namespace

std::string format_record(const RunRecord& r) {
  std::ostringstream os;
  os << r.algo << ',' << r.n << ',' << r.delta << ',' << format_double(r.alpha) << ','
     << format_double(r.beta) << ',' << format_double(r.gamma) << ',' << r.c0 << ','
     << r.seed << ',' << format_double(r.wall_ms) << ',' << r.block_products << ','
     << r.collision_checks << ',' << r.collisions_found << ',' << r.fallback_pairs << ',';
  if (r.verified) os << (*r.verified ? "true" : "false");
  return os.str();
}

RunRecord parse_record(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != kCsvFields)
    throw std::invalid_argument("csv: expected 14 fields, got " + std::to_string(f.size()));
  RunRecord r;
  r.algo = f[0];
  if (!is_known_algo(r.algo)) throw std::invalid_argument("csv: unknown algo '" + r.algo + "'");
  r.n = parse_number<std::size_t>(f[1], "n");
  r.delta = parse_number<Value>(f[2], "delta");
  r.alpha = parse_number<double>(f[3], "alpha");
  r.beta = parse_number<double>(f[4], "beta");
  r.gamma = parse_number<double>(f[5], "gamma");
  r.c0 = parse_number<std::uint32_t>(f[6], "c0");
  r.seed = parse_number<std::uint64_t>(f[7], "seed");
  r.wall_ms = parse_number<double>(f[8], "wall_ms");
  r.block_products = parse_number<std::uint64_t>(f[9], "block_products");
  r.collision_checks = parse_number<std::uint64_t>(f[10], "collision_checks");
  r.collisions_found = parse_number<std::uint64_t>(f[11], "collisions_found");
  r.fallback_pairs = parse_number<std::uint64_t>(f[12], "fallback_pairs");
  if (f[13] == "true")
    r.verified = true;
  else if (f[13] == "false")
    r.verified = false;
  else if (!f[13].empty())
    throw std::invalid_argument("csv: bad verified field '" + f[13] + "'");
  return r;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << format_record(r) << '\n';
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("csv: missing or unexpected header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

bool is_known_algo(const std::string& algo) {
  return algo == "naive" || algo == "smallentry" || algo == "basic" || algo == "recursive";
}

AlgoParams default_params(const std::string& algo) {
  return algo == "recursive" ? AlgoParams::recursive_defaults() : AlgoParams::basic_defaults();
}

Matrix run_algorithm(const std::string& algo, const Matrix& a, const Matrix& b, Value delta,
                     const AlgoParams& params, std::optional<Value> m_bound,
                     RunStats* stats) {
  if (algo == "naive") return minplus_naive(a, b);
  if (algo == "smallentry") {
    const Value m = m_bound ? *m_bound : std::max(max_abs_finite(a), max_abs_finite(b));
    return minplus_small_entries(a, b, m);
  }
  if (algo != "basic" && algo != "recursive")
    throw std::invalid_argument("unknown algo '" + algo + "'");
  if (!a.square() || a.rows() != b.rows() || !b.square())
    throw std::invalid_argument(algo + ": inputs must be square and of equal size");
  const std::size_t n = a.rows();
  const bool pad = !is_power_of_two(n);
  const Matrix ap = pad ? pad_to_power_of_two(a) : a;
  const Matrix bp = pad ? pad_to_power_of_two(b) : b;
  const BDMatrix abd = as_bd(ap, delta), bbd = as_bd(bp, delta);
  Matrix c = algo == "basic" ? basic_minplus(abd, bbd, params, stats)
                             : recursive_minplus(abd, bbd, params, stats);
  return pad ? crop(c, n, n) : c;
}

void cmd_gen(std::size_t n, Value delta, std::uint64_t seed, const std::string& out_path) {
  const BDMatrix m = generate_bd(n, delta, seed);
  write_matrix(m.base(), out_path, delta);
}

RunOutcome cmd_run(const RunOptions& opts) {
  if (!is_known_algo(opts.algo)) throw std::invalid_argument("unknown algo '" + opts.algo + "'");
  opts.params.validate();
  const MatrixFile fa = read_matrix_file(opts.a_path);
  const MatrixFile fb = read_matrix_file(opts.b_path);
  if (fa.matrix.cols() != fb.matrix.rows())
    throw std::invalid_argument("run: inner dimensions differ");
  Value delta = 0;
  if (opts.algo == "basic" || opts.algo == "recursive") {
    if (!fa.delta || !fb.delta) throw std::invalid_argument("run: inputs need DELTA headers");
    if (*fa.delta != *fb.delta) throw std::invalid_argument("run: DELTA headers differ");
    delta = *fa.delta;
  } else if (fa.delta && fb.delta && *fa.delta == *fb.delta) {
    delta = *fa.delta;
  }

  RunStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  const Matrix c =
      run_algorithm(opts.algo, fa.matrix, fb.matrix, delta, opts.params, opts.m_bound, &stats);
  RunOutcome outcome;
  outcome.record = base_record(opts.algo, fa.matrix.rows(), delta, opts.params);
  outcome.record.wall_ms = elapsed_ms(t0);
  fill_counters(outcome.record, stats);
  if (opts.verify) outcome.record.verified = c == minplus_naive(fa.matrix, fb.matrix);
  if (opts.algo == "basic" || opts.algo == "recursive")
    outcome.violations = check_work_bounds(stats);
  if (!opts.out_path.empty()) write_matrix(c, opts.out_path);
  return outcome;
}

BenchOutcome cmd_bench(const BenchOptions& opts) {
  for (const auto& algo : opts.algos)
    if (!is_known_algo(algo)) throw std::invalid_argument("unknown algo '" + algo + "'");
  for (std::size_t n : opts.sizes)
    if (!is_power_of_two(n)) throw std::invalid_argument("bench: sizes must be powers of two");
  BenchOutcome out;
  for (std::size_t n : opts.sizes) {
    const BDMatrix a = generate_bd(n, opts.delta, derive_seed(opts.seed, {n, 0}));
    const BDMatrix b = generate_bd(n, opts.delta, derive_seed(opts.seed, {n, 1}));
    const Matrix truth = minplus_naive(a.base(), b.base());
    for (const auto& algo : opts.algos) {
      AlgoParams params = default_params(algo);
      params.seed = opts.seed;
      for (std::size_t rep = 0; rep < opts.reps; ++rep) {
        RunStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        const Matrix c =
            run_algorithm(algo, a.base(), b.base(), opts.delta, params, std::nullopt, &stats);
        RunRecord rec = base_record(algo, n, opts.delta, params);
        rec.wall_ms = elapsed_ms(t0);
        fill_counters(rec, stats);
        rec.verified = c == truth;
        if (algo == "basic" || algo == "recursive")
          for (const auto& v : check_work_bounds(stats))
            out.violations.push_back(algo + " n=" + std::to_string(n) + ": " + v);
        out.records.push_back(std::move(rec));
      }
    }
  }
  if (!opts.csv_path.empty()) {
    std::ofstream f(opts.csv_path);
    if (!f) throw std::runtime_error("bench: cannot open " + opts.csv_path);
    write_csv(f, out.records);
    if (!f) throw std::runtime_error("bench: write failed for " + opts.csv_path);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : split(s, ',')) {
    if (part.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
    out.push_back(part);
  }
  return out;
}

}  // namespace bdmp
