#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "bdmp/cli.hpp"

namespace {

void report(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "bound violation: " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact min-plus products of bounded-difference matrices"};
  app.require_subcommand(1);

  std::size_t gen_n = 0;
  bdmp::Value gen_delta = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a random bounded-difference matrix");
  gen->add_option("--n", gen_n, "Dimension (power of two)")->required();
  gen->add_option("--delta", gen_delta, "Adjacent entries differ by less than delta")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output MPM1 path")->required();

  bdmp::RunOptions run_opts;
  std::optional<double> alpha, beta, gamma, omega;
  std::optional<std::uint32_t> c0;
  std::optional<std::uint64_t> seed;
  std::optional<bdmp::Value> m_bound;
  auto* run = app.add_subcommand("run", "Multiply two MPM1 matrices");
  run->add_option("--algo", run_opts.algo, "naive, smallentry, basic or recursive")
      ->required()
      ->check(CLI::IsMember({"naive", "smallentry", "basic", "recursive"}));
  run->add_option("--a", run_opts.a_path, "Left operand")->required();
  run->add_option("--b", run_opts.b_path, "Right operand")->required();
  run->add_option("--out", run_opts.out_path, "Product path")->required();
  run->add_option("--alpha", alpha);
  run->add_option("--beta", beta);
  run->add_option("--gamma", gamma);
  run->add_option("--c0", c0);
  run->add_option("--seed", seed);
  run->add_option("--omega", omega, "Kernel exponent assumed by the recursive slot counts");
  run->add_option("--m-bound", m_bound, "Entry bound for smallentry");
  run->add_flag("--verify", run_opts.verify, "Compare against the naive product");
  run->add_flag("--strict", run_opts.strict, "Fail when a work bound is exceeded");

  std::string sizes = "32,64,128", algos = "naive,basic,recursive", csv;
  std::size_t reps = 1;
  std::uint64_t bench_seed = 0;
  bdmp::Value bench_delta = 2;
  bool bench_strict = false;
  auto* bench = app.add_subcommand("bench", "Benchmark algorithms and emit CSV");
  bench->add_option("--sizes", sizes, "Comma-separated powers of two");
  bench->add_option("--algos", algos, "Comma-separated algorithms");
  bench->add_option("--reps", reps, "Repetitions per (algo, n)")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv, "Output CSV path")->required();
  bench->add_option("--seed", bench_seed);
  bench->add_option("--delta", bench_delta);
  bench->add_flag("--strict", bench_strict, "Fail when a work bound is exceeded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? bdmp::kExitOk : bdmp::kExitUsage;
  }

  try {
    if (*gen) {
      bdmp::cmd_gen(gen_n, gen_delta, gen_seed, gen_out);
      return bdmp::kExitOk;
    }
    if (*run) {
      run_opts.params = bdmp::default_params(run_opts.algo);
      if (alpha) run_opts.params.alpha = *alpha;
      if (beta) run_opts.params.beta = *beta;
      if (gamma) run_opts.params.gamma = *gamma;
      if (c0) run_opts.params.c0 = *c0;
      if (seed) run_opts.params.seed = *seed;
      if (omega) run_opts.params.omega = *omega;
      run_opts.m_bound = m_bound;
      const auto outcome = bdmp::cmd_run(run_opts);
      std::cout << bdmp::format_record(outcome.record) << '\n';
      report(outcome.violations);
      if (outcome.record.verified == false) return bdmp::kExitVerify;
      if (run_opts.strict && !outcome.violations.empty()) return bdmp::kExitStrict;
      return bdmp::kExitOk;
    }
    bdmp::BenchOptions bo;
    for (const auto& s : bdmp::split_list(sizes)) bo.sizes.push_back(std::stoul(s));
    bo.algos = bdmp::split_list(algos);
    bo.reps = reps;
    bo.csv_path = csv;
    bo.seed = bench_seed;
    bo.delta = bench_delta;
    const auto outcome = bdmp::cmd_bench(bo);
    report(outcome.violations);
    for (const auto& r : outcome.records)
      if (r.verified == false) return bdmp::kExitVerify;
    if (bench_strict && !outcome.violations.empty()) return bdmp::kExitStrict;
    return bdmp::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bdmp::kExitUsage;
  }
}
