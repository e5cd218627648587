// Command-line front end: align (file to file), verify (engines against the
// exhaustive oracle), bench (timing sweep).
//
// Exit codes are stable API: 0 success, 1 IO/engine failure, 2 usage or
// validation error, 3 verification mismatch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monoalign/align.hpp"
#include "monoalign/bench.hpp"
#include "monoalign/oracle.hpp"
#include "monoalign/tensor_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;

struct AlignArgs {
  std::string input;
  std::string output;
  std::string engine = "parallel";
  double neg_val = static_cast<double>(monoalign::kDefaultMaxNegVal);
  int threads = 0;
};

struct VerifyArgs {
  int trials = 1000;
  int t_max = 6;
  int s_max = 10;
  std::uint64_t seed = 0;
  bool inject_fault = false;
};

struct BenchArgs {
  std::vector<int> t_values = monoalign::bench::default_t_values();
  int batch_size = 32;
  int s_ratio = 4;
  int repeats = 20;
  int warmup = 3;
  std::vector<std::string> engines = {"reference", "parallel"};
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "csv";
  std::string out = "-";
};

int run_align(const AlignArgs& args) {
  monoalign::io::Tensor tensor = monoalign::io::read_tensor(args.input);
  const auto* batch = std::get_if<monoalign::LikelihoodBatch>(&tensor);
  if (batch == nullptr) {
    throw monoalign::ValidationError(
        monoalign::Errc::ShapeMismatch,
        args.input + " holds a uint8 alignment tensor; align needs float32 likelihoods");
  }
  monoalign::MasConfig cfg;
  cfg.engine = args.engine == "reference" ? monoalign::EngineKind::Reference
                                          : monoalign::EngineKind::Parallel;
  cfg.max_neg_val = static_cast<float>(args.neg_val);
  cfg.threads = args.threads;
  const monoalign::AlignmentMatrix result = monoalign::align(*batch, cfg);
  monoalign::io::write_tensor(args.output, result);
  return kExitOk;
}

double path_score(const monoalign::LikelihoodView& q, const monoalign::PathVector& path) {
  double sum = 0.0;
  for (int j = 0; j < q.speech; ++j) {
    sum += static_cast<double>(q.at(path[j], j));
  }
  return sum;
}

int run_verify(const VerifyArgs& args) {
  using monoalign::bench::detail::mix_seed;
  using monoalign::bench::detail::splitmix64;

  int pass = 0;
  int fail = 0;
  for (int k = 0; k < args.trials; ++k) {
    const std::uint64_t trial_seed = mix_seed(args.seed, static_cast<std::uint64_t>(k));
    std::uint64_t state = trial_seed;
    int t = 1 + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(args.t_max));
    t = std::min(t, args.s_max);
    const int s =
        t + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(args.s_max - t + 1));

    const monoalign::LikelihoodBatch batch =
        monoalign::bench::generate_random_batch(1, t, s, trial_seed);
    const monoalign::LikelihoodView q = monoalign::item_view(batch, 0);

    const monoalign::AlignmentMatrix ref = monoalign::reference::align_reference(batch);
    const monoalign::AlignmentMatrix par = monoalign::parallel::align_parallel(batch);
    const monoalign::PathVector ref_path = monoalign::path_from_matrix(ref);
    monoalign::PathVector par_path = monoalign::path_from_matrix(par);
    if (args.inject_fault && !par_path.empty()) {
      par_path.back() += par_path.back() > 0 ? -1 : 1;
    }
    const monoalign::oracle::BestPaths best = monoalign::oracle::best_paths(q);

    const double ref_score = path_score(q, ref_path);
    const double tol = 1e-5 * std::max(1.0, std::abs(best.max_score));
    bool ok = std::abs(ref_score - best.max_score) <= tol;
    ok = ok && par_path == ref_path;
    if (ok && best.paths.size() == 1) {
      ok = ref_path == best.paths.front();
    }

    if (ok) {
      ++pass;
    } else {
      ++fail;
      std::cerr << "mismatch: seed=" << trial_seed << " t=" << t << " s=" << s
                << " engine_score=" << ref_score << " oracle_score=" << best.max_score
                << "\n";
    }
  }
  std::cout << "trials " << args.trials << " pass " << pass << " fail " << fail << "\n";
  return fail == 0 ? kExitOk : kExitMismatch;
}

int run_bench(const BenchArgs& args) {
  monoalign::bench::BenchPlan plan;
  plan.t_values = args.t_values;
  plan.batch_size = args.batch_size;
  plan.s_ratio = args.s_ratio;
  plan.repeats = args.repeats;
  plan.warmup = args.warmup;
  plan.seed = args.seed;
  plan.threads = args.threads;
  plan.engines.clear();
  for (const std::string& name : args.engines) {
    plan.engines.push_back(name == "reference" ? monoalign::EngineKind::Reference
                                               : monoalign::EngineKind::Parallel);
  }

  const monoalign::bench::BenchReport report = monoalign::bench::run_bench(plan);
  const auto format = args.format == "markdown" ? monoalign::bench::ReportFormat::Markdown
                                                : monoalign::bench::ReportFormat::Csv;
  const std::string text = monoalign::bench::emit_report(report, format);

  if (args.out == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream file(args.out);
  file << text;
  file.flush();
  if (!file) {
    throw monoalign::IoError(monoalign::Errc::IoFailure,
                             "cannot write report: " + args.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monotonic alignment toolkit"};
  app.require_subcommand(1);

  AlignArgs align_args;
  CLI::App* align_cmd = app.add_subcommand("align", "align a likelihood tensor file");
  align_cmd->add_option("--input", align_args.input, "input tensor file")->required();
  align_cmd->add_option("--output", align_args.output, "output tensor file")->required();
  align_cmd->add_option("--engine", align_args.engine, "engine to run")
      ->check(CLI::IsMember({"reference", "parallel"}))
      ->capture_default_str();
  align_cmd->add_option("--neg-val", align_args.neg_val, "sentinel for infeasible cells")
      ->capture_default_str();
  align_cmd->add_option("--threads", align_args.threads, "worker threads (0 = all cores)")
      ->capture_default_str();

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check both engines against the exhaustive oracle");
  verify_cmd->add_option("--trials", verify_args.trials, "random instances to run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--t-max", verify_args.t_max, "max text length")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  verify_cmd->add_option("--s-max", verify_args.s_max, "max speech length")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_args.seed, "base seed")->capture_default_str();
  verify_cmd->add_flag("--inject-fault", verify_args.inject_fault)->group("");

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "timing sweep over instance sizes");
  bench_cmd->add_option("--t-values", bench_args.t_values, "text lengths to sweep")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--batch-size", bench_args.batch_size, "items per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--s-ratio", bench_args.s_ratio, "speech length as multiple of T")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_args.repeats, "timed runs per configuration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench_args.warmup, "discarded runs per configuration")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--engines", bench_args.engines, "engines to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"reference", "parallel"}));
  bench_cmd->add_option("--seed", bench_args.seed, "base seed")->capture_default_str();
  bench_cmd->add_option("--threads", bench_args.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  bench_cmd->add_option("--format", bench_args.format, "report format")
      ->check(CLI::IsMember({"csv", "markdown"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "report destination (- = stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (align_cmd->parsed()) {
      return run_align(align_args);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_args);
    }
    return run_bench(bench_args);
  } catch (const monoalign::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const monoalign::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
