#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "monoalign/types.hpp"

namespace monoalign::bench {

std::vector<int> default_t_values();  // 128, 256, ..., 2048

struct BenchPlan {
  std::vector<int> t_values = default_t_values();
  int batch_size = 32;
  int s_ratio = 4;      // S = s_ratio * T
  int repeats = 20;
  int warmup = 3;
  std::vector<EngineKind> engines = {EngineKind::Reference, EngineKind::Parallel};
  std::uint64_t seed = 0;
  int threads = 0;      // forwarded to the parallel engine
};

struct BenchRow {
  EngineKind engine{};
  int t = 0;
  int s = 0;
  int b = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p20_ms = 0.0;
  double p80_ms = 0.0;
};

struct EnvInfo {
  std::string cpu_model;
  unsigned hardware_threads = 0;
  std::string compiler;
  std::string build;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  EnvInfo env;
};

enum class ReportFormat { Csv, Markdown };

/// Deterministic batch of i.i.d. uniform [-5, 5] float32 likelihoods with
/// full valid lengths. Same (b, t, s, seed) always yields the same bytes.
LikelihoodBatch generate_random_batch(int b, int t, int s, std::uint64_t seed);

/// Runs the measurement protocol: for each (T, engine), one shared random
/// batch, warmup runs discarded, then `repeats` wall-clock timings around
/// the align call alone.
BenchReport run_bench(const BenchPlan& plan);

/// Renders a report. Csv: comment lines with the environment block, a
/// header row, one data row per (engine, T). Markdown: table pivoted with
/// one row per T and one median column per engine.
std::string emit_report(const BenchReport& report, ReportFormat format);

struct ScalingFit {
  double slope_ms_per_cell = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of median time against T*S cell count for one engine.
/// Needs at least 4 distinct T values.
ScalingFit fit_scaling(const BenchReport& report, EngineKind engine);

EnvInfo collect_env_info();

const char* engine_name(EngineKind engine);

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One derived stream value, for mixing a base seed with an index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0xd1342543de82ef95ULL * (index + 1));
  return splitmix64(state);
}

using AlignFn = std::function<AlignmentMatrix(const LikelihoodBatch&, const MasConfig&)>;

/// run_bench with the engine dispatch injected, so tests can verify the
/// timed region contains the align call and nothing else.
BenchReport run_bench_with(const BenchPlan& plan, const AlignFn& align_fn);

}  // namespace detail

}  // namespace monoalign::bench
