#include "monoalign/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "monoalign/align.hpp"

namespace monoalign::bench {

namespace {

void validate_plan(const BenchPlan& plan) {
  auto fail = [](const std::string& msg) {
    throw ValidationError(Errc::InvalidConfig, "bench plan: " + msg);
  };
  for (int t : plan.t_values) {
    if (t < 1) {
      fail("t values must be at least 1");
    }
  }
  if (plan.batch_size < 1) {
    fail("batch size must be at least 1");
  }
  if (plan.s_ratio < 1) {
    fail("s ratio must be at least 1");
  }
  if (plan.repeats < 1) {
    fail("repeats must be at least 1");
  }
  if (plan.warmup < 0) {
    fail("warmup cannot be negative");
  }
}

/// Percentile over a sorted sample by linear interpolation between ranks.
double percentile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) {
    return sorted[0];
  }
  const double rank = p / 100.0 * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= n) {
    return sorted[n - 1];
  }
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BenchRow summarize(EngineKind engine, int t, int s, int b, std::vector<double> ms) {
  std::sort(ms.begin(), ms.end());
  BenchRow row;
  row.engine = engine;
  row.t = t;
  row.s = s;
  row.b = b;
  row.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
  row.median_ms = percentile(ms, 50.0);
  row.p20_ms = percentile(ms, 20.0);
  row.p80_ms = percentile(ms, 80.0);
  return row;
}

std::string format_ms(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

std::vector<int> sorted_unique_t(const BenchReport& report) {
  std::vector<int> ts;
  for (const BenchRow& row : report.rows) {
    ts.push_back(row.t);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::vector<EngineKind> engines_in_order(const BenchReport& report) {
  std::vector<EngineKind> engines;
  for (const BenchRow& row : report.rows) {
    if (std::find(engines.begin(), engines.end(), row.engine) == engines.end()) {
      engines.push_back(row.engine);
    }
  }
  return engines;
}

const BenchRow* find_row(const BenchReport& report, EngineKind engine, int t) {
  for (const BenchRow& row : report.rows) {
    if (row.engine == engine && row.t == t) {
      return &row;
    }
  }
  return nullptr;
}

std::string emit_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "# cpu: " << report.env.cpu_model << "\n";
  out << "# hardware_threads: " << report.env.hardware_threads << "\n";
  out << "# compiler: " << report.env.compiler << "\n";
  out << "# build: " << report.env.build << "\n";
  out << "engine,T,S,B,mean_ms,median_ms,p20_ms,p80_ms\n";
  for (const BenchRow& row : report.rows) {
    out << engine_name(row.engine) << "," << row.t << "," << row.s << "," << row.b
        << "," << format_ms(row.mean_ms) << "," << format_ms(row.median_ms) << ","
        << format_ms(row.p20_ms) << "," << format_ms(row.p80_ms) << "\n";
  }
  return out.str();
}

std::string emit_markdown(const BenchReport& report) {
  const auto engines = engines_in_order(report);
  std::ostringstream out;
  out << "CPU: " << report.env.cpu_model
      << " (" << report.env.hardware_threads << " hardware threads)\n";
  out << "Compiler: " << report.env.compiler << ", " << report.env.build
      << " build\n\n";
  out << "| T | S | B |";
  for (EngineKind e : engines) {
    out << " " << engine_name(e) << " median (ms) |";
  }
  out << "\n|---|---|---|";
  for (std::size_t i = 0; i < engines.size(); ++i) {
    out << "---|";
  }
  out << "\n";
  for (int t : sorted_unique_t(report)) {
    const BenchRow* any = nullptr;
    for (EngineKind e : engines) {
      if (const BenchRow* row = find_row(report, e, t)) {
        any = row;
        break;
      }
    }
    out << "| " << t << " | " << any->s << " | " << any->b << " |";
    for (EngineKind e : engines) {
      const BenchRow* row = find_row(report, e, t);
      out << " " << (row ? format_ms(row->median_ms) : "-") << " |";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::vector<int> default_t_values() {
  std::vector<int> ts;
  for (int t = 128; t <= 2048; t += 128) {
    ts.push_back(t);
  }
  return ts;
}

LikelihoodBatch generate_random_batch(int b, int t, int s, std::uint64_t seed) {
  if (b < 1 || t < 1 || s < 1) {
    throw ValidationError(Errc::ZeroDim, "batch dimensions must be at least 1");
  }
  if (t > s) {
    throw ValidationError(Errc::InfeasibleLengths,
                          "text length t exceeds speech length s");
  }
  LikelihoodBatch batch(b, t, s);
  std::uint64_t state = detail::mix_seed(seed, 0);
  for (float& v : batch.values) {
    // Top 53 bits -> uniform double in [0, 1); affine map to [-5, 5].
    const double u = static_cast<double>(detail::splitmix64(state) >> 11) * 0x1.0p-53;
    v = static_cast<float>(-5.0 + 10.0 * u);
  }
  return batch;
}

BenchReport run_bench(const BenchPlan& plan) {
  return detail::run_bench_with(plan, [](const LikelihoodBatch& batch, const MasConfig& cfg) {
    return align(batch, cfg);
  });
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
  if (report.rows.empty()) {
    throw ValidationError(Errc::EmptyReport, "report has no rows");
  }
  return format == ReportFormat::Csv ? emit_csv(report) : emit_markdown(report);
}

ScalingFit fit_scaling(const BenchReport& report, EngineKind engine) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const BenchRow& row : report.rows) {
    if (row.engine == engine) {
      xs.push_back(static_cast<double>(row.t) * static_cast<double>(row.s));
      ys.push_back(row.median_ms);
    }
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4) {
    std::ostringstream msg;
    msg << "scaling fit needs at least 4 distinct sizes, got " << distinct.size();
    throw ValidationError(Errc::InsufficientPoints, msg.str());
  }

  const double n = static_cast<double>(xs.size());
  const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  ScalingFit fit;
  fit.slope_ms_per_cell = sxy / sxx;
  const double intercept = mean_y - fit.slope_ms_per_cell * mean_x;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double predicted = intercept + fit.slope_ms_per_cell * xs[i];
    ss_res += (ys[i] - predicted) * (ys[i] - predicted);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  return fit;
}

EnvInfo collect_env_info() {
  EnvInfo env;
  env.cpu_model = "unknown";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        const auto start = line.find_first_not_of(" \t", colon + 1);
        if (start != std::string::npos) {
          env.cpu_model = line.substr(start);
        }
      }
      break;
    }
  }
  env.hardware_threads = std::thread::hardware_concurrency();
#if defined(__clang__)
  env.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  env.compiler = "gcc " __VERSION__;
#else
  env.compiler = "unknown";
#endif
#if defined(NDEBUG)
  env.build = "release";
#else
  env.build = "debug";
#endif
  return env;
}

const char* engine_name(EngineKind engine) {
  return engine == EngineKind::Reference ? "reference" : "parallel";
}

namespace detail {

BenchReport run_bench_with(const BenchPlan& plan, const AlignFn& align_fn) {
  validate_plan(plan);
  BenchReport report;
  report.env = collect_env_info();
  for (int t : plan.t_values) {
    const int s = plan.s_ratio * t;
    const LikelihoodBatch batch = generate_random_batch(
        plan.batch_size, t, s, mix_seed(plan.seed, static_cast<std::uint64_t>(t)));
    for (EngineKind engine : plan.engines) {
      MasConfig cfg;
      cfg.engine = engine;
      cfg.threads = plan.threads;
      for (int w = 0; w < plan.warmup; ++w) {
        align_fn(batch, cfg);
      }
      std::vector<double> ms;
      ms.reserve(static_cast<std::size_t>(plan.repeats));
      for (int r = 0; r < plan.repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        AlignmentMatrix out = align_fn(batch, cfg);
        const auto stop = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        static_cast<void>(out);
      }
      report.rows.push_back(summarize(engine, t, s, plan.batch_size, std::move(ms)));
    }
  }
  return report;
}

}  // namespace detail

}  // namespace monoalign::bench
