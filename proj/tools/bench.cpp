#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

#include "document.hpp"
#include "latqd/degree.hpp"
#include "latqd/enumerators.hpp"
#include "latqd/errors.hpp"

namespace latqd::cli {

namespace {

using Clock = std::chrono::steady_clock;

const char* engine_name(BenchEngine e) { return e == BenchEngine::Charsum ? "charsum" : "dp-degree"; }

const char* sweep_name(BenchSweep s) {
  switch (s) {
    case BenchSweep::N: return "n";
    case BenchSweep::S: return "s";
    case BenchSweep::D: return "d";
  }
  return "?";
}

double run_kernel(BenchEngine engine, const LatticeRule& rule, BoxRadius d, unsigned threads) {
  if (engine == BenchEngine::Charsum) return charsum(rule, d, Exec{threads}).coeffs.back();
  return static_cast<double>(trig_degree_dp(rule, d).rho);
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

std::string machine_compiler() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

}  // namespace

std::vector<Int> default_ladder(BenchSweep sweep) {
  switch (sweep) {
    case BenchSweep::N: return {1009, 2003, 4001, 8009};
    case BenchSweep::S: return {2, 4, 8, 16};
    case BenchSweep::D: return {1, 2, 4, 8};
  }
  return {};
}

LatticeRule bench_rule(Int n, Int s) {
  std::vector<Int> g(static_cast<std::size_t>(s));
  for (Int j = 0; j < s; ++j) g[static_cast<std::size_t>(j)] = 1 + (j * 7919) % (n - 1);
  return LatticeRule(n, std::move(g));
}

BenchReport run_bench(const BenchOptions& options) {
  if (options.repeats < 1) throw Error(ErrorCode::InvalidArgument, "--repeats must be at least 1");
  BenchReport report{options, {}};
  if (report.options.values.empty()) report.options.values = default_ladder(options.sweep);

  volatile double sink = 0;
  double previous = 0;
  for (Int value : report.options.values) {
    Int n = options.n, s = options.s, d = options.d;
    (options.sweep == BenchSweep::N ? n : options.sweep == BenchSweep::S ? s : d) = value;
    const LatticeRule rule = bench_rule(n, s);
    const BoxRadius radius(d);

    // calibrate the number of calls per repeat
    Int calls = 1;
    for (;;) {
      const auto t0 = Clock::now();
      for (Int i = 0; i < calls; ++i) sink = sink + run_kernel(options.engine, rule, radius, options.threads);
      const std::chrono::duration<double> dt = Clock::now() - t0;
      if (dt.count() >= options.min_repeat_seconds || calls >= (Int{1} << 30)) break;
      calls *= 2;
    }

    std::vector<double> per_call;
    for (Int r = 0; r < options.repeats; ++r) {
      const auto t0 = Clock::now();
      for (Int i = 0; i < calls; ++i) sink = sink + run_kernel(options.engine, rule, radius, options.threads);
      const std::chrono::duration<double, std::nano> dt = Clock::now() - t0;
      per_call.push_back(dt.count() / static_cast<double>(calls));
    }
    const double med = median(per_call);
    report.rows.push_back(BenchRow{value, med, previous > 0 ? med / previous : 0.0});
    previous = med;
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  const auto& o = report.options;
  std::ostringstream out;
  out << "# engine=" << engine_name(o.engine) << " sweep=" << sweep_name(o.sweep) << " N=" << o.n
      << " s=" << o.s << " d=" << o.d << " repeats=" << o.repeats << "\n";
  out << "# machine: hardware_threads=" << std::thread::hardware_concurrency()
      << " threads=" << o.threads << " compiler=" << machine_compiler() << "\n";
  out << "value,median_ns,ratio\n";
  for (const auto& r : report.rows) {
    out << r.value << ',' << format_double(r.median_ns) << ',' << format_double(r.ratio) << "\n";
  }
  return out.str();
}

std::string bench_json(const BenchReport& report) {
  const auto& o = report.options;
  std::ostringstream out;
  out << "{\"schema_version\":\"" << kSchemaVersion << "\",\"command\":\"bench\",\"engine\":\""
      << engine_name(o.engine) << "\",\"sweep\":\"" << sweep_name(o.sweep) << "\",\"fixed\":{\"N\":"
      << o.n << ",\"s\":" << o.s << ",\"d\":" << o.d << "},\"repeats\":" << o.repeats
      << ",\"machine\":{\"hardware_threads\":" << std::thread::hardware_concurrency()
      << ",\"threads\":" << o.threads << ",\"compiler\":\"" << machine_compiler() << "\"},\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    if (i) out << ',';
    out << "{\"value\":" << r.value << ",\"median_ns\":" << format_double(r.median_ns)
        << ",\"ratio\":" << format_double(r.ratio) << '}';
  }
  out << "]}\n";
  return out.str();
}

}  // namespace latqd::cli
