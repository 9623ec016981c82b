#pragma once

#include <string>
#include <vector>

#include "latqd/lattice.hpp"

namespace latqd::cli {

enum class BenchEngine { Charsum, DpDegree };
enum class BenchSweep { N, S, D };

struct BenchOptions {
  BenchSweep sweep = BenchSweep::N;
  BenchEngine engine = BenchEngine::Charsum;
  Int repeats = 5;
  /// Sweep values; empty means the default ladder for the sweep.
  std::vector<Int> values;
  Int n = 1009;
  Int s = 3;
  Int d = 4;
  unsigned threads = 1;
  /// Each repeat runs the kernel until at least this much time has passed.
  double min_repeat_seconds = 0.02;
};

struct BenchRow {
  Int value = 0;
  double median_ns = 0;  // per kernel call
  double ratio = 0;      // median / previous median, 0 for the first row
};

struct BenchReport {
  BenchOptions options;
  std::vector<BenchRow> rows;
};

std::vector<Int> default_ladder(BenchSweep sweep);

/// Deterministic generating vector used by the benchmark: g_j = 1 + (j * 7919 mod (N-1)).
LatticeRule bench_rule(Int n, Int s);

BenchReport run_bench(const BenchOptions& options);

std::string bench_csv(const BenchReport& report);
std::string bench_json(const BenchReport& report);

}  // namespace latqd::cli
