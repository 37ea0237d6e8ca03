#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trismooth/smoothing.hpp"

namespace trismooth {

struct BenchOptions {
  std::vector<int> sizes = {1000, 5000, 10000, 50000, 100000};
  int repeats = 5;   // timed runs per cell; one extra verification run is discarded
  int workers = 0;   // parallel-cell worker count; 0 = hardware, env-capped
  uint64_t seed = 42;
  int max_iters = 100;
  double move_tol = 1e-6;
};

struct BenchRecord {
  int size = 0;
  Layout layout = Layout::AoS;
  IterationForm form = IterationForm::B;
  UpdateStrategy strategy = UpdateStrategy::TwoPhase;
  Backend backend = Backend::Serial;
  int workers = 1;
  int iterations = 0;
  double init_ms = 0.0;
  double topo_ms = 0.0;
  double constr_ms = 0.0;
  double iter_ms = 0.0;
  double total_ms = 0.0;
  double min_alpha_before = 0.0;
  double min_alpha_after = 0.0;
  double mean_alpha_before = 0.0;
  double mean_alpha_after = 0.0;
  double speedup = 1.0;  // baseline: same size, AoS, Form B, TwoPhase, serial
  std::vector<int> accepted_per_pass;
};

/// Worker count for parallel cells: `requested`, or hardware concurrency when
/// 0; either way capped by the TRISMOOTH_MAX_WORKERS environment variable
/// (caps below 1 are ignored). Never returns less than 1.
int resolve_workers(int requested);

/// Runs the full size × layout × form × strategy × backend matrix, one cell
/// at a time. Every cell is verified before it is timed: constraints and
/// connectivity preserved, and both layouts of the same configuration must
/// produce bit-identical coordinates. Timings are medians over
/// options.repeats runs after a discarded verification/warm-up run. Throws
/// Error if any verification fails.
std::vector<BenchRecord> run_bench(const BenchOptions& options);

/// Fixed-schema CSV, one line per record.
std::string bench_csv(const std::vector<BenchRecord>& records);

/// JSON report: options echo plus per-record objects (including the
/// accepted-move series the CSV omits).
std::string bench_json(const BenchOptions& options, const std::vector<BenchRecord>& records);

}  // namespace trismooth
