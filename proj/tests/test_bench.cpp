#include <doctest.h>

#include <cstdlib>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "helpers.hpp"
#include "trismooth/bench.hpp"

using namespace trismooth;
using namespace testutil;

namespace {

const char* kHeader =
    "size,layout,form,strategy,backend,workers,iterations,init_ms,topo_ms,constr_ms,iter_ms,"
    "total_ms,min_alpha_before,min_alpha_after,mean_alpha_before,mean_alpha_after,speedup";

BenchOptions small_options() {
  BenchOptions opt;
  opt.sizes = {300};
  opt.repeats = 1;
  opt.workers = 2;
  opt.seed = 7;
  opt.max_iters = 40;
  return opt;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("resolve_workers handles requests and the environment cap") {
  unsetenv("TRISMOOTH_MAX_WORKERS");
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);  // hardware fallback, never zero
  setenv("TRISMOOTH_MAX_WORKERS", "2", 1);
  CHECK(resolve_workers(8) == 2);
  CHECK(resolve_workers(1) == 1);
  setenv("TRISMOOTH_MAX_WORKERS", "0", 1);  // nonsense cap is ignored
  CHECK(resolve_workers(8) == 8);
  unsetenv("TRISMOOTH_MAX_WORKERS");
}

TEST_CASE("the matrix yields one verified record per cell") {
  const auto records = run_bench(small_options());
  REQUIRE(records.size() == 16);  // 1 size x 2 layouts x 2 forms x 2 strategies x 2 backends

  std::map<std::tuple<int, int, int, int>, int> seen;
  for (const auto& r : records) {
    ++seen[{static_cast<int>(r.layout), static_cast<int>(r.form), static_cast<int>(r.strategy),
            static_cast<int>(r.backend)}];
    CHECK(r.size == 300);
    CHECK(r.iterations >= 1);
    CHECK(r.workers == (r.backend == Backend::Parallel ? 2 : 1));
    CHECK(r.total_ms > 0.0);
    CHECK(r.iter_ms > 0.0);
    CHECK(r.min_alpha_before >= -1.0);
    CHECK(r.min_alpha_after <= 1.0);
    // only serial Form B carries a monotonicity guarantee; Jacobi cells may dip
    if (r.form == IterationForm::B && r.backend == Backend::Serial) {
      CHECK(r.min_alpha_after >= r.min_alpha_before);
      CHECK(r.mean_alpha_after > r.mean_alpha_before);
    }
    CHECK(r.speedup > 0.0);
    CHECK(r.accepted_per_pass.size() == static_cast<size_t>(r.iterations));
  }
  CHECK(seen.size() == 16);  // every combination exactly once

  // layout never changes the outcome: same (form, strategy, backend) cells agree
  std::map<std::tuple<int, int, int>, std::vector<double>> finals;
  for (const auto& r : records)
    finals[{static_cast<int>(r.form), static_cast<int>(r.strategy), static_cast<int>(r.backend)}]
        .push_back(r.min_alpha_after);
  for (const auto& [key, mins] : finals) {
    REQUIRE(mins.size() == 2);
    CHECK(same_bits(mins[0], mins[1]));
  }

  // the baseline cell carries speedup exactly 1
  for (const auto& r : records)
    if (r.layout == Layout::AoS && r.form == IterationForm::B &&
        r.strategy == UpdateStrategy::TwoPhase && r.backend == Backend::Serial)
      CHECK(r.speedup == 1.0);
}

TEST_CASE("CSV schema is pinned") {
  const auto records = run_bench(small_options());
  const std::string csv = bench_csv(records);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == kHeader);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 16);  // 17 columns
  }
  CHECK(rows == 16);
}

TEST_CASE("JSON report round-trips") {
  const BenchOptions opt = small_options();
  const auto records = run_bench(opt);
  const auto doc = nlohmann::json::parse(bench_json(opt, records));
  CHECK(doc["repeats"] == 1);
  CHECK(doc["seed"] == 7);
  CHECK(doc["sizes"] == nlohmann::json::array({300}));
  REQUIRE(doc["records"].size() == 16);
  const auto& first = doc["records"][0];
  CHECK(first["size"] == 300);
  CHECK(first.contains("layout"));
  CHECK(first.contains("iter_ms"));
  CHECK(first.contains("accepted_per_pass"));
  CHECK(first["accepted_per_pass"].size() == first["iterations"].get<size_t>());
}

}  // TEST_SUITE
