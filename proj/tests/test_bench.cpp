#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrdag/bench.hpp"

using namespace lrdag;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lrdag_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> lines(const fs::path& file) {
  std::ifstream in(file);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the seconds column so rows can be compared across reruns.
std::string without_time(const std::string& row) {
  std::vector<std::string> cells;
  std::stringstream s(row);
  for (std::string c; std::getline(s, c, ',');) cells.push_back(c);
  cells.erase(cells.begin() + 11);
  std::string out;
  for (const auto& c : cells) out += c + ",";
  return out;
}

BenchPlan small_plan(const fs::path& out) {
  return BenchPlan::from_json(json{{"graph", "rank"},
                                   {"d", 8},
                                   {"deg", 2},
                                   {"r", 2},
                                   {"rank_hat_offset", 0},
                                   {"methods", {"baseline", "lowrank"}},
                                   {"n", 300},
                                   {"seeds", {2, 3}},
                                   {"out", out.string()},
                                   {"workers", 2}});
}

}  // namespace

TEST_CASE("empty grid writes only the header") {
  BenchPlan plan;
  plan.out_dir = scratch("empty");
  const BenchOutcome out = run_bench(plan);
  CHECK(out.rows.empty());
  CHECK(lines(plan.out_dir / "results.csv") == std::vector<std::string>{csv_header()});
  CHECK(fs::exists(plan.out_dir / "summary.json"));
}

TEST_CASE("small sweep: rows, cache and reproducibility") {
  const BenchPlan plan = small_plan(scratch("small"));
  const BenchOutcome first = run_bench(plan);
  REQUIRE(first.rows.size() == 4);
  for (const BenchRow& row : first.rows) {
    CHECK(row.status == "ok");
    CHECK(row.h_final < 1e-8);
    CHECK(row.acyclic);
    CHECK(row.fit_digest.size() == 16);
    CHECK(row.config_hash.size() == 16);
    CHECK(row.r_hat == (row.method == Method::kBaseline ? 0 : 2));
  }
  // Both methods of a seed read one cached graph and one dataset.
  int files = 0;
  for (const auto& entry : fs::directory_iterator(plan.out_dir / "data")) {
    (void)entry;
    ++files;
  }
  CHECK(files == 4);

  const std::vector<std::string> before = lines(plan.out_dir / "results.csv");
  CHECK(before.size() == 5);
  CHECK(before.front() == csv_header());
  const BenchOutcome second = run_bench(plan);
  for (std::size_t k = 0; k < first.rows.size(); ++k)
    CHECK(without_time(to_csv(first.rows[k])) == without_time(to_csv(second.rows[k])));

  const json summary = json::parse(std::ifstream(plan.out_dir / "summary.json"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0]["runs"] == 2);
  CHECK(summary[0].contains("shd"));
}

TEST_CASE("generation failures are recorded, not fatal") {
  const fs::path out = scratch("fail");
  const BenchPlan plan = BenchPlan::from_json(json{{"d", 10},
                                                   {"deg", 9},
                                                   {"r", 1},
                                                   {"rank_hat", 1},
                                                   {"n", 50},
                                                   {"seeds", {1, 2}},
                                                   {"out", out.string()}});
  const BenchOutcome result = run_bench(plan);
  REQUIRE(result.rows.size() == 2);
  for (const BenchRow& row : result.rows) CHECK(row.status == "gen_fail");
  CHECK(lines(out / "results.csv").size() == 3);
}

TEST_CASE("plan validation") {
  CHECK_THROWS(BenchPlan::from_json(json{{"seeds", {1, 1}}}));
  CHECK_THROWS(BenchPlan::from_json(json{{"d", 10}, {"r", 10}}));
  CHECK_THROWS(BenchPlan::from_json(json{{"d", 10}, {"deg", 12}}));
  CHECK_THROWS(BenchPlan::from_json(json{{"methods", "notears"}}));
  CHECK_THROWS(BenchPlan::from_json(json{{"grid", 1}}));
  const BenchPlan reps = BenchPlan::from_json(json{{"repetitions", 3}, {"base_seed", 10}});
  CHECK(reps.seeds == std::vector<std::uint64_t>{10, 11, 12});
}

TEST_CASE("unwritable output directory is reported before any run") {
  BenchPlan plan = small_plan(scratch("blocked"));
  const fs::path blocker = fs::temp_directory_path() / "lrdag_bench_blocker";
  fs::remove_all(blocker);
  std::ofstream(blocker) << "x";
  plan.out_dir = blocker / "sub";
  CHECK_THROWS_AS(run_bench(plan), std::runtime_error);
}

TEST_CASE("csv rows carry full precision") {
  BenchRow row;
  row.metrics.tpr = 1.0 / 3.0;
  row.status = "ok";
  CHECK(to_csv(row).find("0.33333333333333331") != std::string::npos);
}
