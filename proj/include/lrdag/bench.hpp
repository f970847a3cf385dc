#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lrdag/config.hpp"
#include "lrdag/metrics.hpp"
#include "lrdag/sem.hpp"
#include "lrdag/solver.hpp"

namespace lrdag {

enum class Method { kBaseline, kLowRank, kLowRankNuclear };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

/// A sweep over graph size, degree, rank, rank parameter, noise, method,
/// sample count and seeds. Every combination runs once per seed.
struct BenchPlan {
  GraphKind graph = GraphKind::kRank;
  std::vector<int> d;
  std::vector<double> deg;
  std::vector<int> rank;          ///< empty: r = ceil(rank_fraction * d)
  double rank_fraction = 0.1;
  std::vector<int> rank_hat;         ///< absolute r_hat values
  std::vector<int> rank_hat_offset;  ///< r_hat = r + offset; used when rank_hat is empty
  std::vector<Noise> noise{Noise::kGaussian};
  std::vector<Method> methods{Method::kLowRank};
  std::vector<int> n{3000};
  std::vector<std::uint64_t> seeds;
  double gamma = 2.0;
  double weight_lo = 0.5;
  double weight_hi = 2.0;
  SolverConfig solver;
  double nuclear_lambda = 0.1;  ///< lambda for the lowrank+nuclear method
  bool prune = true;
  std::filesystem::path out_dir;
  int workers = 0;  ///< 0: LRDAG_WORKERS or the hardware thread count

  /// Reads a plan; list-valued keys also accept a scalar. Throws
  /// std::invalid_argument on bad values.
  static BenchPlan from_json(const json& j);
  /// Throws std::invalid_argument when a cell violates a generator or solver
  /// precondition.
  void validate() const;
};

struct BenchRow {
  std::uint64_t seed = 0;
  int d = 0;
  double deg = 0.0;
  int r = 0;       ///< rank of the true graph (requested rank for rank-specified graphs)
  int r_hat = 0;   ///< 0 for the baseline
  Method method = Method::kLowRank;
  Noise noise = Noise::kGaussian;
  int n = 0;
  std::string status;  ///< ok | not_converged | gen_fail | error: ...
  MetricsReport metrics;
  double h_final = 0.0;
  std::string config_hash;
  std::string fit_digest;  ///< hash of the raw and thresholded weights and the final edges
  bool acyclic = false;    ///< every graph the run produced passed validate_acyclic
  std::string group;  ///< rows that share a group are aggregated together
};

std::string csv_header();
std::string to_csv(const BenchRow& row);

struct BenchOutcome {
  std::vector<BenchRow> rows;  ///< in plan order
  json summary;
};

/// Runs the plan, writing results.csv (one row per run, appended as runs
/// finish), summary.json and a data/ cache of generated graphs and datasets
/// keyed by content hash. Failed runs are recorded, never fatal. Throws
/// std::runtime_error when out_dir is not writable.
BenchOutcome run_bench(const BenchPlan& plan);

/// One fit followed by the optional refit-and-prune step.
struct MethodRun {
  FitResult fit;
  Dag estimate;
  double seconds = 0.0;
};
MethodRun run_method(const Dataset& data, Method method, int r_hat, const SolverConfig& base,
                     double nuclear_lambda, bool prune);

}  // namespace lrdag
