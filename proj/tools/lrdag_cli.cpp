#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lrdag/bench.hpp"
#include "lrdag/bounds.hpp"
#include "lrdag/config.hpp"
#include "lrdag/graph_io.hpp"
#include "lrdag/graphgen.hpp"
#include "lrdag/sem.hpp"
#include "lrdag/solver.hpp"

using namespace lrdag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;
};

// --config takes a path or an inline JSON object.
json load_config(const std::string& arg) {
  if (arg.empty()) return json::object();
  if (arg.front() == '{') return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw FormatError("cannot open config " + arg);
  return json::parse(in);
}

// Writes to --out, or stdout when it is empty.
void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << text;
}

int cmd_gen(const Globals& g) {
  GenRequest req = gen_request_from_json(load_config(g.config));
  if (g.seed) req.config.seed = *g.seed;
  std::optional<Dag> graph;
  switch (req.kind) {
    case GraphKind::kRank: {
      RankedGraph ranked = gen_rank_specified(req.config);
      if (ranked.failed()) {
        std::cerr << "FAIL: could not place " << ranked.target_edges << " edges at rank "
                  << req.config.rank << "\n";
        return kExitFail;
      }
      graph = std::move(ranked.graph);
      break;
    }
    case GraphKind::kErdosRenyi: graph = gen_erdos_renyi(req.config); break;
    case GraphKind::kScaleFree: graph = gen_scale_free(req.config); break;
  }
  std::ostringstream text;
  write_edge_list(text, assign_weights(*graph, req.config));
  emit(g.out, text.str());
  return kExitOk;
}

int cmd_simulate(const Globals& g, const std::string& graph_path, bool standardize_flag) {
  const json cfg = load_config(g.config);
  for (const auto& [key, value] : cfg.items())
    if (key != "n" && key != "noise" && key != "seed" && key != "standardize")
      throw std::invalid_argument("unknown simulate key '" + key + "'");
  const int n = cfg.value("n", 3000);
  const Noise noise = parse_noise(cfg.value("noise", std::string("gaussian")));
  std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
  if (g.seed) seed = *g.seed;
  const bool standardize_data = standardize_flag || cfg.value("standardize", false);
  if (n < 1) throw std::invalid_argument("n must be positive");

  const EdgeListFile file = read_edge_list(graph_path);
  Dataset data = simulate_linear(file.weighted(), n, noise, seed);
  if (standardize_data) data = standardize(data);
  std::ostringstream text;
  write_matrix_csv(text, data.values());
  emit(g.out, text.str());
  return kExitOk;
}

int cmd_fit(const Globals& g, const std::string& data_path, bool no_prune) {
  SolverConfig cfg = solver_config_from_json(load_config(g.config));
  if (g.seed) cfg.seed = *g.seed;
  const Dataset data(read_matrix_csv(data_path));
  cfg.validate(data.d());

  FitResult result = fit(data, cfg);
  Dag estimate = result.dag;
  json report = to_json(result);
  if (!no_prune) {
    const Refit refit = prune_refit(data, result.dag, cfg.w_threshold);
    estimate = refit.graph.graph();
    report["edges"] = json::array();
    for (const Edge& e : estimate.edges()) report["edges"].push_back({e.tail, e.head});
    report["refit_weights"] = refit.graph.weights();
    report["rank_deficient"] = refit.rank_deficient;
  }

  if (g.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    const std::filesystem::path dir(g.out);
    std::filesystem::create_directories(dir);
    emit((dir / "fit_result.json").string(), report.dump(2) + "\n");
    std::ostringstream edges;
    write_edge_list(edges, estimate);
    emit((dir / "estimated_graph.csv").string(), edges.str());
  }
  if (!result.converged) {
    std::cerr << "not converged: h_final = " << format_real(result.h_final) << "\n";
    return kExitFail;
  }
  return kExitOk;
}

int cmd_bounds(const Globals& g, const std::string& graph_path) {
  const EdgeListFile file = read_edge_list(graph_path);
  emit(g.out, to_json(rank_bounds(file.graph)).dump(2) + "\n");
  return kExitOk;
}

int cmd_bench(const Globals& g) {
  BenchPlan plan = BenchPlan::from_json(load_config(g.config));
  if (!g.out.empty()) plan.out_dir = g.out;
  if (g.seed && plan.seeds.empty()) plan.seeds = {*g.seed};
  const BenchOutcome outcome = run_bench(plan);
  int failed = 0;
  for (const BenchRow& row : outcome.rows)
    if (row.status != "ok") ++failed;
  std::cerr << outcome.rows.size() << " runs, " << failed << " not ok; results in "
            << plan.out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank causal DAG toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed; overrides the config");
  app.add_option("--out", g.out, "Output file (gen, simulate, bounds) or directory (fit, bench)");
  app.add_option("--config", g.config, "JSON config: a file path or an inline object");

  auto* gen = app.add_subcommand("gen", "Generate a weighted random DAG as an edge list");

  std::string graph_path;
  bool standardize_flag = false;
  auto* simulate = app.add_subcommand("simulate", "Sample linear SEM data from a weighted DAG");
  simulate->add_option("graph", graph_path, "Weighted edge-list file")->required();
  simulate->add_flag("--standardize", standardize_flag, "Standardize columns");

  std::string data_path;
  bool no_prune = false;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a DAG to a dataset");
  fit_cmd->add_option("data", data_path, "Dataset CSV (n rows, d columns)")->required();
  fit_cmd->add_flag("--no-prune", no_prune, "Skip the least-squares refit and second threshold");

  auto* bounds = app.add_subcommand("bounds", "Print rank bounds for a graph");
  bounds->add_option("graph", graph_path, "Edge-list file")->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark plan");

  // Global options may appear after the subcommand too.
  for (auto* sub : {gen, simulate, fit_cmd, bounds, bench}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(g);
    if (*simulate) return cmd_simulate(g, graph_path, standardize_flag);
    if (*fit_cmd) return cmd_fit(g, data_path, no_prune);
    if (*bounds) return cmd_bounds(g, graph_path);
    if (*bench) return cmd_bench(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
