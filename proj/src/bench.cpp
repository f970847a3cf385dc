#include "lrdag/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "lrdag/bounds.hpp"
#include "lrdag/graph_io.hpp"

namespace lrdag {

Method parse_method(std::string_view name) {
  if (name == "baseline") return Method::kBaseline;
  if (name == "lowrank") return Method::kLowRank;
  if (name == "lowrank+nuclear") return Method::kLowRankNuclear;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kBaseline: return "baseline";
    case Method::kLowRank: return "lowrank";
    case Method::kLowRankNuclear: return "lowrank+nuclear";
  }
  return "lowrank";
}

namespace {

constexpr std::uint64_t kDataStream = 0x64617461u;

template <typename T>
std::vector<T> list_of(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

int rank_for(const BenchPlan& plan, int d) {
  // The small offset keeps e.g. 0.1 * 100 from rounding up to 11.
  return std::max(1, static_cast<int>(std::ceil(plan.rank_fraction * d - 1e-9)));
}

struct Cell {
  int d = 0;
  double deg = 0.0;
  int r = 0;  ///< requested rank, 0 for er/sf graphs
  Noise noise = Noise::kGaussian;
  int n = 0;
};

struct RankHatSpec {
  int value = 0;
  bool offset = false;
};

struct Job {
  std::size_t prepared = 0;  ///< index into the prepared datasets
  Method method = Method::kLowRank;
  RankHatSpec rank_hat;
};

struct Prepared {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  std::optional<WeightedDag> truth;
  std::optional<Dataset> data;
  int true_rank = 0;
  std::string failure;
};

int worker_count(int requested, std::size_t jobs) {
  int workers = requested;
  if (workers <= 0) {
    if (const char* env = std::getenv("LRDAG_WORKERS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(workers, 1);
  return static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));
}

template <typename Body>
void parallel_for(std::size_t count, int workers, Body body) {
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t k = next++; k < count; k = next++) body(k);
  };
  if (workers <= 1) {
    loop();
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

json data_key(const BenchPlan& plan, const Cell& cell, std::uint64_t seed) {
  return json{{"kind", graph_kind_name(plan.graph)},
              {"d", cell.d},
              {"deg", cell.deg},
              {"r", cell.r},
              {"gamma", plan.gamma},
              {"weight_lo", plan.weight_lo},
              {"weight_hi", plan.weight_hi},
              {"noise", noise_name(cell.noise)},
              {"n", cell.n},
              {"seed", seed}};
}

Prepared prepare(const BenchPlan& plan, const Cell& cell, std::uint64_t seed,
                 const std::filesystem::path& data_dir) {
  Prepared out;
  out.seed = seed;
  const std::string key = content_hash(data_key(plan, cell, seed));
  const auto graph_path = data_dir / (key + ".graph.csv");
  const auto data_path = data_dir / (key + ".data.csv");

  if (std::filesystem::exists(graph_path) && std::filesystem::exists(data_path)) {
    out.truth = read_edge_list(graph_path).weighted();
    out.data = Dataset(read_matrix_csv(data_path));
  } else {
    GenConfig gen;
    gen.d = cell.d;
    gen.deg = cell.deg;
    gen.rank = cell.r;
    gen.gamma = plan.gamma;
    gen.weight_lo = plan.weight_lo;
    gen.weight_hi = plan.weight_hi;
    gen.seed = seed;
    std::optional<Dag> graph;
    switch (plan.graph) {
      case GraphKind::kRank: graph = gen_rank_specified(gen).graph; break;
      case GraphKind::kErdosRenyi: graph = gen_erdos_renyi(gen); break;
      case GraphKind::kScaleFree: graph = gen_scale_free(gen); break;
    }
    if (!graph) {
      out.failure = "gen_fail";
      return out;
    }
    out.truth = assign_weights(*graph, gen);
    out.data = simulate_linear(*out.truth, cell.n, cell.noise, stream_seed(seed, kDataStream));

    std::ostringstream graph_text;
    write_edge_list(graph_text, *out.truth);
    std::ostringstream data_text;
    write_matrix_csv(data_text, out.data->values());
    write_atomically(graph_path, graph_text.str());
    write_atomically(data_path, data_text.str());
  }
  out.true_rank = max_rank(out.truth->graph());
  return out;
}

std::string fit_digest(const MethodRun& run) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < bytes; ++k) {
      h ^= p[k];
      h *= 0x100000001b3ULL;
    }
  };
  for (const Eigen::MatrixXd* m : {&run.fit.w_raw, &run.fit.w_star})
    mix(m->data(), sizeof(double) * static_cast<std::size_t>(m->size()));
  for (const Edge& e : run.estimate.edges()) mix(&e, sizeof e);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string group_key(const BenchPlan& plan, const Cell& cell, const Job& job) {
  std::ostringstream key;
  key << graph_kind_name(plan.graph) << "|d=" << cell.d << "|deg=" << cell.deg
      << "|r=" << cell.r << "|" << noise_name(cell.noise) << "|n=" << cell.n << "|"
      << method_name(job.method);
  if (job.method != Method::kBaseline)
    key << "|r_hat" << (job.rank_hat.offset ? "=r+" : "=") << job.rank_hat.value;
  return key.str();
}

}  // namespace

BenchPlan BenchPlan::from_json(const json& j) {
  static const std::set<std::string> known{
      "graph", "d",     "deg",    "r",        "rank_fraction", "rank_hat",    "rank_hat_offset",
      "noise", "methods", "n",    "seeds",    "repetitions",   "base_seed",   "gamma",
      "weight_lo", "weight_hi", "solver", "nuclear_lambda", "prune", "out", "workers"};
  if (!j.is_object()) throw std::invalid_argument("bench plan must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw std::invalid_argument("unknown plan key '" + key + "'");

  BenchPlan plan;
  if (j.contains("graph")) plan.graph = parse_graph_kind(j.at("graph").get<std::string>());
  if (j.contains("d")) plan.d = list_of<int>(j.at("d"));
  if (j.contains("deg")) plan.deg = list_of<double>(j.at("deg"));
  if (j.contains("r")) plan.rank = list_of<int>(j.at("r"));
  if (j.contains("rank_fraction")) plan.rank_fraction = j.at("rank_fraction").get<double>();
  if (j.contains("rank_hat")) plan.rank_hat = list_of<int>(j.at("rank_hat"));
  if (j.contains("rank_hat_offset")) plan.rank_hat_offset = list_of<int>(j.at("rank_hat_offset"));
  if (j.contains("noise")) {
    plan.noise.clear();
    for (const auto& name : list_of<std::string>(j.at("noise"))) plan.noise.push_back(parse_noise(name));
  }
  if (j.contains("methods")) {
    plan.methods.clear();
    for (const auto& name : list_of<std::string>(j.at("methods")))
      plan.methods.push_back(parse_method(name));
  }
  if (j.contains("n")) plan.n = list_of<int>(j.at("n"));
  if (j.contains("seeds")) plan.seeds = list_of<std::uint64_t>(j.at("seeds"));
  if (j.contains("repetitions")) {
    const int reps = j.at("repetitions").get<int>();
    const auto base = j.value("base_seed", std::uint64_t{0});
    for (int k = 0; k < reps; ++k) plan.seeds.push_back(base + static_cast<std::uint64_t>(k));
  }
  if (j.contains("gamma")) plan.gamma = j.at("gamma").get<double>();
  if (j.contains("weight_lo")) plan.weight_lo = j.at("weight_lo").get<double>();
  if (j.contains("weight_hi")) plan.weight_hi = j.at("weight_hi").get<double>();
  if (j.contains("solver")) plan.solver = solver_config_from_json(j.at("solver"));
  if (j.contains("nuclear_lambda")) plan.nuclear_lambda = j.at("nuclear_lambda").get<double>();
  if (j.contains("prune")) plan.prune = j.at("prune").get<bool>();
  if (j.contains("out")) plan.out_dir = j.at("out").get<std::string>();
  if (j.contains("workers")) plan.workers = j.at("workers").get<int>();
  plan.validate();
  return plan;
}

void BenchPlan::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("bench plan: " + what); };
  std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
  if (unique_seeds.size() != seeds.size()) fail("seeds must be distinct");
  if (!(weight_lo > 0.0 && weight_lo < weight_hi)) fail("weight range must satisfy 0 < lo < hi");
  if (!(nuclear_lambda >= 0.0)) fail("nuclear_lambda must be nonnegative");
  for (int count : n)
    if (count < 1) fail("n must be positive");
  for (int dim : d) {
    if (dim < 2) fail("d must be at least 2");
    SolverConfig base = solver;
    base.rank_hat.reset();
    base.validate(dim);
    for (double g : deg)
      if (g < 0.0 || g > dim - 1) fail("deg must lie in [0, d - 1]");
    if (graph == GraphKind::kRank) {
      for (int r : rank.empty() ? std::vector<int>{rank_for(*this, dim)} : rank)
        if (r < 1 || r > dim - 1) fail("r must lie in [1, d - 1]");
    }
    for (int r_hat : rank_hat)
      if (r_hat < 1 || r_hat > dim) fail("rank_hat must lie in [1, d]");
  }
  if (graph == GraphKind::kScaleFree) {
    if (!(gamma > 0.0)) fail("gamma must be positive");
    for (double g : deg)
      if (g < 1.0) fail("scale-free graphs need deg >= 1");
  }
}

std::string csv_header() {
  return "seed,d,deg,r,r_hat,method,noise,n,shd,tpr,fdr,seconds,h_final,status,config_hash,fit_digest";
}

std::string to_csv(const BenchRow& row) {
  std::ostringstream out;
  out << row.seed << ',' << row.d << ',' << format_real(row.deg) << ',' << row.r << ','
      << row.r_hat << ',' << method_name(row.method) << ',' << noise_name(row.noise) << ','
      << row.n << ',' << row.metrics.shd << ',' << format_real(row.metrics.tpr) << ','
      << format_real(row.metrics.fdr) << ',' << format_real(row.metrics.wall_time) << ','
      << format_real(row.h_final) << ',' << row.status << ',' << row.config_hash << ','
      << row.fit_digest;
  return out.str();
}

MethodRun run_method(const Dataset& data, Method method, int r_hat, const SolverConfig& base,
                     double nuclear_lambda, bool prune) {
  const auto start = std::chrono::steady_clock::now();
  SolverConfig cfg = base;
  cfg.rank_hat.reset();
  cfg.lambda_nuc = 0.0;
  if (method != Method::kBaseline) cfg.rank_hat = r_hat;
  if (method == Method::kLowRankNuclear) cfg.lambda_nuc = nuclear_lambda;

  MethodRun run;
  run.fit = fit(data, cfg);
  run.estimate = prune ? prune_refit(data, run.fit.dag, cfg.w_threshold).graph.graph() : run.fit.dag;
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

BenchOutcome run_bench(const BenchPlan& plan) {
  plan.validate();
  if (plan.out_dir.empty()) throw std::runtime_error("bench plan has no output directory");
  const auto data_dir = plan.out_dir / "data";
  std::error_code ec;
  std::filesystem::create_directories(data_dir, ec);
  const auto results_path = plan.out_dir / "results.csv";
  std::ofstream results(results_path, std::ios::trunc);
  if (ec || !results) throw std::runtime_error("output directory not writable: " + plan.out_dir.string());
  results << csv_header() << '\n' << std::flush;

  std::vector<Cell> cells;
  for (int d : plan.d)
    for (double deg : plan.deg) {
      std::vector<int> ranks{0};
      if (plan.graph == GraphKind::kRank)
        ranks = plan.rank.empty() ? std::vector<int>{rank_for(plan, d)} : plan.rank;
      for (int r : ranks)
        for (Noise noise : plan.noise)
          for (int n : plan.n) cells.push_back({d, deg, r, noise, n});
    }

  std::vector<RankHatSpec> rank_hats;
  for (int v : plan.rank_hat) rank_hats.push_back({v, false});
  if (rank_hats.empty())
    for (int v : plan.rank_hat_offset) rank_hats.push_back({v, true});
  if (rank_hats.empty()) rank_hats.push_back({0, true});

  std::vector<Prepared> prepared;
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::uint64_t seed : plan.seeds) {
      const std::size_t p = prepared.size();
      prepared.push_back({c, seed, std::nullopt, std::nullopt, 0, {}});
      for (Method method : plan.methods) {
        if (method == Method::kBaseline) {
          jobs.push_back({p, method, {0, false}});
        } else {
          for (const RankHatSpec& spec : rank_hats) jobs.push_back({p, method, spec});
        }
      }
    }

  parallel_for(prepared.size(), worker_count(plan.workers, prepared.size()), [&](std::size_t k) {
    const std::size_t cell = prepared[k].cell;
    try {
      prepared[k] = prepare(plan, cells[cell], prepared[k].seed, data_dir);
    } catch (const std::exception& e) {
      prepared[k].failure = std::string("error: ") + e.what();
    }
    prepared[k].cell = cell;
  });

  BenchOutcome outcome;
  outcome.rows.resize(jobs.size());
  std::mutex results_mutex;
  parallel_for(jobs.size(), worker_count(plan.workers, jobs.size()), [&](std::size_t k) {
    const Job& job = jobs[k];
    const Prepared& prep = prepared[job.prepared];
    const Cell& cell = cells[prep.cell];
    BenchRow row;
    row.seed = prep.seed;
    row.d = cell.d;
    row.deg = cell.deg;
    row.r = plan.graph == GraphKind::kRank ? cell.r : prep.true_rank;
    row.method = job.method;
    row.noise = cell.noise;
    row.n = cell.n;
    row.group = group_key(plan, cell, job);
    if (job.method != Method::kBaseline) {
      const int r_true = plan.graph == GraphKind::kRank ? cell.r : prep.true_rank;
      row.r_hat = job.rank_hat.offset ? r_true + job.rank_hat.value : job.rank_hat.value;
      row.r_hat = std::clamp(row.r_hat, 1, cell.d);
    }
    SolverConfig solver = plan.solver;
    solver.seed = prep.seed;
    json provenance = data_key(plan, cell, prep.seed);
    provenance["method"] = method_name(job.method);
    provenance["r_hat"] = row.r_hat;
    provenance["solver"] = to_json(solver);
    provenance["prune"] = plan.prune;
    provenance["nuclear_lambda"] = plan.nuclear_lambda;
    row.config_hash = content_hash(provenance);

    if (!prep.failure.empty()) {
      row.status = prep.failure;
    } else {
      try {
        const MethodRun run = run_method(*prep.data, job.method, row.r_hat, solver,
                                         plan.nuclear_lambda, plan.prune);
        row.metrics = evaluate(prep.truth->graph(), run.estimate, run.seconds);
        row.h_final = run.fit.h_final;
        row.acyclic = validate_acyclic(run.fit.dag).acyclic() && validate_acyclic(run.estimate).acyclic();
        row.fit_digest = fit_digest(run);
        row.status = run.fit.converged ? "ok" : "not_converged";
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
    }
    std::lock_guard lock(results_mutex);
    results << to_csv(row) << '\n' << std::flush;
    outcome.rows[k] = std::move(row);
  });

  // Aggregate runs that produced metrics, grouped in plan order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t k = 0; k < outcome.rows.size(); ++k) {
    const std::string& g = outcome.rows[k].group;
    if (!members.contains(g)) order.push_back(g);
    members[g].push_back(k);
  }
  auto field = [](const FieldSummary& s) {
    return json{{"mean", s.mean}, {"std", s.std}, {"median", s.median}, {"iqr_mean", s.iqr_mean}};
  };
  outcome.summary = json::array();
  for (const std::string& g : order) {
    std::vector<MetricsReport> reports;
    int failed = 0;
    for (std::size_t k : members[g]) {
      const BenchRow& row = outcome.rows[k];
      if (row.status == "ok" || row.status == "not_converged") {
        reports.push_back(row.metrics);
      } else {
        ++failed;
      }
    }
    const BenchRow& first = outcome.rows[members[g].front()];
    json entry{{"group", g},
               {"d", first.d},
               {"deg", first.deg},
               {"method", method_name(first.method)},
               {"noise", noise_name(first.noise)},
               {"n", first.n},
               {"runs", members[g].size()},
               {"failed", failed}};
    if (!reports.empty()) {
      const AggregateReport agg = aggregate(reports);
      entry["shd"] = field(agg.shd);
      entry["tpr"] = field(agg.tpr);
      entry["fdr"] = field(agg.fdr);
      entry["seconds"] = field(agg.wall_time);
    }
    outcome.summary.push_back(std::move(entry));
  }
  write_atomically(plan.out_dir / "summary.json", outcome.summary.dump(2) + "\n");
  return outcome;
}

}  // namespace lrdag
