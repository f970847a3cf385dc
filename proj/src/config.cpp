#include "lrdag/config.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

namespace lrdag {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.contains(key))
      throw std::invalid_argument(std::string("unknown ") + what + " key '" + key + "'");
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "rank") return GraphKind::kRank;
  if (name == "er") return GraphKind::kErdosRenyi;
  if (name == "sf") return GraphKind::kScaleFree;
  throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kRank: return "rank";
    case GraphKind::kErdosRenyi: return "er";
    case GraphKind::kScaleFree: return "sf";
  }
  return "rank";
}

GenRequest gen_request_from_json(const json& j) {
  reject_unknown(j, {"d", "deg", "r", "gamma", "weight_lo", "weight_hi", "seed", "kind"},
                 "generator");
  GenRequest req;
  if (j.contains("kind")) req.kind = parse_graph_kind(j.at("kind").get<std::string>());
  read_if(j, "d", req.config.d);
  read_if(j, "deg", req.config.deg);
  read_if(j, "r", req.config.rank);
  read_if(j, "gamma", req.config.gamma);
  read_if(j, "weight_lo", req.config.weight_lo);
  read_if(j, "weight_hi", req.config.weight_hi);
  read_if(j, "seed", req.config.seed);
  return req;
}

json to_json(const GenRequest& req) {
  return json{{"kind", graph_kind_name(req.kind)},   {"d", req.config.d},
              {"deg", req.config.deg},               {"r", req.config.rank},
              {"gamma", req.config.gamma},           {"weight_lo", req.config.weight_lo},
              {"weight_hi", req.config.weight_hi},   {"seed", req.config.seed}};
}

SolverConfig solver_config_from_json(const json& j) {
  reject_unknown(j,
                 {"rank_hat", "c", "epsilon", "w", "rho_init", "rho_mult", "rho_max", "alpha_init",
                  "max_outer", "inner_tol", "inner_max_iter", "lambda_nuc", "init_scale", "seed"},
                 "solver");
  SolverConfig cfg;
  if (j.contains("rank_hat") && !j.at("rank_hat").is_null())
    cfg.rank_hat = j.at("rank_hat").get<int>();
  read_if(j, "c", cfg.progress_rate);
  read_if(j, "epsilon", cfg.h_tol);
  read_if(j, "w", cfg.w_threshold);
  read_if(j, "rho_init", cfg.rho_init);
  read_if(j, "rho_mult", cfg.rho_mult);
  read_if(j, "rho_max", cfg.rho_max);
  read_if(j, "alpha_init", cfg.alpha_init);
  read_if(j, "max_outer", cfg.max_outer);
  read_if(j, "inner_tol", cfg.inner_tol);
  read_if(j, "inner_max_iter", cfg.inner_max_iter);
  read_if(j, "lambda_nuc", cfg.lambda_nuc);
  read_if(j, "init_scale", cfg.init_scale);
  read_if(j, "seed", cfg.seed);
  return cfg;
}

json to_json(const SolverConfig& cfg) {
  json j{{"c", cfg.progress_rate},        {"epsilon", cfg.h_tol},
         {"w", cfg.w_threshold},          {"rho_init", cfg.rho_init},
         {"rho_mult", cfg.rho_mult},      {"rho_max", cfg.rho_max},
         {"alpha_init", cfg.alpha_init},  {"max_outer", cfg.max_outer},
         {"inner_tol", cfg.inner_tol},    {"inner_max_iter", cfg.inner_max_iter},
         {"lambda_nuc", cfg.lambda_nuc},  {"init_scale", cfg.init_scale},
         {"seed", cfg.seed}};
  j["rank_hat"] = cfg.rank_hat ? json(*cfg.rank_hat) : json(nullptr);
  return j;
}

json to_json(const FitResult& result) {
  json w = json::array();
  for (Eigen::Index i = 0; i < result.w_star.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < result.w_star.cols(); ++k) row.push_back(result.w_star(i, k));
    w.push_back(std::move(row));
  }
  json trace = json::array();
  for (const OuterStep& s : result.trace)
    trace.push_back({{"loss", s.loss},
                     {"h", s.h},
                     {"rho", s.rho},
                     {"alpha", s.alpha},
                     {"inner_iterations", s.inner_iterations}});
  json edges = json::array();
  for (const Edge& e : result.dag.edges()) edges.push_back({e.tail, e.head});
  return json{{"status", result.converged ? "converged" : "not_converged"},
              {"W_star", std::move(w)},
              {"edges", std::move(edges)},
              {"h_final", result.h_final},
              {"outer_iters", result.outer_iters},
              {"cycles_removed", result.cycles_removed},
              {"line_search_failures", result.line_search_failures},
              {"trace", std::move(trace)},
              {"wall_time", result.wall_time}};
}

json to_json(const RankBounds& b) {
  return json{{"lower_level", b.lower_level},
              {"lower_components", b.lower_components},
              {"upper_matching", b.upper_matching},
              {"upper_levels",
               {{"by_children", b.upper_levels.by_children},
                {"by_parents", b.upper_levels.by_parents},
                {"by_widest_level", b.upper_levels.by_widest_level},
                {"non_leaf", b.upper_levels.non_leaf},
                {"non_root", b.upper_levels.non_root}}}};
}

std::string content_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lrdag
