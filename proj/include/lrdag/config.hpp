#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lrdag/bounds.hpp"
#include "lrdag/graphgen.hpp"
#include "lrdag/solver.hpp"

namespace lrdag {

using json = nlohmann::json;

enum class GraphKind { kRank, kErdosRenyi, kScaleFree };

GraphKind parse_graph_kind(std::string_view name);
std::string_view graph_kind_name(GraphKind kind);

/// Generator config from JSON keys d, deg, r, gamma, weight_lo, weight_hi,
/// seed and kind (rank | er | sf). Missing keys keep their defaults.
struct GenRequest {
  GraphKind kind = GraphKind::kRank;
  GenConfig config;
};
GenRequest gen_request_from_json(const json& j);
json to_json(const GenRequest& req);

/// Missing keys keep their defaults; unknown keys are rejected.
SolverConfig solver_config_from_json(const json& j);
json to_json(const SolverConfig& cfg);

json to_json(const FitResult& result);
json to_json(const RankBounds& bounds);

/// FNV-1a over a canonical JSON dump, as 16 hex digits.
std::string content_hash(const json& j);

}  // namespace lrdag
