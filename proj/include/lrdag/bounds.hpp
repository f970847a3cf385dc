#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lrdag/graph.hpp"

namespace lrdag {

/// Vertices grouped by level, where the level of X is the length of the
/// longest directed path starting at X. Sinks sit at level 0.
struct LevelDecomposition {
  std::vector<int> level;                ///< level[v]
  std::vector<std::vector<int>> groups;  ///< groups[s] = {v : level[v] == s}, ascending
  int graph_level = 0;                   ///< max level (0 for an empty graph)
};

LevelDecomposition levels(const Dag& g);

struct RankLowerBounds {
  int lower_components = 0;  ///< sum over s >= 1 of non-singleton components of G[V_s + V_{s-1}]
  int lower_level = 0;       ///< graph level
};

/// Lower bounds on rank(W) valid for every W with the sign pattern of g.
/// Components are taken with undirected connectivity in the induced subgraph.
RankLowerBounds rank_lower_bounds(const Dag& g);

/// A pair (H, T) such that every edge i -> j has j in H or i in T.
struct HeadTailCover {
  std::vector<int> heads;
  std::vector<int> tails;

  int size() const { return static_cast<int>(heads.size() + tails.size()); }
};

/// Maximum rank over all weightings of g, i.e. the maximum matching in the
/// bipartite double cover. Works for any directed graph.
int max_rank(const Dag& g);

/// A minimum head-tail cover; its size equals max_rank(g).
HeadTailCover min_head_tail_cover(const Dag& g);

/// Throws GraphError when a listed vertex is out of range.
bool is_head_tail_cover(const Dag& g, const HeadTailCover& cover);

/// Level-based upper bounds on max_rank.
struct LevelUpperBounds {
  int by_children = 0;      ///< sum_{s=1..L} min(|V_s|, |ch(V_s)|)
  int by_parents = 0;       ///< sum_{s=0..L-1} min(|V_s|, |pa(V_s)|)
  int by_widest_level = 0;  ///< |V| - max_s |V_s|
  int non_leaf = 0;         ///< vertices with at least one child
  int non_root = 0;         ///< vertices with at least one parent

  int tightest() const;
};

LevelUpperBounds level_upper_bounds(const Dag& g);

/// Everything above for one graph.
struct RankBounds {
  int lower_level = 0;
  int lower_components = 0;
  int upper_matching = 0;
  LevelUpperBounds upper_levels;
};

RankBounds rank_bounds(const Dag& g);

inline constexpr double kDefaultRankTol = 1e-8;

/// Number of singular values above tol * sigma_max. A matrix whose largest
/// singular value is at most 1e-9 has rank 0. Throws on non-finite entries.
int numeric_rank(const Eigen::MatrixXd& m, double tol = kDefaultRankTol);
int numeric_rank(const WeightedDag& w, double tol = kDefaultRankTol);

}  // namespace lrdag
