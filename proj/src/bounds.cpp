#include "lrdag/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lrdag/matching.hpp"

namespace lrdag {

namespace {

BipartiteMatcher double_cover(const Dag& g) {
  const int d = g.num_vertices();
  BipartiteMatcher matcher(d, d);
  for (const Edge& e : g.edges()) matcher.add_edge(e.tail, e.head);
  matcher.solve();
  return matcher;
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

}  // namespace

LevelDecomposition levels(const Dag& g) {
  const AcyclicityCheck check = validate_acyclic(g);
  if (!check.acyclic()) throw GraphError("not a DAG");

  const int d = g.num_vertices();
  LevelDecomposition out;
  out.level.assign(d, 0);
  for (auto it = check.order.rbegin(); it != check.order.rend(); ++it) {
    int best = 0;
    for (int c : g.children(*it)) best = std::max(best, out.level[c] + 1);
    out.level[*it] = best;
  }
  out.graph_level = d == 0 ? 0 : *std::max_element(out.level.begin(), out.level.end());
  out.groups.assign(d == 0 ? 0 : out.graph_level + 1, {});
  for (int v = 0; v < d; ++v) out.groups[out.level[v]].push_back(v);
  return out;
}

RankLowerBounds rank_lower_bounds(const Dag& g) {
  const LevelDecomposition lv = levels(g);
  std::vector<std::vector<Edge>> between(lv.graph_level + 1);
  for (const Edge& e : g.edges())
    if (lv.level[e.tail] == lv.level[e.head] + 1) between[lv.level[e.tail]].push_back(e);

  // Each vertex in V_s (s >= 1) has a child in V_{s-1}, so the non-singleton
  // components of G_{s,s-1} are exactly the distinct roots over V_s.
  RankLowerBounds out;
  out.lower_level = lv.graph_level;
  for (int s = 1; s <= lv.graph_level; ++s) {
    DisjointSets sets(g.num_vertices());
    for (const Edge& e : between[s]) sets.unite(e.tail, e.head);
    std::set<int> roots;
    for (int v : lv.groups[s]) roots.insert(sets.find(v));
    out.lower_components += static_cast<int>(roots.size());
  }
  return out;
}

int max_rank(const Dag& g) { return double_cover(g).size(); }

HeadTailCover min_head_tail_cover(const Dag& g) {
  const BipartiteMatcher matcher = double_cover(g);
  BipartiteMatcher::Cover cover = matcher.min_vertex_cover();
  // Left copies are tails, right copies are heads.
  return HeadTailCover{std::move(cover.right), std::move(cover.left)};
}

bool is_head_tail_cover(const Dag& g, const HeadTailCover& cover) {
  const int d = g.num_vertices();
  std::vector<char> in_heads(d, 0);
  std::vector<char> in_tails(d, 0);
  auto mark = [d](const std::vector<int>& vs, std::vector<char>& flags) {
    for (int v : vs) {
      if (v < 0 || v >= d) throw GraphError("cover vertex " + std::to_string(v) + " out of range");
      flags[v] = 1;
    }
  };
  mark(cover.heads, in_heads);
  mark(cover.tails, in_tails);
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return in_heads[e.head] || in_tails[e.tail]; });
}

int LevelUpperBounds::tightest() const {
  return std::min({by_children, by_parents, by_widest_level, non_leaf, non_root});
}

LevelUpperBounds level_upper_bounds(const Dag& g) {
  const LevelDecomposition lv = levels(g);
  const int d = g.num_vertices();
  LevelUpperBounds out;

  auto neighbourhood_size = [&](const std::vector<int>& group, bool children) {
    std::set<int> seen;
    for (int v : group)
      for (int u : children ? g.children(v) : g.parents(v)) seen.insert(u);
    return static_cast<int>(seen.size());
  };
  const int top = lv.graph_level;
  for (int s = 1; s <= top; ++s) {
    const int width = static_cast<int>(lv.groups[s].size());
    out.by_children += std::min(width, neighbourhood_size(lv.groups[s], true));
  }
  for (int s = 0; s < top; ++s) {
    const int width = static_cast<int>(lv.groups[s].size());
    out.by_parents += std::min(width, neighbourhood_size(lv.groups[s], false));
  }
  std::size_t widest = 0;
  for (const auto& group : lv.groups) widest = std::max(widest, group.size());
  out.by_widest_level = d - static_cast<int>(widest);
  for (int v = 0; v < d; ++v) {
    if (!g.children(v).empty()) ++out.non_leaf;
    if (!g.parents(v).empty()) ++out.non_root;
  }
  return out;
}

RankBounds rank_bounds(const Dag& g) {
  const RankLowerBounds lower = rank_lower_bounds(g);
  return RankBounds{lower.lower_level, lower.lower_components, max_rank(g), level_upper_bounds(g)};
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (!m.allFinite()) throw std::invalid_argument("numeric_rank: non-finite entries");
  if (!(tol > 0.0)) throw std::invalid_argument("numeric_rank: tol must be positive");
  if (m.size() == 0) return 0;
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
  const double sigma_max = sv.maxCoeff();
  if (sigma_max <= 1e-9) return 0;
  return static_cast<int>((sv.array() > tol * sigma_max).count());
}

int numeric_rank(const WeightedDag& w, double tol) { return numeric_rank(w.matrix(), tol); }

}  // namespace lrdag
