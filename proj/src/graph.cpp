#include "lrdag/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace lrdag {

Dag::Dag(int d) : Dag(d, {}) {}

Dag::Dag(int d, std::vector<Edge> edges) : d_(d), edges_(std::move(edges)) {
  if (d < 0) throw GraphError("vertex count must be nonnegative");
  for (const Edge& e : edges_) {
    if (e.tail < 0 || e.tail >= d || e.head < 0 || e.head >= d)
      throw GraphError("edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) +
                       " out of range for d=" + std::to_string(d));
    if (e.tail == e.head) throw GraphError("self-loop at vertex " + std::to_string(e.tail));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw GraphError("duplicate edge");

  words_ = (static_cast<std::size_t>(d) + 63) / 64;
  children_.assign(d, {});
  parents_.assign(d, {});
  bits_.assign(words_ * d, 0);
  for (const Edge& e : edges_) {
    children_[e.tail].push_back(e.head);
    parents_[e.head].push_back(e.tail);
    bits_[e.tail * words_ + e.head / 64] |= std::uint64_t{1} << (e.head % 64);
  }
}

Dag Dag::acyclic(int d, std::vector<Edge> edges) {
  Dag g(d, std::move(edges));
  if (!g.is_acyclic()) throw GraphError("not a DAG");
  return g;
}

bool Dag::has_edge(int tail, int head) const {
  if (tail < 0 || tail >= d_ || head < 0 || head >= d_) return false;
  return (bits_[tail * words_ + head / 64] >> (head % 64)) & 1U;
}

bool Dag::is_acyclic() const { return validate_acyclic(*this).acyclic(); }

Eigen::MatrixXd Dag::adjacency() const {
  if (d_ > kDenseCap) throw GraphError("graph too large for a dense matrix");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d_, d_);
  for (const Edge& e : edges_) a(e.tail, e.head) = 1.0;
  return a;
}

Dag Dag::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != d_) throw GraphError("permutation size mismatch");
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({perm[e.tail], perm[e.head]});
  return Dag(d_, std::move(out));
}

WeightedDag::WeightedDag(Dag graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  if (weights_.size() != graph_.num_edges())
    throw GraphError("weight count does not match edge count");
  for (double w : weights_) {
    if (!std::isfinite(w) || w == 0.0) throw GraphError("edge weights must be finite and nonzero");
  }
}

WeightedDag WeightedDag::from_matrix(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw GraphError("weight matrix must be square");
  const int d = static_cast<int>(w.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && w(i, j) != 0.0) edges.push_back({i, j});
  // Edges come out in (tail, head) order, which is also the sorted order.
  std::vector<double> values;
  values.reserve(edges.size());
  for (const Edge& e : edges) values.push_back(w(e.tail, e.head));
  return WeightedDag(Dag(d, std::move(edges)), std::move(values));
}

Eigen::MatrixXd WeightedDag::matrix() const {
  const int d = graph_.num_vertices();
  if (d > kDenseCap) throw GraphError("graph too large for a dense matrix");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  const auto edges = graph_.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) w(edges[k].tail, edges[k].head) = weights_[k];
  return w;
}

AcyclicityCheck validate_acyclic(const Dag& g) {
  const int d = g.num_vertices();
  std::vector<int> indegree(d);
  for (int v = 0; v < d; ++v) indegree[v] = static_cast<int>(g.parents(v).size());

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < d; ++v)
    if (indegree[v] == 0) ready.push(v);

  AcyclicityCheck out;
  out.order.reserve(d);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    out.order.push_back(v);
    for (int c : g.children(v))
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(out.order.size()) == d) return out;

  // Every leftover vertex keeps a leftover parent, so walking parents must
  // revisit a vertex; the revisited stretch is a cycle.
  int start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<int> seen_at(d, -1);
  std::vector<int> walk;
  int v = start;
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (int p : g.parents(v)) {
      if (indegree[p] > 0) {
        v = p;
        break;
      }
    }
  }
  out.cycle.assign(walk.begin() + seen_at[v], walk.end());
  // The walk followed parent links; flip it so consecutive entries are edges.
  std::reverse(out.cycle.begin(), out.cycle.end());
  out.order.clear();
  return out;
}

}  // namespace lrdag
