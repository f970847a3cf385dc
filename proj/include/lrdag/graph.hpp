#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lrdag {

/// Thrown for malformed graphs: out-of-range vertices, self-loops, duplicate
/// edges, or a cycle where acyclicity is required.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Directed edge tail -> head, 0-based vertex ids.
struct Edge {
  int tail = 0;
  int head = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Largest vertex count for which a dense d x d matrix is materialized.
inline constexpr int kDenseCap = 5000;

/// Directed graph over vertices 0..d-1 without self-loops or parallel edges.
///
/// Edges are kept sorted by (tail, head), with adjacency lists and an
/// adjacency bitset alongside. Acyclicity is only guaranteed for graphs built
/// through `Dag::acyclic`; everything else (e.g. the support of an estimated
/// matrix before repair) may contain cycles. Immutable after construction.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int d);
  Dag(int d, std::vector<Edge> edges);

  /// Same as the constructor, but throws GraphError("not a DAG") on a cycle.
  static Dag acyclic(int d, std::vector<Edge> edges);

  int num_vertices() const { return d_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const int> children(int v) const { return children_.at(v); }
  std::span<const int> parents(int v) const { return parents_.at(v); }
  bool has_edge(int tail, int head) const;
  bool is_acyclic() const;

  /// Binary adjacency matrix A with A(i, j) = 1 iff i -> j.
  Eigen::MatrixXd adjacency() const;

  /// Graph with vertex v renamed to perm[v].
  Dag relabeled(std::span<const int> perm) const;

  bool operator==(const Dag& other) const {
    return d_ == other.d_ && edges_ == other.edges_;
  }

 private:
  int d_ = 0;
  std::size_t words_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::uint64_t> bits_;
};

/// A graph plus one nonzero weight per edge; `weights()[k]` belongs to
/// `graph().edges()[k]`.
class WeightedDag {
 public:
  WeightedDag() = default;
  WeightedDag(Dag graph, std::vector<double> weights);

  /// Support of W (entries with |W(i,j)| > 0, diagonal ignored) with its values.
  static WeightedDag from_matrix(const Eigen::MatrixXd& w);

  const Dag& graph() const { return graph_; }
  std::span<const double> weights() const { return weights_; }
  int num_vertices() const { return graph_.num_vertices(); }

  /// Weighted adjacency matrix W, W(i, j) = weight of i -> j, 0 elsewhere.
  Eigen::MatrixXd matrix() const;

 private:
  Dag graph_;
  std::vector<double> weights_;
};

/// Result of Kahn's algorithm. When acyclic, `order` lists every vertex with
/// each tail before its heads; ties are broken by smallest index, so an
/// edgeless graph yields 0..d-1. Otherwise `cycle` holds the vertices of one
/// directed cycle in traversal order (cycle[k] -> cycle[k+1], last -> first).
struct AcyclicityCheck {
  std::vector<int> order;
  std::vector<int> cycle;

  bool acyclic() const { return cycle.empty(); }
};

AcyclicityCheck validate_acyclic(const Dag& g);

}  // namespace lrdag
