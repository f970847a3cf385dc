#pragma once

#include <vector>

namespace lrdag {

/// Maximum bipartite matching (Hopcroft-Karp) with support for growing the
/// edge set one edge at a time.
///
/// Left vertices are 0..n_left-1, right vertices 0..n_right-1. For head-tail
/// covers the left side is the tail copy V x {0} and the right side the head
/// copy V x {1}; a directed edge i -> j becomes left i -- right j.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int n_left, int n_right);

  void add_edge(int left, int right);
  /// Removes the most recently added edge out of `left`. The edge must not be
  /// in the current matching.
  void pop_edge(int left);

  /// Runs Hopcroft-Karp from the current matching; returns the matching size.
  int solve();

  /// True if the current matching admits an augmenting path. When the
  /// matching is maximum for the previous edge set and one edge was added
  /// since, this decides whether the maximum grew.
  bool has_augmenting_path() const;

  int size() const { return size_; }
  const std::vector<int>& match_of_left() const { return match_left_; }
  const std::vector<int>& match_of_right() const { return match_right_; }

  /// Minimum vertex cover from a maximum matching (Konig): with Z the set
  /// reached by alternating paths from unmatched left vertices, the cover is
  /// (L \ Z) + (R n Z). Call after solve().
  struct Cover {
    std::vector<int> left;
    std::vector<int> right;
  };
  Cover min_vertex_cover() const;

 private:
  bool bfs_layers();
  bool dfs_augment(int left);

  int n_left_;
  int n_right_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> layer_;
  std::vector<std::size_t> next_edge_;
  int size_ = 0;
};

}  // namespace lrdag
