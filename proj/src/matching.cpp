#include "lrdag/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace lrdag {

namespace {
constexpr int kFree = -1;
constexpr int kUnreached = std::numeric_limits<int>::max();
}  // namespace

BipartiteMatcher::BipartiteMatcher(int n_left, int n_right)
    : n_left_(n_left),
      n_right_(n_right),
      adj_(n_left),
      match_left_(n_left, kFree),
      match_right_(n_right, kFree),
      layer_(n_left, kUnreached),
      next_edge_(n_left, 0) {}

void BipartiteMatcher::add_edge(int left, int right) {
  if (left < 0 || left >= n_left_ || right < 0 || right >= n_right_)
    throw std::out_of_range("bipartite edge out of range");
  adj_[left].push_back(right);
}

void BipartiteMatcher::pop_edge(int left) {
  auto& row = adj_.at(left);
  if (row.empty()) throw std::logic_error("no edge to pop");
  if (match_left_[left] == row.back()) throw std::logic_error("cannot pop a matched edge");
  row.pop_back();
}

// Layers left vertices by alternating-path distance from the free ones.
bool BipartiteMatcher::bfs_layers() {
  std::queue<int> queue;
  for (int u = 0; u < n_left_; ++u) {
    if (match_left_[u] == kFree) {
      layer_[u] = 0;
      queue.push(u);
    } else {
      layer_[u] = kUnreached;
    }
  }
  bool found_free_right = false;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w == kFree) {
        found_free_right = true;
      } else if (layer_[w] == kUnreached) {
        layer_[w] = layer_[u] + 1;
        queue.push(w);
      }
    }
  }
  return found_free_right;
}

bool BipartiteMatcher::dfs_augment(int u) {
  for (std::size_t& k = next_edge_[u]; k < adj_[u].size(); ++k) {
    const int v = adj_[u][k];
    const int w = match_right_[v];
    if (w == kFree || (layer_[w] == layer_[u] + 1 && dfs_augment(w))) {
      match_left_[u] = v;
      match_right_[v] = u;
      return true;
    }
  }
  layer_[u] = kUnreached;
  return false;
}

int BipartiteMatcher::solve() {
  while (bfs_layers()) {
    std::fill(next_edge_.begin(), next_edge_.end(), 0);
    for (int u = 0; u < n_left_; ++u)
      if (match_left_[u] == kFree && dfs_augment(u)) ++size_;
  }
  return size_;
}

bool BipartiteMatcher::has_augmenting_path() const {
  std::vector<char> visited(n_left_, 0);
  std::queue<int> queue;
  for (int u = 0; u < n_left_; ++u) {
    if (match_left_[u] == kFree) {
      visited[u] = 1;
      queue.push(u);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w == kFree) return true;
      if (!visited[w]) {
        visited[w] = 1;
        queue.push(w);
      }
    }
  }
  return false;
}

BipartiteMatcher::Cover BipartiteMatcher::min_vertex_cover() const {
  std::vector<char> left_reached(n_left_, 0);
  std::vector<char> right_reached(n_right_, 0);
  std::queue<int> queue;
  for (int u = 0; u < n_left_; ++u) {
    if (match_left_[u] == kFree) {
      left_reached[u] = 1;
      queue.push(u);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v : adj_[u]) {
      if (right_reached[v] || match_left_[u] == v) continue;
      right_reached[v] = 1;
      const int w = match_right_[v];
      if (w != kFree && !left_reached[w]) {
        left_reached[w] = 1;
        queue.push(w);
      }
    }
  }
  Cover cover;
  for (int u = 0; u < n_left_; ++u)
    if (!left_reached[u]) cover.left.push_back(u);
  for (int v = 0; v < n_right_; ++v)
    if (right_reached[v]) cover.right.push_back(v);
  return cover;
}

}  // namespace lrdag
