#include "lrdag/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lrdag/matching.hpp"

namespace lrdag {

namespace {

// Stream tags keep structure, weights and data draws independent for one seed.
constexpr std::uint64_t kWeightStream = 0x77656967u;

double edge_probability(const GenConfig& cfg) {
  if (cfg.d < 2) return 0.0;
  return std::clamp(cfg.deg / (cfg.d - 1), 0.0, 1.0);
}

void check_common(const GenConfig& cfg) {
  if (cfg.d < 1) throw std::invalid_argument("d must be positive");
  if (!(cfg.deg >= 0.0)) throw std::invalid_argument("deg must be nonnegative");
  if (cfg.d > 1 && cfg.deg > cfg.d - 1) throw std::invalid_argument("deg must not exceed d - 1");
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RankedGraph gen_rank_specified(const GenConfig& cfg) {
  check_common(cfg);
  const int d = cfg.d;
  const int r = cfg.rank;
  if (r < 1 || r > d - 1) throw std::invalid_argument("rank must lie in [1, d - 1]");

  Rng rng(cfg.seed);
  const std::int64_t pairs = static_cast<std::int64_t>(d) * (d - 1) / 2;
  std::binomial_distribution<std::int64_t> edge_count(pairs, edge_probability(cfg));
  RankedGraph out;
  out.target_edges = edge_count(rng);
  if (out.target_edges < r) return out;

  // r distinct tails from 0..d-2, visited in descending order; each takes an
  // unused head above it. The k-th largest tail is at most d-1-k, so at least
  // one unused head always remains.
  std::vector<int> tails(d - 1);
  std::iota(tails.begin(), tails.end(), 0);
  std::shuffle(tails.begin(), tails.end(), rng);
  tails.resize(r);
  std::sort(tails.begin(), tails.end(), std::greater<>());

  std::vector<char> head_used(d, 0);
  std::vector<Edge> edges;
  edges.reserve(out.target_edges);
  BipartiteMatcher matcher(d, d);
  for (int i : tails) {
    std::vector<int> free_heads;
    for (int j = i + 1; j < d; ++j)
      if (!head_used[j]) free_heads.push_back(j);
    std::uniform_int_distribution<std::size_t> pick(0, free_heads.size() - 1);
    const int j = free_heads[pick(rng)];
    head_used[j] = 1;
    edges.push_back({i, j});
    matcher.add_edge(i, j);
  }
  matcher.solve();

  std::vector<Edge> remaining;
  remaining.reserve(pairs);
  {
    std::vector<char> taken(static_cast<std::size_t>(d) * d, 0);
    for (const Edge& e : edges) taken[static_cast<std::size_t>(e.tail) * d + e.head] = 1;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (!taken[static_cast<std::size_t>(i) * d + j]) remaining.push_back({i, j});
  }
  std::shuffle(remaining.begin(), remaining.end(), rng);

  // The matching stays maximum throughout; a candidate raises the cover size
  // exactly when it opens an augmenting path.
  for (const Edge& e : remaining) {
    if (static_cast<std::int64_t>(edges.size()) >= out.target_edges) break;
    matcher.add_edge(e.tail, e.head);
    if (matcher.has_augmenting_path()) {
      matcher.pop_edge(e.tail);
    } else {
      edges.push_back(e);
    }
  }
  if (static_cast<std::int64_t>(edges.size()) < out.target_edges) return out;
  out.graph = Dag(d, std::move(edges));
  return out;
}

Dag gen_erdos_renyi(const GenConfig& cfg) {
  check_common(cfg);
  const int d = cfg.d;
  Rng rng(cfg.seed);
  std::bernoulli_distribution coin(edge_probability(cfg));
  std::vector<Edge> edges;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (coin(rng)) edges.push_back({i, j});
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (Edge& e : edges) e = {perm[e.tail], perm[e.head]};
  return Dag(d, std::move(edges));
}

AttachmentKernel scale_free_kernel(double gamma, int m) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  // Linear attachment with offset a has in-degree exponent 2 + a / m. The
  // offset is floored at 0.05 m so newcomers can still be picked; below
  // gamma = 2 superlinear attachment concentrates edges on fewer hubs.
  AttachmentKernel k;
  k.bias = m * std::max(gamma - 2.0, 0.05);
  if (gamma < 2.0) k.exponent = 1.0 + (2.0 - gamma) / 2.0;
  return k;
}

Dag gen_scale_free(const GenConfig& cfg) {
  check_common(cfg);
  if (cfg.d < 2) throw std::invalid_argument("scale-free generator needs d >= 2");
  if (cfg.deg < 1.0) throw std::invalid_argument("scale-free generator needs deg >= 1");
  const int d = cfg.d;
  const int m = std::max(1, static_cast<int>(std::lround(cfg.deg / 2.0)));
  const AttachmentKernel kernel = scale_free_kernel(cfg.gamma, m);

  Rng rng(cfg.seed);
  std::vector<int> indegree(d, 0);
  std::vector<Edge> edges;
  std::vector<double> weight;
  std::vector<int> candidates;
  for (int v = 1; v < d; ++v) {
    candidates.resize(v);
    std::iota(candidates.begin(), candidates.end(), 0);
    const int k = std::min(m, v);
    for (int pick = 0; pick < k; ++pick) {
      weight.resize(candidates.size());
      for (std::size_t c = 0; c < candidates.size(); ++c)
        weight[c] = std::pow(indegree[candidates[c]] + kernel.bias, kernel.exponent);
      std::discrete_distribution<std::size_t> choose(weight.begin(), weight.end());
      const std::size_t c = choose(rng);
      const int u = candidates[c];
      edges.push_back({v, u});
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(c));
    }
    for (std::size_t e = edges.size() - k; e < edges.size(); ++e) ++indegree[edges[e].head];
  }
  return Dag(d, std::move(edges));
}

WeightedDag assign_weights(const Dag& g, double lo, double hi, Rng& rng) {
  if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument("weight range must satisfy 0 < lo < hi");
  std::uniform_real_distribution<double> magnitude(lo, hi);
  std::bernoulli_distribution negative(0.5);
  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const double w = magnitude(rng);
    weights.push_back(negative(rng) ? -w : w);
  }
  return WeightedDag(g, std::move(weights));
}

WeightedDag assign_weights(const Dag& g, const GenConfig& cfg) {
  Rng rng(stream_seed(cfg.seed, kWeightStream));
  return assign_weights(g, cfg.weight_lo, cfg.weight_hi, rng);
}

}  // namespace lrdag
