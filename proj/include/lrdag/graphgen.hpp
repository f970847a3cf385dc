#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "lrdag/graph.hpp"

namespace lrdag {

/// Seedable 64-bit generator used by every sampler in the library.
using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a stream tag.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag);

struct GenConfig {
  int d = 0;
  double deg = 0.0;    ///< target average degree
  int rank = 1;        ///< target rank (rank-specified generator only)
  double gamma = 2.0;  ///< power-law exponent (scale-free only)
  double weight_lo = 0.5;
  double weight_hi = 2.0;
  std::uint64_t seed = 0;
};

/// Outcome of the rank-specified generator. `graph` is empty on FAIL.
struct RankedGraph {
  std::optional<Dag> graph;
  std::int64_t target_edges = 0;  ///< the sampled N

  bool failed() const { return !graph.has_value(); }
};

/// Random DAG with `deg` average degree and maximum rank exactly `rank`.
///
/// Samples N ~ Binomial(d(d-1)/2, deg/(d-1)) and fails when N < rank. Seeds
/// the graph with `rank` edges sharing no head and no tail, then visits the
/// remaining upper-triangular pairs (i < j, edge i -> j) in random order,
/// keeping a pair only if the minimum head-tail cover stays at `rank`. Fails
/// when the pairs run out before N edges are placed. Throws
/// std::invalid_argument unless 1 <= rank <= d - 1.
RankedGraph gen_rank_specified(const GenConfig& cfg);

/// Erdos-Renyi DAG: each upper-triangular pair independently with
/// p = deg / (d - 1), then a uniform random relabeling.
Dag gen_erdos_renyi(const GenConfig& cfg);

/// Scale-free DAG by directed preferential attachment. Vertex v attaches
/// m = round(deg / 2) edges v -> u to distinct earlier vertices, picked with
/// weight (indegree(u) + bias)^exponent. The bias and exponent come from
/// `gamma`; the resulting tail exponent only approximates it.
Dag gen_scale_free(const GenConfig& cfg);

/// Attachment parameters used by gen_scale_free for a given gamma and m.
struct AttachmentKernel {
  double bias = 1.0;
  double exponent = 1.0;
};
AttachmentKernel scale_free_kernel(double gamma, int m);

/// Independent weights uniform on [-hi, -lo] u [lo, hi].
WeightedDag assign_weights(const Dag& g, const GenConfig& cfg);
WeightedDag assign_weights(const Dag& g, double lo, double hi, Rng& rng);

}  // namespace lrdag
