#include <doctest.h>

#include <cmath>

#include "lrdag/bounds.hpp"
#include "lrdag/graphgen.hpp"
#include "oracles.hpp"

using namespace lrdag;

namespace {
GenConfig config(int d, double deg, int r, std::uint64_t seed) {
  GenConfig cfg;
  cfg.d = d;
  cfg.deg = deg;
  cfg.rank = r;
  cfg.seed = seed;
  return cfg;
}
}  // namespace

TEST_CASE("rank-specified generator hits the target rank and edge count") {
  const RankedGraph out = gen_rank_specified(config(50, 4, 5, 3));
  REQUIRE_FALSE(out.failed());
  CHECK(max_rank(*out.graph) == 5);
  CHECK(static_cast<std::int64_t>(out.graph->num_edges()) == out.target_edges);
  CHECK(out.graph->is_acyclic());
}

TEST_CASE("rank one with a complete graph's worth of edges always fails") {
  // A rank-one DAG has at most d - 1 edges, and p = 1 forces N = 45.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RankedGraph out = gen_rank_specified(config(10, 9, 1, seed));
    CHECK(out.failed());
    CHECK(out.target_edges == 45);
  }
}

TEST_CASE("too few sampled edges fails") {
  int fails = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RankedGraph out = gen_rank_specified(config(10, 0.5, 5, seed));
    if (out.target_edges < 5) {
      CHECK(out.failed());
      ++fails;
    }
  }
  CHECK(fails > 0);
}

TEST_CASE("rank-specified generator rejects an out-of-range rank") {
  CHECK_THROWS_AS(gen_rank_specified(config(10, 2, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(gen_rank_specified(config(10, 2, 10, 1)), std::invalid_argument);
}

TEST_CASE("generators are reproducible and acyclic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GenConfig cfg = config(30, 3, 3, seed);
    const RankedGraph a = gen_rank_specified(cfg);
    const RankedGraph b = gen_rank_specified(cfg);
    CHECK(a.failed() == b.failed());
    if (!a.failed()) {
      CHECK(*a.graph == *b.graph);
      CHECK(max_rank(*a.graph) == 3);
    }
    CHECK(gen_erdos_renyi(cfg) == gen_erdos_renyi(cfg));
    CHECK(gen_erdos_renyi(cfg).is_acyclic());
    CHECK(gen_scale_free(cfg) == gen_scale_free(cfg));
    CHECK(gen_scale_free(cfg).is_acyclic());
  }
}

TEST_CASE("Erdos-Renyi extremes") {
  CHECK(gen_erdos_renyi(config(12, 0, 1, 4)).num_edges() == 0);
  CHECK(gen_erdos_renyi(config(12, 11, 1, 4)).num_edges() == 66);
}

TEST_CASE("Erdos-Renyi edge count follows the binomial") {
  // 4950 pairs at p = 6/99: mean 300, sd ~16.8.
  const double mean = 300.0;
  const double sd = std::sqrt(4950.0 * (6.0 / 99.0) * (93.0 / 99.0));
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double m = static_cast<double>(gen_erdos_renyi(config(100, 6, 1, seed)).num_edges());
    if (std::abs(m - mean) <= 3.0 * sd) ++inside;
  }
  CHECK(inside >= 99);
}

TEST_CASE("scale-free on two vertices is a single edge") {
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    CHECK(gen_scale_free(config(2, 1, 1, seed)).num_edges() == 1);
}

TEST_CASE("scale-free graphs point from newer to older vertices") {
  const Dag g = gen_scale_free(config(40, 4, 1, 8));
  for (const Edge& e : g.edges()) CHECK(e.tail > e.head);
}

TEST_CASE("weights lie in the two-sided band") {
  const Dag g = gen_erdos_renyi(config(60, 10, 1, 2));
  const WeightedDag w = assign_weights(g, config(60, 10, 1, 2));
  REQUIRE(w.weights().size() == g.num_edges());
  for (double x : w.weights()) {
    CHECK(std::abs(x) >= 0.5);
    CHECK(std::abs(x) <= 2.0);
  }
  CHECK(assign_weights(Dag(5), config(5, 0, 1, 1)).weights().empty());
}

TEST_CASE("mean weight magnitude matches the uniform mean") {
  std::vector<Edge> edges;
  for (int i = 0; i < 150; ++i)
    for (int j = i + 1; j < 150; ++j) edges.push_back({i, j});
  const Dag g(150, edges);  // 11175 edges
  Rng rng(42);
  const WeightedDag w = assign_weights(g, 0.5, 2.0, rng);
  double total = 0.0;
  int negative = 0;
  for (double x : w.weights()) {
    total += std::abs(x);
    negative += x < 0.0;
  }
  CHECK(total / static_cast<double>(w.weights().size()) == doctest::Approx(1.25).epsilon(0.02 / 1.25));
  CHECK(negative > 5300);
  CHECK(negative < 5900);
}

TEST_CASE("scale-free ranks sit well below Erdos-Renyi ranks") {
  double sf_total = 0.0;
  double er_total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg = config(100, 6, 1, seed);
    cfg.gamma = 2.0;
    sf_total += numeric_rank(assign_weights(gen_scale_free(cfg), cfg));
    er_total += numeric_rank(assign_weights(gen_erdos_renyi(cfg), cfg));
  }
  const double sf_mean = sf_total / 100.0;
  MESSAGE("scale-free mean rank " << sf_mean << ", Erdos-Renyi " << er_total / 100.0);
  CHECK(sf_mean >= 12.0);
  CHECK(sf_mean <= 28.0);
  CHECK(sf_mean < er_total / 100.0);
}
