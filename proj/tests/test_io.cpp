#include <doctest.h>

#include <sstream>

#include "lrdag/config.hpp"
#include "lrdag/graph_io.hpp"

using namespace lrdag;

TEST_CASE("edge list round trip") {
  const WeightedDag w(Dag(4, {{0, 3}, {1, 2}}), {0.1 + 0.2, -1.0 / 3.0});
  std::ostringstream out;
  write_edge_list(out, w);
  std::istringstream in(out.str());
  const EdgeListFile back = parse_edge_list(in);
  CHECK(back.graph == w.graph());
  REQUIRE(back.weights.has_value());
  const WeightedDag bw = back.weighted();
  CHECK(bw.weights()[0] == w.weights()[0]);
  CHECK(bw.weights()[1] == w.weights()[1]);
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# comment\nd=3\n\n2,1\n0,1\n");
  const EdgeListFile f = parse_edge_list(in);
  CHECK(f.graph.num_vertices() == 3);
  CHECK(f.graph.num_edges() == 2);
  CHECK_FALSE(f.weights.has_value());
  CHECK_THROWS_AS(f.weighted(), FormatError);

  std::istringstream unsorted("d=3\n2,1,0.5\n0,1,-2\n");
  const WeightedDag w = parse_edge_list(unsorted).weighted();
  CHECK(w.matrix()(2, 1) == 0.5);
  CHECK(w.matrix()(0, 1) == -2.0);

  for (const char* bad : {"3\n0,1\n", "d=3\n0;1\n", "d=3\n0,1,1\n1,2\n", "d=2\n0,5\n",
                          "d=2\n0,1,abc\n", "", "d=-1\n"}) {
    std::istringstream s(bad);
    CAPTURE(bad);
    CHECK_THROWS(parse_edge_list(s));
  }
}

TEST_CASE("matrix csv round trip") {
  Eigen::MatrixXd m(2, 3);
  m << 1.0 / 3.0, -2.5, 1e-300, 4.0, 0.0, 1e10;
  std::ostringstream out;
  write_matrix_csv(out, m);
  std::istringstream in(out.str());
  CHECK(parse_matrix_csv(in) == m);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(parse_matrix_csv(ragged), FormatError);
  std::istringstream junk("1,x\n");
  CHECK_THROWS_AS(parse_matrix_csv(junk), FormatError);
}

TEST_CASE("configs from JSON") {
  const GenRequest g = gen_request_from_json(json::parse(R"({"d": 20, "deg": 3, "r": 2, "kind": "sf", "seed": 5})"));
  CHECK(g.kind == GraphKind::kScaleFree);
  CHECK(g.config.d == 20);
  CHECK(g.config.rank == 2);
  CHECK(g.config.seed == 5);
  CHECK(gen_request_from_json(to_json(g)).config.deg == 3.0);
  CHECK_THROWS(gen_request_from_json(json::parse(R"({"size": 3})")));
  CHECK_THROWS(gen_request_from_json(json::parse(R"({"kind": "tree"})")));

  const SolverConfig s = solver_config_from_json(json::parse(R"({"rank_hat": 4, "w": 0.2, "c": 0.5})"));
  CHECK(s.rank_hat == 4);
  CHECK(s.w_threshold == 0.2);
  CHECK(s.progress_rate == 0.5);
  CHECK_FALSE(solver_config_from_json(json::parse(R"({"rank_hat": null})")).rank_hat);
  CHECK(solver_config_from_json(to_json(s)).rank_hat == 4);
  CHECK_THROWS(solver_config_from_json(json::parse(R"({"tolerance": 1})")));
}

TEST_CASE("content hash is stable and key-order independent") {
  const json a = json::parse(R"({"x": 1, "y": [1, 2]})");
  const json b = json::parse(R"({"y": [1, 2], "x": 1})");
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a).size() == 16);
  CHECK(content_hash(a) != content_hash(json::parse(R"({"x": 2, "y": [1, 2]})")));
}
