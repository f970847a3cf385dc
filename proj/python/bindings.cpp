#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrdag/bounds.hpp"
#include "lrdag/graphgen.hpp"
#include "lrdag/metrics.hpp"
#include "lrdag/objective.hpp"
#include "lrdag/sem.hpp"
#include "lrdag/solver.hpp"

namespace py = pybind11;
using namespace lrdag;

namespace {

using EdgeTuples = std::vector<std::pair<int, int>>;

Dag make_dag(int d, const EdgeTuples& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [t, h] : edges) out.push_back({t, h});
  return Dag(d, std::move(out));
}

EdgeTuples edge_tuples(const Dag& g) {
  EdgeTuples out;
  for (const Edge& e : g.edges()) out.emplace_back(e.tail, e.head);
  return out;
}

GenConfig gen_config(int d, double deg, int rank, double gamma, std::uint64_t seed) {
  GenConfig cfg;
  cfg.d = d;
  cfg.deg = deg;
  cfg.rank = rank;
  cfg.gamma = gamma;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_lrdag, m) {
  m.doc() = "Low-rank causal DAG learning";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

  py::class_<Dag>(m, "Dag")
      .def(py::init(&make_dag), py::arg("d"), py::arg("edges") = EdgeTuples{})
      .def_property_readonly("num_vertices", &Dag::num_vertices)
      .def_property_readonly("num_edges", &Dag::num_edges)
      .def_property_readonly("edges", &edge_tuples)
      .def("has_edge", &Dag::has_edge)
      .def("is_acyclic", &Dag::is_acyclic)
      .def("adjacency", &Dag::adjacency)
      .def(py::self == py::self)
      .def("__repr__", [](const Dag& g) {
        return "Dag(d=" + std::to_string(g.num_vertices()) + ", edges=" +
               std::to_string(g.num_edges()) + ")";
      });

  m.def("dag_from_matrix", [](const Eigen::MatrixXd& w) { return WeightedDag::from_matrix(w).graph(); },
        "Support of a weight matrix.");

  m.def("levels", [](const Dag& g) { return levels(g).level; }, "Level of every vertex.");
  m.def("max_rank", &max_rank);
  m.def("min_head_tail_cover", [](const Dag& g) {
    const HeadTailCover c = min_head_tail_cover(g);
    return std::make_pair(c.heads, c.tails);
  }, "Minimum (heads, tails) cover.");
  m.def("numeric_rank", py::overload_cast<const Eigen::MatrixXd&, double>(&numeric_rank),
        py::arg("w"), py::arg("tol") = kDefaultRankTol);
  m.def("rank_bounds", [](const Dag& g) {
    const RankBounds b = rank_bounds(g);
    py::dict upper;
    upper["by_children"] = b.upper_levels.by_children;
    upper["by_parents"] = b.upper_levels.by_parents;
    upper["by_widest_level"] = b.upper_levels.by_widest_level;
    upper["non_leaf"] = b.upper_levels.non_leaf;
    upper["non_root"] = b.upper_levels.non_root;
    py::dict out;
    out["lower_level"] = b.lower_level;
    out["lower_components"] = b.lower_components;
    out["upper_matching"] = b.upper_matching;
    out["upper_levels"] = upper;
    return out;
  });

  m.def("gen_rank_specified", [](int d, double deg, int rank, std::uint64_t seed) -> std::optional<Dag> {
    return gen_rank_specified(gen_config(d, deg, rank, 2.0, seed)).graph;
  }, py::arg("d"), py::arg("deg"), py::arg("rank"), py::arg("seed") = 0,
     "Random DAG with the given maximum rank, or None when generation fails.");
  m.def("gen_erdos_renyi", [](int d, double deg, std::uint64_t seed) {
    return gen_erdos_renyi(gen_config(d, deg, 1, 2.0, seed));
  }, py::arg("d"), py::arg("deg"), py::arg("seed") = 0);
  m.def("gen_scale_free", [](int d, double deg, double gamma, std::uint64_t seed) {
    return gen_scale_free(gen_config(d, deg, 1, gamma, seed));
  }, py::arg("d"), py::arg("deg"), py::arg("gamma") = 2.0, py::arg("seed") = 0);
  m.def("assign_weights", [](const Dag& g, std::uint64_t seed, double lo, double hi) {
    GenConfig cfg = gen_config(g.num_vertices(), 0.0, 1, 2.0, seed);
    cfg.weight_lo = lo;
    cfg.weight_hi = hi;
    return assign_weights(g, cfg).matrix();
  }, py::arg("g"), py::arg("seed") = 0, py::arg("lo") = 0.5, py::arg("hi") = 2.0,
     "Weighted adjacency matrix with weights uniform on [-hi, -lo] u [lo, hi].");

  m.def("simulate_linear", [](const Eigen::MatrixXd& w, int n, const std::string& noise, std::uint64_t seed) {
    return simulate_linear(WeightedDag::from_matrix(w), n, parse_noise(noise), seed).values();
  }, py::arg("w"), py::arg("n"), py::arg("noise") = "gaussian", py::arg("seed") = 0);

  m.def("acyclicity", [](const Eigen::MatrixXd& w) {
    ValueGrad h = acyclicity(w);
    return std::make_pair(h.value, h.grad);
  }, "h(W) and its gradient.");

  m.def("fit", [](const Eigen::MatrixXd& x, std::optional<int> rank_hat, double w_threshold,
                  double lambda_nuc, int max_outer, std::uint64_t seed, bool prune) {
    SolverConfig cfg;
    cfg.rank_hat = rank_hat;
    cfg.w_threshold = w_threshold;
    cfg.lambda_nuc = lambda_nuc;
    cfg.max_outer = max_outer;
    cfg.seed = seed;
    const Dataset data(x);
    FitResult r;
    Dag estimate;
    {
      py::gil_scoped_release release;
      r = fit(data, cfg);
      estimate = prune ? prune_refit(data, r.dag, w_threshold).graph.graph() : r.dag;
    }
    py::dict out;
    out["W_star"] = r.w_star;
    out["W_raw"] = r.w_raw;
    out["dag"] = estimate;
    out["h_final"] = r.h_final;
    out["converged"] = r.converged;
    out["outer_iters"] = r.outer_iters;
    out["wall_time"] = r.wall_time;
    return out;
  }, py::arg("x"), py::arg("rank_hat") = py::none(), py::arg("w_threshold") = 0.3,
     py::arg("lambda_nuc") = 0.0, py::arg("max_outer") = 100, py::arg("seed") = 0,
     py::arg("prune") = true);

  m.def("shd", &shd);
  m.def("tpr_fdr", [](const Dag& truth, const Dag& est) {
    const Rates r = tpr_fdr(truth, est);
    return std::make_pair(r.tpr, r.fdr);
  });
}
