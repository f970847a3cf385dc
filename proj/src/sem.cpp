#include "lrdag/sem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lrdag/graphgen.hpp"

namespace lrdag {

Dataset::Dataset(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw std::invalid_argument("dataset contains non-finite entries");
}

Noise parse_noise(std::string_view name) {
  if (name == "gaussian") return Noise::kGaussian;
  if (name == "exponential") return Noise::kExponential;
  throw std::invalid_argument("unknown noise '" + std::string(name) + "'");
}

std::string_view noise_name(Noise noise) {
  return noise == Noise::kGaussian ? "gaussian" : "exponential";
}

Dataset simulate_linear(const WeightedDag& w, int n, Noise noise, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  const Dag& g = w.graph();
  const AcyclicityCheck check = validate_acyclic(g);
  if (!check.acyclic()) throw GraphError("not a DAG");

  const int d = g.num_vertices();
  Rng rng(seed);
  Eigen::MatrixXd x(n, d);
  if (noise == Noise::kGaussian) {
    std::normal_distribution<double> draw(0.0, 1.0);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n; ++i) x(i, j) = draw(rng);
  } else {
    std::exponential_distribution<double> draw(1.0);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n; ++i) x(i, j) = draw(rng);
  }

  const auto edges = g.edges();
  const auto weights = w.weights();
  // Parent weights per vertex, in edge order.
  std::vector<std::vector<std::pair<int, double>>> incoming(d);
  for (std::size_t k = 0; k < edges.size(); ++k)
    incoming[edges[k].head].emplace_back(edges[k].tail, weights[k]);
  for (int v : check.order)
    for (const auto& [parent, weight] : incoming[v]) x.col(v) += weight * x.col(parent);
  return Dataset(std::move(x));
}

Dataset standardize(const Dataset& data) {
  Eigen::MatrixXd x = data.values();
  if (x.rows() < 2) throw std::invalid_argument("standardize needs at least two samples");
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    auto col = x.col(j);
    col.array() -= col.mean();
    const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(x.rows() - 1));
    if (sd > 0.0) col /= sd;
  }
  return Dataset(std::move(x));
}

}  // namespace lrdag
