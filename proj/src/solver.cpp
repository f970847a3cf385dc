#include "lrdag/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lrdag/graphgen.hpp"
#include "lrdag/lbfgs.hpp"
#include "lrdag/objective.hpp"

namespace lrdag {

void SolverConfig::validate(int d) const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (rank_hat && (*rank_hat < 1 || *rank_hat > d)) fail("rank_hat must lie in [1, d]");
  if (!(progress_rate > 0.0 && progress_rate < 1.0)) fail("progress_rate must lie in (0, 1)");
  if (!(h_tol > 0.0)) fail("h_tol must be positive");
  if (!(w_threshold > 0.0)) fail("w_threshold must be positive");
  if (!(rho_init > 0.0)) fail("rho_init must be positive");
  if (!(rho_mult > 1.0)) fail("rho_mult must exceed 1");
  if (!(rho_max >= rho_init)) fail("rho_max must be at least rho_init");
  if (max_outer < 1) fail("max_outer must be positive");
  if (!(inner_tol > 0.0)) fail("inner_tol must be positive");
  if (inner_max_iter < 1) fail("inner_max_iter must be positive");
  if (!(lambda_nuc >= 0.0)) fail("lambda_nuc must be nonnegative");
  if (!(init_scale > 0.0)) fail("init_scale must be positive");
}

namespace {

Dag support(const Eigen::MatrixXd& w) {
  std::vector<Edge> edges;
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j)
      if (i != j && w(i, j) != 0.0) edges.push_back({i, j});
  return Dag(static_cast<int>(w.rows()), std::move(edges));
}

// Flat parameter vector: vec(W) for the baseline, [vec(U); vec(V)] otherwise.
class Parameterization {
 public:
  Parameterization(int d, int rank) : d_(d), rank_(rank) {}

  bool factored() const { return rank_ > 0; }
  Eigen::Index size() const {
    return factored() ? Eigen::Index{2} * d_ * rank_ : Eigen::Index{d_} * d_;
  }

  Eigen::MatrixXd weights(const Eigen::VectorXd& p) const {
    if (!factored()) return Eigen::Map<const Eigen::MatrixXd>(p.data(), d_, d_);
    return u(p) * v(p).transpose();
  }
  Eigen::Map<const Eigen::MatrixXd> u(const Eigen::VectorXd& p) const {
    return {p.data(), d_, rank_};
  }
  Eigen::Map<const Eigen::MatrixXd> v(const Eigen::VectorXd& p) const {
    return {p.data() + Eigen::Index{d_} * rank_, d_, rank_};
  }

  Eigen::VectorXd initial(double scale, std::uint64_t seed) const {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(size());
    if (factored()) {
      Rng rng(seed);
      std::normal_distribution<double> draw(0.0, scale / std::sqrt(static_cast<double>(rank_)));
      for (Eigen::Index k = 0; k < p.size(); ++k) p[k] = draw(rng);
    }
    return p;
  }

  Objective objective(const AugmentedLagrangian& lagrangian) const {
    if (factored()) {
      return [this, &lagrangian](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
        const auto eval = lagrangian.at_factors(u(x), v(x));
        const Eigen::Index half = Eigen::Index{d_} * rank_;
        grad.head(half) = Eigen::Map<const Eigen::VectorXd>(eval.grad_u.data(), half);
        grad.tail(half) = Eigen::Map<const Eigen::VectorXd>(eval.grad_v.data(), half);
        return eval.terms.value;
      };
    }
    return [this, &lagrangian](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
      auto eval = lagrangian.at(Eigen::Map<const Eigen::MatrixXd>(x.data(), d_, d_));
      // The baseline keeps the diagonal pinned at zero.
      eval.grad.diagonal().setZero();
      grad = Eigen::Map<const Eigen::VectorXd>(eval.grad.data(), eval.grad.size());
      return eval.terms.value;
    };
  }

 private:
  int d_;
  int rank_;
};

}  // namespace

FitResult fit(const Dataset& data, const SolverConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const int d = data.d();
  if (data.n() < 1) throw std::invalid_argument("fit needs at least one sample");
  cfg.validate(d);

  const LeastSquaresLoss loss(data);
  const Parameterization param(d, cfg.rank_hat.value_or(0));
  Eigen::VectorXd params = param.initial(cfg.init_scale, cfg.seed);

  LbfgsOptions inner;
  inner.grad_tol = cfg.inner_tol;
  inner.max_iter = cfg.inner_max_iter;

  FitResult result;
  PenaltyState state{cfg.rho_init, cfg.alpha_init, cfg.lambda_nuc};
  double h_prev = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.max_outer; ++t) {
    Eigen::VectorXd candidate;
    double h_new = 0.0;
    double loss_new = 0.0;
    int iterations = 0;
    while (true) {
      const AugmentedLagrangian lagrangian(loss, state);
      LbfgsResult solved = lbfgs_minimize(param.objective(lagrangian), params, inner);
      iterations += solved.iterations;
      if (solved.line_search_failed()) ++result.line_search_failures;
      candidate = std::move(solved.x);
      const Eigen::MatrixXd w = param.weights(candidate);
      h_new = acyclicity(w).value;
      loss_new = loss(w).value;
      if (h_new < cfg.progress_rate * h_prev || state.rho >= cfg.rho_max) break;
      state.rho = std::min(state.rho * cfg.rho_mult, cfg.rho_max);
    }
    params = std::move(candidate);
    h_prev = h_new;
    state.alpha += state.rho * h_new;
    result.trace.push_back({loss_new, h_new, state.rho, state.alpha, iterations});
    result.outer_iters = t + 1;
    if (h_new < cfg.h_tol || state.rho >= cfg.rho_max) break;
  }

  result.w_raw = param.weights(params);
  result.h_final = acyclicity(result.w_raw).value;
  result.converged = result.h_final < cfg.h_tol;

  Thresholded cut = threshold(result.w_raw, cfg.w_threshold);
  result.cycles_removed = !break_cycles(cut.weights).empty();
  result.w_star = std::move(cut.weights);
  result.dag = support(result.w_star);
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Thresholded threshold(const Eigen::MatrixXd& w, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (w.rows() != w.cols()) throw std::invalid_argument("threshold: matrix must be square");
  Eigen::MatrixXd kept = (w.array().abs() > cutoff).select(w, 0.0);
  kept.diagonal().setZero();
  Dag graph = support(kept);
  return {std::move(kept), std::move(graph)};
}

std::vector<Edge> break_cycles(Eigen::MatrixXd& w) {
  std::vector<Edge> removed;
  while (true) {
    const AcyclicityCheck check = validate_acyclic(support(w));
    if (check.acyclic()) return removed;
    Edge weakest{};
    double smallest = std::numeric_limits<double>::infinity();
    const auto& cycle = check.cycle;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Edge e{cycle[k], cycle[(k + 1) % cycle.size()]};
      if (std::abs(w(e.tail, e.head)) < smallest) {
        smallest = std::abs(w(e.tail, e.head));
        weakest = e;
      }
    }
    w(weakest.tail, weakest.head) = 0.0;
    removed.push_back(weakest);
  }
}

Refit prune_refit(const Dataset& data, const Dag& g, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (g.num_vertices() != data.d()) throw std::invalid_argument("graph and data sizes differ");
  if (!g.is_acyclic()) throw GraphError("not a DAG");

  const Eigen::MatrixXd& x = data.values();
  std::vector<Edge> edges;
  std::vector<double> weights;
  Refit out;
  for (int j = 0; j < g.num_vertices(); ++j) {
    const auto parents = g.parents(j);
    if (parents.empty()) continue;
    Eigen::MatrixXd design(x.rows(), static_cast<Eigen::Index>(parents.size()));
    for (std::size_t k = 0; k < parents.size(); ++k) design.col(k) = x.col(parents[k]);
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    if (cod.rank() < design.cols()) out.rank_deficient.push_back(j);
    const Eigen::VectorXd beta = cod.solve(x.col(j));
    for (std::size_t k = 0; k < parents.size(); ++k) {
      if (std::abs(beta[k]) > cutoff) {
        edges.push_back({parents[k], j});
        weights.push_back(beta[k]);
      }
    }
  }
  // Dag sorts its edges; reorder the weights to match.
  std::vector<std::size_t> idx(edges.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> sorted_edges;
  std::vector<double> sorted_weights;
  for (std::size_t k : idx) {
    sorted_edges.push_back(edges[k]);
    sorted_weights.push_back(weights[k]);
  }
  out.graph = WeightedDag(Dag(g.num_vertices(), std::move(sorted_edges)), std::move(sorted_weights));
  return out;
}

}  // namespace lrdag
