#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lrdag/graph.hpp"
#include "lrdag/sem.hpp"

namespace lrdag {

/// Controls for the augmented-Lagrangian fit. Leaving `rank_hat` empty runs
/// the full-matrix baseline; setting it optimizes W = U V^T with U, V d x r_hat.
struct SolverConfig {
  std::optional<int> rank_hat;
  double progress_rate = 0.25;  ///< c: required factor of decrease of h per outer step
  double h_tol = 1e-8;          ///< epsilon
  double w_threshold = 0.3;
  double rho_init = 1.0;
  double rho_mult = 10.0;
  double rho_max = 1e16;
  double alpha_init = 0.0;
  int max_outer = 100;
  double inner_tol = 1e-6;
  int inner_max_iter = 10000;
  double lambda_nuc = 0.0;
  double init_scale = 0.1;  ///< factor entries ~ N(0, (init_scale / sqrt(r_hat))^2)
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when a field is out of range for d variables.
  void validate(int d) const;
};

struct OuterStep {
  double loss = 0.0;
  double h = 0.0;
  double rho = 0.0;
  double alpha = 0.0;  ///< multiplier after the dual update
  int inner_iterations = 0;
};

struct FitResult {
  Eigen::MatrixXd w_star;  ///< thresholded estimate
  Eigen::MatrixXd w_raw;   ///< estimate before thresholding
  Dag dag;                 ///< support of w_star; always acyclic
  double h_final = 0.0;    ///< h(w_raw)
  int outer_iters = 0;
  std::vector<OuterStep> trace;
  double wall_time = 0.0;  ///< seconds
  bool converged = false;  ///< h_final < h_tol
  bool cycles_removed = false;
  int line_search_failures = 0;
};

/// Augmented-Lagrangian DAG fit. Each outer step re-solves the primal with
/// rho multiplied by rho_mult until h drops below c * h_prev (or rho reaches
/// rho_max), updates alpha += rho h, and stops once h < h_tol. The result is
/// thresholded at w_threshold; any cycle surviving the threshold is broken by
/// dropping its weakest edge. Non-convergence is reported, not thrown.
FitResult fit(const Dataset& data, const SolverConfig& cfg);

struct Thresholded {
  Eigen::MatrixXd weights;
  Dag graph;  ///< may contain cycles
};

/// Zeroes entries with |W(i,j)| <= cutoff and the diagonal.
Thresholded threshold(const Eigen::MatrixXd& w, double cutoff);

/// Repeatedly removes the smallest-magnitude edge of some directed cycle of
/// the support of w until it is acyclic. Returns the removed edges.
std::vector<Edge> break_cycles(Eigen::MatrixXd& w);

struct Refit {
  WeightedDag graph;
  std::vector<int> rank_deficient;  ///< vertices whose parent design was singular
};

/// Least-squares refit of every vertex on its parents in g followed by a
/// second threshold at `cutoff`. Singular designs use the minimum-norm
/// solution and are reported.
Refit prune_refit(const Dataset& data, const Dag& g, double cutoff);

}  // namespace lrdag
