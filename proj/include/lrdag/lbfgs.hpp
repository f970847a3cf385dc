#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lrdag {

/// Returns f(x) and writes the gradient into `grad` (already sized like x).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct LbfgsOptions {
  int history = 10;
  double grad_tol = 1e-6;   ///< stop when ||grad||_inf < grad_tol
  int max_iter = 1000;
  double rel_ftol = 1e-12;  ///< stop when an accepted step lowers f by <= rel_ftol * max(|f|, 1)
  double armijo = 1e-4;
  double curvature = 0.9;
  int max_line_search = 40;
};

enum class LbfgsStatus { kGradientTol, kFunctionTol, kMaxIterations, kLineSearchFailed };

std::string_view to_string(LbfgsStatus status);

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
  std::vector<double> values;  ///< f at the start and after each accepted step

  bool line_search_failed() const { return status == LbfgsStatus::kLineSearchFailed; }
};

/// Limited-memory BFGS with a strong-Wolfe line search. On a line-search
/// failure the last accepted iterate is returned with kLineSearchFailed.
LbfgsResult lbfgs_minimize(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsOptions& options = {});

}  // namespace lrdag
