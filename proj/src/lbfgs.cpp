#include "lrdag/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

namespace lrdag {

std::string_view to_string(LbfgsStatus status) {
  switch (status) {
    case LbfgsStatus::kGradientTol: return "gradient_tol";
    case LbfgsStatus::kFunctionTol: return "function_tol";
    case LbfgsStatus::kMaxIterations: return "max_iterations";
    case LbfgsStatus::kLineSearchFailed: return "line_search_failed";
  }
  return "unknown";
}

namespace {

struct Trial {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;
};

struct LineSearch {
  const Objective& objective;
  const LbfgsOptions& options;
  const Eigen::VectorXd& x;
  const Eigen::VectorXd& direction;
  double f0;
  double slope0;
  int evaluations = 0;

  Eigen::VectorXd x_trial;
  Eigen::VectorXd g_trial;

  Trial evaluate(double step) {
    x_trial = x + step * direction;
    g_trial.resize(x.size());
    double f = objective(x_trial, g_trial);
    ++evaluations;
    if (!std::isfinite(f) || !g_trial.allFinite()) f = std::numeric_limits<double>::infinity();
    return {step, f, std::isfinite(f) ? g_trial.dot(direction) : 0.0};
  }

  bool sufficient(const Trial& t) const { return t.value <= f0 + options.armijo * t.step * slope0; }
  bool curvature_ok(const Trial& t) const {
    return std::abs(t.slope) <= -options.curvature * slope0;
  }

  // Minimizer of the cubic through (lo, hi) values and slopes, kept inside
  // the interval; falls back to bisection when the fit is unusable.
  static double interpolate(const Trial& lo, const Trial& hi) {
    const double mid = 0.5 * (lo.step + hi.step);
    if (!std::isfinite(hi.value) || !std::isfinite(lo.value)) return mid;
    const double d1 = lo.slope + hi.slope - 3.0 * (lo.value - hi.value) / (lo.step - hi.step);
    const double disc = d1 * d1 - lo.slope * hi.slope;
    if (disc < 0.0) return mid;
    const double d2 = std::copysign(std::sqrt(disc), hi.step - lo.step);
    const double step =
        hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) / (hi.slope - lo.slope + 2.0 * d2);
    const double a = std::min(lo.step, hi.step);
    const double b = std::max(lo.step, hi.step);
    const double margin = 0.1 * (b - a);
    if (!std::isfinite(step) || step < a + margin || step > b - margin) return mid;
    return step;
  }

  std::optional<Trial> zoom(Trial lo, Trial hi) {
    for (int k = 0; k < options.max_line_search; ++k) {
      const Trial t = evaluate(interpolate(lo, hi));
      if (!sufficient(t) || t.value >= lo.value) {
        hi = t;
      } else {
        if (curvature_ok(t)) return t;
        if (t.slope * (hi.step - lo.step) >= 0.0) hi = lo;
        lo = t;
      }
      if (std::abs(hi.step - lo.step) < 1e-16 * std::max(1.0, lo.step)) break;
    }
    // Accept a point with sufficient decrease even without the curvature test.
    if (lo.step > 0.0 && sufficient(lo) && lo.value < f0) {
      evaluate(lo.step);
      return lo;
    }
    return std::nullopt;
  }

  std::optional<Trial> run(double initial_step) {
    Trial prev{0.0, f0, slope0};
    double step = initial_step;
    for (int k = 0; k < options.max_line_search; ++k) {
      const Trial t = evaluate(step);
      if (!sufficient(t) || (k > 0 && t.value >= prev.value)) return zoom(prev, t);
      if (curvature_ok(t)) return t;
      if (t.slope >= 0.0) return zoom(t, prev);
      prev = t;
      step *= 2.0;
    }
    return std::nullopt;
  }
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsOptions& options) {
  LbfgsResult result;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd g(x.size());
  double f = objective(x, g);
  result.evaluations = 1;
  result.values.push_back(f);

  std::deque<Eigen::VectorXd> s_hist;
  std::deque<Eigen::VectorXd> y_hist;
  std::deque<double> rho_hist;
  std::vector<double> alpha(options.history);

  auto finish = [&](LbfgsStatus status) {
    result.x = std::move(x);
    result.value = f;
    result.status = status;
    return result;
  };

  if (x.size() == 0 || g.lpNorm<Eigen::Infinity>() < options.grad_tol)
    return finish(LbfgsStatus::kGradientTol);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    // Two-loop recursion for -H g.
    Eigen::VectorXd dir = -g;
    const int m = static_cast<int>(s_hist.size());
    for (int k = m - 1; k >= 0; --k) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(dir);
      dir -= alpha[k] * y_hist[k];
    }
    if (m > 0) dir *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (int k = 0; k < m; ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(dir);
      dir += (alpha[k] - beta) * s_hist[k];
    }
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -g;
      slope = -g.squaredNorm();
    }
    const double initial_step = s_hist.empty() ? std::min(1.0, 1.0 / dir.norm()) : 1.0;

    LineSearch search{objective, options, x, dir, f, slope, 0, {}, {}};
    const std::optional<Trial> accepted = search.run(initial_step);
    result.evaluations += search.evaluations;
    if (!accepted) return finish(LbfgsStatus::kLineSearchFailed);

    Eigen::VectorXd s = search.x_trial - x;
    Eigen::VectorXd y = search.g_trial - g;
    const double f_old = f;
    x = std::move(search.x_trial);
    g = std::move(search.g_trial);
    f = accepted->value;
    ++result.iterations;
    result.values.push_back(f);

    const double sy = s.dot(y);
    if (sy > 1e-12 * y.squaredNorm()) {
      if (static_cast<int>(s_hist.size()) == options.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }

    if (g.lpNorm<Eigen::Infinity>() < options.grad_tol) return finish(LbfgsStatus::kGradientTol);
    if (f_old - f <= options.rel_ftol * std::max({std::abs(f_old), std::abs(f), 1.0}))
      return finish(LbfgsStatus::kFunctionTol);
  }
  return finish(LbfgsStatus::kMaxIterations);
}

}  // namespace lrdag
