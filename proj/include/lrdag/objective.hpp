#pragma once

#include <Eigen/Dense>

#include "lrdag/sem.hpp"

namespace lrdag {

struct ValueGrad {
  double value = 0.0;
  Eigen::MatrixXd grad;
};

/// h(W) = tr(exp(W o W)) - d and its gradient exp(W o W)^T o 2W. Zero exactly
/// when the support of W is acyclic.
ValueGrad acyclicity(const Eigen::MatrixXd& w);

/// (1/2n) ||X - XW||_F^2 evaluated directly from the residual.
ValueGrad loss_ls(const Dataset& data, const Eigen::MatrixXd& w);

/// Same loss through the covariance S = X^T X / n:
/// value = tr((I - W)^T S (I - W)) / 2, grad = -S (I - W).
class LeastSquaresLoss {
 public:
  explicit LeastSquaresLoss(const Dataset& data);

  ValueGrad operator()(const Eigen::MatrixXd& w) const;
  const Eigen::MatrixXd& covariance() const { return cov_; }
  int d() const { return static_cast<int>(cov_.rows()); }

 private:
  Eigen::MatrixXd cov_;
};

/// Sum of singular values and the subgradient U V^T of the thin SVD.
ValueGrad nuclear_norm(const Eigen::MatrixXd& w);

struct PenaltyState {
  double rho = 1.0;
  double alpha = 0.0;
  double lambda_nuc = 0.0;
};

/// L_rho = loss + alpha h + (rho/2) h^2 + lambda ||W||_*, over W directly or
/// over factors with W = U V^T.
class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const LeastSquaresLoss& loss, PenaltyState state);

  struct Terms {
    double value = 0.0;
    double loss = 0.0;
    double h = 0.0;
    double nuclear = 0.0;
  };
  struct FullEval {
    Terms terms;
    Eigen::MatrixXd grad;
  };
  struct FactorEval {
    Terms terms;
    Eigen::MatrixXd grad_u;  ///< G V
    Eigen::MatrixXd grad_v;  ///< G^T U
  };

  FullEval at(const Eigen::MatrixXd& w) const;
  FactorEval at_factors(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) const;

  const PenaltyState& state() const { return state_; }

 private:
  const LeastSquaresLoss* loss_;
  PenaltyState state_;
};

}  // namespace lrdag
