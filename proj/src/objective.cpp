#include "lrdag/objective.hpp"

#include <stdexcept>

#include "lrdag/matrix_exp.hpp"

namespace lrdag {

namespace {
void check_square(const Eigen::MatrixXd& w, int d) {
  if (w.rows() != d || w.cols() != d)
    throw std::invalid_argument("weight matrix must be " + std::to_string(d) + "x" +
                                std::to_string(d));
}
}  // namespace

ValueGrad acyclicity(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("acyclicity: matrix must be square");
  const Eigen::MatrixXd e = matrix_exp(w.cwiseProduct(w));
  return {e.trace() - static_cast<double>(w.rows()), e.transpose().cwiseProduct(2.0 * w)};
}

ValueGrad loss_ls(const Dataset& data, const Eigen::MatrixXd& w) {
  check_square(w, data.d());
  const double n = data.n();
  const Eigen::MatrixXd residual = data.values() - data.values() * w;
  return {0.5 / n * residual.squaredNorm(), -1.0 / n * data.values().transpose() * residual};
}

LeastSquaresLoss::LeastSquaresLoss(const Dataset& data)
    : cov_(data.values().transpose() * data.values() / static_cast<double>(data.n())) {}

ValueGrad LeastSquaresLoss::operator()(const Eigen::MatrixXd& w) const {
  check_square(w, d());
  Eigen::MatrixXd r = -w;
  r.diagonal().array() += 1.0;
  Eigen::MatrixXd sr = cov_ * r;
  const double value = 0.5 * r.cwiseProduct(sr).sum();
  return {value, -sr};
}

ValueGrad nuclear_norm(const Eigen::MatrixXd& w) {
  if (!w.allFinite()) throw std::invalid_argument("nuclear_norm: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues().sum(), svd.matrixU() * svd.matrixV().transpose()};
}

AugmentedLagrangian::AugmentedLagrangian(const LeastSquaresLoss& loss, PenaltyState state)
    : loss_(&loss), state_(state) {
  if (!(state_.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(state_.lambda_nuc >= 0.0)) throw std::invalid_argument("lambda_nuc must be nonnegative");
}

AugmentedLagrangian::FullEval AugmentedLagrangian::at(const Eigen::MatrixXd& w) const {
  ValueGrad loss = (*loss_)(w);
  const ValueGrad h = acyclicity(w);
  FullEval out;
  out.terms.loss = loss.value;
  out.terms.h = h.value;
  out.grad = std::move(loss.grad);
  out.grad += (state_.alpha + state_.rho * h.value) * h.grad;
  if (state_.lambda_nuc > 0.0) {
    const ValueGrad nuc = nuclear_norm(w);
    out.terms.nuclear = nuc.value;
    out.grad += state_.lambda_nuc * nuc.grad;
  }
  out.terms.value = loss.value + state_.alpha * h.value + 0.5 * state_.rho * h.value * h.value +
                    state_.lambda_nuc * out.terms.nuclear;
  return out;
}

AugmentedLagrangian::FactorEval AugmentedLagrangian::at_factors(const Eigen::MatrixXd& u,
                                                                const Eigen::MatrixXd& v) const {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("factor shapes differ");
  FullEval full = at(u * v.transpose());
  FactorEval out;
  out.terms = full.terms;
  out.grad_u = full.grad * v;
  out.grad_v = full.grad.transpose() * u;
  return out;
}

}  // namespace lrdag
