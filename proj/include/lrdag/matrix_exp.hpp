#pragma once

#include <Eigen/Dense>

namespace lrdag {

/// e^M by scaling and squaring with the degree-13 Pade approximant: M is
/// scaled by 2^-s so that its 1-norm is at most 5.37, then the approximant
/// is squared s times. Throws std::invalid_argument on non-finite input.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

}  // namespace lrdag
