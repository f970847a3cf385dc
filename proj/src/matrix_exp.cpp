#include "lrdag/matrix_exp.hpp"

#include <cmath>
#include <stdexcept>

namespace lrdag {

namespace {

// theta_13 from Higham (2005): largest 1-norm for which the degree-13
// approximant is accurate to double precision.
constexpr double kTheta13 = 5.371920351148152;

constexpr double kPade13[14] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entries");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Eigen::MatrixXd a = squarings > 0 ? Eigen::MatrixXd(std::ldexp(1.0, -squarings) * m) : m;

  const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const double* b = kPade13;

  Eigen::MatrixXd inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Eigen::MatrixXd odd = a6 * inner;
  odd += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Eigen::MatrixXd u = a * odd;

  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  Eigen::MatrixXd v = a6 * inner;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Eigen::MatrixXd result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

}  // namespace lrdag
