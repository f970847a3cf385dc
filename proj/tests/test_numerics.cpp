#include <doctest.h>

#include <cmath>
#include <random>

#include "lrdag/lbfgs.hpp"
#include "lrdag/matrix_exp.hpp"
#include "lrdag/objective.hpp"
#include "lrdag/sem.hpp"
#include "oracles.hpp"

using namespace lrdag;

namespace {

Eigen::MatrixXd gaussian(int rows, int cols, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> z(0.0, sd);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = z(rng);
  return m;
}

Eigen::VectorXd flat(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd square(const Eigen::VectorXd& v, int d) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), d, d);
}

Dataset gaussian_data(int n, int d, std::mt19937_64& rng) { return Dataset(gaussian(n, d, rng)); }

}  // namespace

TEST_CASE("matrix exponential closed forms") {
  CHECK(matrix_exp(Eigen::MatrixXd::Zero(3, 3)).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const Eigen::MatrixXd e = matrix_exp(swap);
  CHECK(e(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(e(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(e(1, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));

  std::mt19937_64 rng(1);
  Eigen::MatrixXd nil = gaussian(4, 4, rng).triangularView<Eigen::StrictlyUpper>();
  const Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(4, 4) + nil + nil * nil / 2.0 +
                                   nil * nil * nil / 6.0;
  CHECK((matrix_exp(nil) - expected).norm() <= 1e-13 * expected.norm());
}

TEST_CASE("matrix exponential against the series") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 7;
    const Eigen::MatrixXd m = gaussian(d, d, rng, 0.3 + 0.1 * (trial % 10));
    const Eigen::MatrixXd ref = oracle::series_exp(m, 80);
    CHECK((matrix_exp(m) - ref).norm() <= 1e-10 * ref.norm());
  }
  // Large norm exercises the squaring phase; compare against e^{A} = (e^{A/16})^16.
  const Eigen::MatrixXd big = gaussian(5, 5, rng, 3.0);
  Eigen::MatrixXd ref = oracle::series_exp(big / 16.0, 80);
  for (int k = 0; k < 4; ++k) ref = ref * ref;
  CHECK((matrix_exp(big) - ref).norm() <= 1e-10 * ref.norm());
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS(matrix_exp(bad));
}

TEST_CASE("acyclicity closed forms") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd lower = gaussian(5, 5, rng).triangularView<Eigen::StrictlyLower>();
  CHECK(std::abs(acyclicity(lower).value) < 1e-12);

  Eigen::MatrixXd cyc(2, 2);
  cyc << 0, 1, 1, 0;
  CHECK(acyclicity(cyc).value == doctest::Approx(2.0 * std::cosh(1.0) - 2.0).epsilon(1e-13));
  CHECK(acyclicity(cyc).value == doctest::Approx(1.08616).epsilon(1e-5));

  Eigen::MatrixXd one(1, 1);
  one << 0.7;
  const ValueGrad h = acyclicity(one);
  CHECK(h.value == doctest::Approx(std::exp(0.49) - 1.0).epsilon(1e-14));
  CHECK(h.grad(0, 0) == doctest::Approx(2.0 * 0.7 * std::exp(0.49)).epsilon(1e-14));
}

TEST_CASE("acyclicity vanishes exactly on acyclic three-node supports") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  const std::vector<std::pair<int, int>> slots{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  int acyclic = 0;
  for (int mask = 0; mask < 64; ++mask) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    for (int k = 0; k < 6; ++k)
      if (mask >> k & 1) w(slots[k].first, slots[k].second) = (k % 2 ? -1.0 : 1.0) * mag(rng);
    const bool dag = oracle::acyclic_by_dfs(w);
    acyclic += dag;
    CAPTURE(mask);
    if (dag) {
      CHECK(acyclicity(w).value < 1e-8);
    } else {
      CHECK(acyclicity(w).value > 1e-8);
    }
  }
  CHECK(acyclic == 25);
}

TEST_CASE("loss routes agree") {
  std::mt19937_64 rng(5);
  const Dataset data = gaussian_data(40, 5, rng);
  const LeastSquaresLoss loss(data);
  const Eigen::MatrixXd w = gaussian(5, 5, rng, 0.5);
  const ValueGrad direct = loss_ls(data, w);
  const ValueGrad cov = loss(w);
  const Eigen::MatrixXd x = data.values();
  const double by_hand = (x - x * w).squaredNorm() / (2.0 * 40);
  CHECK(direct.value == doctest::Approx(by_hand).epsilon(1e-13));
  CHECK(cov.value == doctest::Approx(by_hand).epsilon(1e-12));
  CHECK((direct.grad - cov.grad).norm() < 1e-12 * (1.0 + direct.grad.norm()));
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(6);
  for (int point = 0; point < 20; ++point) {
    const int d = 2 + point % 7;
    CAPTURE(point);
    const Dataset data = gaussian_data(30, d, rng);
    const LeastSquaresLoss loss(data);
    const Eigen::MatrixXd w = gaussian(d, d, rng, 0.4);

    const auto loss_f = [&](const Eigen::VectorXd& v) { return loss_ls(data, square(v, d)).value; };
    CHECK(oracle::relative_error(flat(loss_ls(data, w).grad),
                                 oracle::numeric_gradient(loss_f, flat(w))) < 1e-5);

    const auto h_f = [&](const Eigen::VectorXd& v) { return acyclicity(square(v, d)).value; };
    CHECK(oracle::relative_error(flat(acyclicity(w).grad),
                                 oracle::numeric_gradient(h_f, flat(w))) < 1e-5);

    const auto nuc_f = [&](const Eigen::VectorXd& v) { return nuclear_norm(square(v, d)).value; };
    CHECK(oracle::relative_error(flat(nuclear_norm(w).grad),
                                 oracle::numeric_gradient(nuc_f, flat(w))) < 1e-5);

    const PenaltyState state{std::pow(10.0, point % 4), 0.3 * (point % 3), 0.05 * (point % 2)};
    const AugmentedLagrangian lag(loss, state);
    const auto lag_f = [&](const Eigen::VectorXd& v) { return lag.at(square(v, d)).terms.value; };
    CHECK(oracle::relative_error(flat(lag.at(w).grad), oracle::numeric_gradient(lag_f, flat(w))) <
          1e-5);

    const int r = 1 + point % d;
    const Eigen::MatrixXd u = gaussian(d, r, rng, 0.5);
    const Eigen::MatrixXd v = gaussian(d, r, rng, 0.5);
    Eigen::VectorXd uv(2 * d * r);
    uv << flat(u), flat(v);
    const auto fac_f = [&](const Eigen::VectorXd& p) {
      const Eigen::Map<const Eigen::MatrixXd> pu(p.data(), d, r);
      const Eigen::Map<const Eigen::MatrixXd> pv(p.data() + d * r, d, r);
      return lag.at_factors(pu, pv).terms.value;
    };
    const AugmentedLagrangian::FactorEval fe = lag.at_factors(u, v);
    Eigen::VectorXd analytic(2 * d * r);
    analytic << flat(fe.grad_u), flat(fe.grad_v);
    CHECK(oracle::relative_error(analytic, oracle::numeric_gradient(fac_f, uv)) < 1e-5);
  }
}

TEST_CASE("full-width factors reproduce the full objective") {
  std::mt19937_64 rng(7);
  const int d = 6;
  const Dataset data = gaussian_data(25, d, rng);
  const LeastSquaresLoss loss(data);
  const AugmentedLagrangian lag(loss, {10.0, 0.5, 0.1});
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd u = gaussian(d, d, rng, 0.4);
    const Eigen::MatrixXd v = gaussian(d, d, rng, 0.4);
    const double full = lag.at(u * v.transpose()).terms.value;
    CHECK(std::abs(lag.at_factors(u, v).terms.value - full) <= 1e-12 * std::max(1.0, std::abs(full)));
  }
}

TEST_CASE("nuclear norm is the sum of singular values") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = 3.0;
  m(2, 0) = -4.0;
  CHECK(nuclear_norm(m).value == doctest::Approx(7.0));
}

TEST_CASE("lbfgs on a one-dimensional quadratic") {
  const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g[0] = 2.0 * (x[0] - 3.0);
    return (x[0] - 3.0) * (x[0] - 3.0);
  };
  LbfgsOptions opts;
  opts.grad_tol = 1e-10;
  const LbfgsResult r = lbfgs_minimize(f, Eigen::VectorXd::Zero(1), opts);
  CHECK(std::abs(r.x[0] - 3.0) < 1e-8);
}

TEST_CASE("lbfgs on Rosenbrock") {
  const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    g[0] = -2.0 * a - 400.0 * x[0] * b;
    g[1] = 200.0 * b;
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  LbfgsOptions opts;
  opts.grad_tol = 1e-9;
  const LbfgsResult r = lbfgs_minimize(f, x0, opts);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-5);
  for (std::size_t k = 1; k < r.values.size(); ++k) CHECK(r.values[k] <= r.values[k - 1]);
}

TEST_CASE("lbfgs returns a stationary start immediately") {
  int calls = 0;
  const Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    ++calls;
    g = 2.0 * x;
    return x.squaredNorm();
  };
  const LbfgsResult r = lbfgs_minimize(f, Eigen::VectorXd::Zero(3));
  CHECK(r.iterations == 0);
  CHECK(calls == 1);
  CHECK(r.x.isZero());
}

TEST_CASE("augmented Lagrangian values never rise across accepted steps") {
  std::mt19937_64 rng(8);
  const int d = 6;
  const Dataset data = gaussian_data(50, d, rng);
  const LeastSquaresLoss loss(data);
  const AugmentedLagrangian lag(loss, {100.0, 1.0, 0.0});
  const Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const auto e = lag.at(square(x, d));
    g = flat(e.grad);
    return e.terms.value;
  };
  const LbfgsResult r = lbfgs_minimize(f, flat(gaussian(d, d, rng, 0.3)));
  for (std::size_t k = 1; k < r.values.size(); ++k) CHECK(r.values[k] <= r.values[k - 1]);
}
