#ifndef PRIVUTIL_TESTS_HELPERS_HPP
#define PRIVUTIL_TESTS_HELPERS_HPP

#include <privutil/measures.hpp>
#include <privutil/rng.hpp>
#include <privutil/types.hpp>

namespace testutil {

// Dirichlet(1)-style random joint with floors on the marginals and on
// I(X;Y), so that every instance admits a non-trivial leakage budget.
inline privutil::joint_dist random_joint(privutil::split_rng& rng, long nx, long ny,
                                         double min_marginal = 0.03,
                                         double min_mi = 0.02) {
  while (true) {
    Eigen::MatrixXd m(nx, ny);
    for (long x = 0; x < nx; ++x)
      for (long y = 0; y < ny; ++y) m(x, y) = rng.exp1();
    m /= m.sum();
    if (m.rowwise().sum().minCoeff() < min_marginal) continue;
    if (m.colwise().sum().minCoeff() < min_marginal) continue;
    privutil::joint_dist j(m, {}, {});
    if (privutil::entropy_suite(j).mi < min_mi) continue;
    return j;
  }
}

// Random column-stochastic kernel (rows = outputs).
inline privutil::kernel random_kernel(privutil::split_rng& rng, long n_out, long n_in) {
  Eigen::MatrixXd m(n_out, n_in);
  for (long c = 0; c < n_in; ++c) {
    double s = 0.0;
    for (long r = 0; r < n_out; ++r) {
      m(r, c) = rng.exp1();
      s += m(r, c);
    }
    m.col(c) /= s;
  }
  return privutil::kernel::validated(std::move(m), "random kernel");
}

// Joint with X a deterministic function of Y (H(X|Y) = 0).
inline privutil::joint_dist random_x_of_y(privutil::split_rng& rng, long nx, long ny) {
  while (true) {
    Eigen::VectorXd py(ny);
    for (long y = 0; y < ny; ++y) py(y) = rng.exp1();
    py /= py.sum();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nx, ny);
    std::vector<long> assign(static_cast<std::size_t>(ny));
    for (long y = 0; y < ny; ++y)
      assign[static_cast<std::size_t>(y)] = y < nx ? y : rng.categorical(Eigen::VectorXd::Ones(nx));
    for (long y = 0; y < ny; ++y) m(assign[static_cast<std::size_t>(y)], y) = py(y);
    if (m.rowwise().sum().minCoeff() <= 0.02) continue;
    return privutil::joint_dist(m, {}, {});
  }
}

inline const privutil::joint_dist& matrix1() {
  static const privutil::joint_dist j(
      (Eigen::MatrixXd(2, 4) << 0.693, 0.027, 0.108, 0.072, 0.006, 0.085, 0.004,
       0.005)
          .finished(),
      {}, {});
  return j;
}

inline const privutil::joint_dist& matrix2() {
  static const privutil::joint_dist j(
      (Eigen::MatrixXd(2, 4) << 0.350, 0.025, 0.085, 0.040, 0.025, 0.425, 0.035,
       0.015)
          .finished(),
      {}, {});
  return j;
}

}  // namespace testutil

#endif  // PRIVUTIL_TESTS_HELPERS_HPP
