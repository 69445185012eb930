#include <doctest.h>

#include <cmath>
#include <privutil/measures.hpp>
#include <privutil/rng.hpp>

#include "helpers.hpp"

using namespace privutil;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("entropy suite on product, identity and BSC joints") {
  SUBCASE("uniform 2x2 product") {
    joint_dist j(Eigen::MatrixXd::Constant(2, 2, 0.25), {}, {});
    const auto es = entropy_suite(j, log_base::bits);
    CHECK(es.h_x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.h_y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(es.mi) < 1e-12);
  }
  SUBCASE("X = Y uniform binary") {
    Eigen::MatrixXd m(2, 2);
    m << 0.5, 0.0, 0.0, 0.5;
    const auto es = entropy_suite(joint_dist(m, {}, {}), log_base::bits);
    CHECK(es.mi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.h_y_given_x == doctest::Approx(0.0));
  }
  SUBCASE("BSC(0.3)") {
    // Independent route: -t log2 t - (1-t) log2 (1-t) at t = 0.3.
    const double expected = -(0.3 * std::log2(0.3) + 0.7 * std::log2(0.7));
    const auto es = entropy_suite(joint_dist::bsc(0.3), log_base::bits);
    CHECK(es.h_y_given_x == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.881291).epsilon(1e-6));
  }
}

TEST_CASE("chain rule holds on random instances") {
  split_rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const joint_dist j = testutil::random_joint(rng, 2 + trial % 2, 3 + trial % 2);
    const auto es = entropy_suite(j);
    const double h_xy = entropy(
        Eigen::Map<const Eigen::VectorXd>(j.matrix().data(), j.matrix().size()));
    CHECK(std::abs(h_xy - (es.h_x + es.h_y_given_x)) < 1e-12);
  }
}

TEST_CASE("divergences") {
  auto pv = [](std::initializer_list<double> v) {
    Eigen::VectorXd m(static_cast<long>(v.size()));
    long i = 0;
    for (double x : v) m(i++) = x;
    return prob_vec::validated(m, {}, false, "p");
  };
  SUBCASE("identical distributions") {
    const auto r = divergences(pv({0.4, 0.6}), pv({0.4, 0.6}));
    CHECK(r.kl == doctest::Approx(0.0));
    CHECK(r.d == doctest::Approx(0.0));
  }
  SUBCASE("disjoint support reaches the l1 maximum") {
    CHECK(l1_distance(pv({1.0, 0.0}).mass, pv({0.0, 1.0}).mass) ==
          doctest::Approx(2.0));
  }
  SUBCASE("(0.6,0.4) vs uniform") {
    const auto r = divergences(pv({0.6, 0.4}), pv({0.5, 0.5}));
    CHECK(r.d == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.kl >= r.d * r.d / 2.0);
  }
  SUBCASE("support violation is an error, not infinity") {
    CHECK_THROWS_AS(divergences(pv({0.5, 0.5}), pv({1.0, 0.0})), validation_error);
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0, log_base::bits) == doctest::Approx(0.0));
  CHECK(binary_entropy(0.5, log_base::bits) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binary_entropy(0.25, log_base::bits) == doctest::Approx(0.811278).epsilon(1e-6));
  for (double t : {0.1, 0.3, 0.45})
    CHECK(binary_entropy(t) == doctest::Approx(binary_entropy(1.0 - t)).epsilon(1e-12));
}

TEST_CASE("criterion leakages") {
  SUBCASE("independent X and U vanish") {
    Eigen::MatrixXd m = Eigen::VectorXd(Eigen::Vector2d(0.3, 0.7)) *
                        Eigen::RowVector3d(0.2, 0.5, 0.3);
    const auto r = criterion_leakages(joint_dist(m, {}, {}));
    CHECK(std::abs(r.mi_xu) < 1e-12);
    CHECK(r.weighted.maxCoeff() < 1e-12);
    CHECK(r.unweighted.maxCoeff() < 1e-12);
  }
  SUBCASE("U = X uniform binary") {
    Eigen::MatrixXd m(2, 2);
    m << 0.5, 0.0, 0.0, 0.5;
    const auto r = criterion_leakages(joint_dist(m, {}, {}));
    CHECK(r.unweighted(0) == doctest::Approx(1.0));
    CHECK(r.unweighted(1) == doctest::Approx(1.0));
  }
  SUBCASE("weighted never exceeds unweighted") {
    split_rng rng(5);
    for (int t = 0; t < 30; ++t) {
      const joint_dist j = testutil::random_joint(rng, 2, 3, 0.01, 0.0);
      const auto r = criterion_leakages(j);
      for (long u = 0; u < 3; ++u) CHECK(r.weighted(u) <= r.unweighted(u) + 1e-12);
    }
  }
}

TEST_CASE("linkage inequality along X - Y - U chains") {
  split_rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const joint_dist j = testutil::random_joint(rng, 2 + t % 2, 3, 0.01, 0.0);
    const kernel k = testutil::random_kernel(rng, 2 + t % 3, j.ny());
    const Eigen::VectorXd& py = j.py();
    const Eigen::VectorXd pu = k.matrix * py;
    const Eigen::MatrixXd x_given_y = j.x_given_y();
    for (long u = 0; u < k.n_out(); ++u) {
      if (pu(u) <= 1e-12) continue;
      Eigen::VectorXd y_given_u(j.ny());
      for (long y = 0; y < j.ny(); ++y) y_given_u(y) = k.matrix(u, y) * py(y) / pu(u);
      const Eigen::VectorXd x_given_u = x_given_y * y_given_u;
      const double l1_x = l1_distance(x_given_u, j.px());
      const double l1_y = l1_distance(y_given_u, py);
      CHECK(l1_x <= l1_y + 1e-12);                    // unweighted
      CHECK(pu(u) * l1_x <= pu(u) * l1_y + 1e-12);    // weighted
    }
  }
}

TEST_CASE("Pinsker and reverse Pinsker on random pairs") {
  split_rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const long n = 2 + t % 3;
    Eigen::VectorXd p(n), q(n);
    for (long i = 0; i < n; ++i) {
      p(i) = rng.exp1();
      q(i) = rng.exp1() + 0.05;
    }
    p /= p.sum();
    q /= q.sum();
    const double kl = kl_divergence(p, q);
    const double d = l1_distance(p, q);
    CHECK(kl >= d * d / 2.0 - 1e-12);
    CHECK(kl <= d * d / q.minCoeff() + 1e-12);
  }
}

TEST_CASE("validation rejects malformed inputs") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.6, 0.5, -0.05, -0.05;
  CHECK_THROWS_AS(joint_dist(bad, {}, {}), validation_error);

  Eigen::MatrixXd off(2, 2);
  off << 0.5, 0.5, 0.005, 0.005;  // sums to 1.01
  CHECK_THROWS_AS(joint_dist(off, {}, {}), validation_error);

  Eigen::MatrixXd zero_row(2, 2);
  zero_row << 0.5, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(joint_dist(zero_row, {}, {}), validation_error);

  CHECK_THROWS_AS(prob_vec::validated(Eigen::Vector2d(0.5, 0.0), {}, true, "px"),
                  validation_error);
}
