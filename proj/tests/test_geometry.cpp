#include <doctest.h>

#include <cmath>
#include <privutil/geometry.hpp>
#include <privutil/measures.hpp>
#include <privutil/rng.hpp>

#include "helpers.hpp"

using namespace privutil;
using namespace privutil::geom;

TEST_CASE("eps2 reproduction on the two reference matrices") {
  const geometry_context c1 = build_context(testutil::matrix1());
  CHECK(std::abs(c1.eps2() - 0.0341) < 5e-4);
  const error_bound e1 = error_bounds(c1, 0.0);
  CHECK(std::abs(e1.coarse_limit - 0.0171) < 5e-4);
  CHECK(std::abs(e1.fine_limit - 0.0121) < 5e-4);

  const geometry_context c2 = build_context(testutil::matrix2());
  CHECK(std::abs(c2.eps2() - 0.1994) < 5e-4);
  const error_bound e2 = error_bounds(c2, 0.0);
  CHECK(std::abs(e2.coarse_limit - 0.0997) < 5e-4);
  CHECK(std::abs(e2.fine_limit - 0.0705) < 5e-4);
}

TEST_CASE("rows of M are orthonormal on random full-rank instances") {
  split_rng rng(83);
  for (int t = 0; t < 30; ++t) {
    const joint_dist j = testutil::random_joint(rng, 2, 3 + t % 2, 0.02, 0.0);
    const geometry_context ctx = build_context(j);
    const Eigen::MatrixXd gram = ctx.m() * ctx.m().transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("cross-route identities for t and H") {
  // Independently of the SVD route, H_Omega equals the inverse of the
  // leakage submatrix and t_Omega = H_Omega P_X.
  split_rng rng(89);
  for (int t = 0; t < 20; ++t) {
    const joint_dist j = testutil::random_joint(rng, 2, 4, 0.02, 0.0);
    const geometry_context ctx = build_context(j);
    for (const auto& v : ctx.strict()) {
      Eigen::MatrixXd sub(2, 2);
      for (int i = 0; i < 2; ++i) sub.col(i) = ctx.x_given_y().col(v.omega[static_cast<std::size_t>(i)]);
      const Eigen::MatrixXd h_direct = sub.inverse();
      CHECK((v.h - h_direct).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((v.t - h_direct * j.px()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(v.t.sum() - 1.0) < 1e-9);
      // Membership in S: M t_hat = M P_Y.
      CHECK((ctx.m() * v.scattered(j.ny()) - ctx.m() * j.py()).cwiseAbs().maxCoeff() <
            1e-9);
    }
  }
}

TEST_CASE("generic vertex enumeration matches the basis construction") {
  // Independent enumerator: scan every support set of size <= |X| and keep
  // the consistent nonnegative solutions of M y = M P_Y; this must equal
  // the scattered {t_Omega} family (strict and boundary).
  split_rng rng(173);
  for (int trial = 0; trial < 15; ++trial) {
    const joint_dist j = testutil::random_joint(rng, 2, 4, 0.02, 0.0);
    const geometry_context ctx = build_context(j);
    const Eigen::VectorXd rhs = ctx.m() * j.py();

    std::vector<Eigen::VectorXd> generic;
    auto consider = [&](const std::vector<int>& support) {
      Eigen::MatrixXd cols(2, static_cast<long>(support.size()));
      for (std::size_t k = 0; k < support.size(); ++k)
        cols.col(static_cast<long>(k)) = ctx.m().col(support[k]);
      const Eigen::VectorXd sol =
          cols.completeOrthogonalDecomposition().solve(rhs);
      if ((cols * sol - rhs).cwiseAbs().maxCoeff() > 1e-10) return;
      if (sol.minCoeff() < -1e-10) return;
      Eigen::VectorXd full = Eigen::VectorXd::Zero(4);
      for (std::size_t k = 0; k < support.size(); ++k)
        full(support[k]) = std::max(sol(static_cast<long>(k)), 0.0);
      for (const auto& g : generic)
        if ((g - full).cwiseAbs().maxCoeff() < 1e-9) return;
      generic.push_back(full);
    };
    for (int a = 0; a < 4; ++a) {
      consider({a});
      for (int b = a + 1; b < 4; ++b) consider({a, b});
    }

    std::vector<Eigen::VectorXd> construction;
    for (const auto& v : ctx.strict()) construction.push_back(v.scattered(4));
    for (const auto& v : ctx.boundary()) construction.push_back(v.scattered(4));

    REQUIRE(generic.size() == construction.size());
    for (const auto& g : generic) {
      bool matched = false;
      for (const auto& c : construction)
        if ((g - c).cwiseAbs().maxCoeff() < 1e-8) matched = true;
      CHECK(matched);
    }
  }
}

TEST_CASE("null space property") {
  // Two identical kernel columns make e_i - e_j a null vector.
  Eigen::MatrixXd m(2, 3);
  m << 0.2, 0.1, 0.3, 0.2, 0.1, 0.1;  // columns 0 and 1 have equal conditionals
  const joint_dist j(m, {}, {});
  const geometry_context ctx = build_context(j);

  CHECK(null_space_property(ctx, Eigen::VectorXd::Zero(3)));
  Eigen::VectorXd beta(3);
  beta << 1.0, -1.0, 0.0;
  CHECK(null_space_property(ctx, beta));
  CHECK(std::abs(beta.sum()) < 1e-12);
  // A row-space vector is not in the null space.
  const Eigen::VectorXd row = ctx.m().row(0).transpose();
  CHECK_FALSE(null_space_property(ctx, row));
}

TEST_CASE("extreme points") {
  const geometry_context ctx = build_context(testutil::matrix1());
  REQUIRE(!ctx.strict().empty());
  const vertex_info& v = ctx.strict().front();
  SUBCASE("J = 0 reproduces t exactly") {
    const Eigen::VectorXd p = extreme_point(ctx, v, Eigen::VectorXd::Zero(2), 0.5,
                                            0.0, perletter_criterion::weighted);
    for (std::size_t i = 0; i < v.omega.size(); ++i)
      CHECK(p(v.omega[i]) == doctest::Approx(v.t(static_cast<long>(i))).epsilon(1e-15));
  }
  SUBCASE("mass one and positivity inside the validity region") {
    Eigen::VectorXd jv(2);
    jv << 0.5, -0.5;
    const Eigen::VectorXd p =
        extreme_point(ctx, v, jv, 0.5, 0.005, perletter_criterion::weighted);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    const double eps = 0.99 * ctx.eps2();
    for (const auto& vert : ctx.strict()) {
      for (double sign : {1.0, -1.0}) {
        const Eigen::VectorXd p2 = extreme_point(ctx, vert, sign * jv, 1.0, eps,
                                                 perletter_criterion::weighted);
        CHECK(p2.minCoeff() >= 0.0);
        CHECK(std::abs(p2.sum() - 1.0) < 1e-12);
      }
    }
  }
  SUBCASE("an over-large eps is an explicit infeasibility") {
    Eigen::VectorXd jv(2);
    jv << 0.5, -0.5;
    bool tripped = false;
    for (const auto& vert : ctx.strict()) {
      for (double sign : {1.0, -1.0}) {
        try {
          extreme_point(ctx, vert, sign * jv, 1.0, 6.0 * ctx.eps2(),
                        perletter_criterion::unweighted);
        } catch (const infeasible_error&) {
          tripped = true;
        }
      }
    }
    CHECK(tripped);
  }
  SUBCASE("invalid J rejected") {
    Eigen::VectorXd jv(2);
    jv << 0.7, -0.5;
    CHECK_THROWS_AS(extreme_point(ctx, v, jv, 0.5, 0.005,
                                  perletter_criterion::weighted),
                    validation_error);
  }
}

TEST_CASE("mass preservation of the perturbation map") {
  split_rng rng(97);
  for (int t = 0; t < 20; ++t) {
    const joint_dist j = testutil::random_joint(rng, 2, 4, 0.02, 0.0);
    const geometry_context ctx = build_context(j);
    for (const auto& v : ctx.strict()) {
      Eigen::VectorXd jv(2);
      jv << rng.uniform01() - 0.5, 0.0;
      jv(1) = -jv(0);
      CHECK(std::abs((v.h * jv).sum()) < 1e-10);
    }
  }
}

TEST_CASE("linearization") {
  SUBCASE("uniform vertex has -b = log |X|") {
    const geometry_context ctx = build_context(joint_dist::erasure(0.3));
    REQUIRE(ctx.strict().size() == 1);
    const linearization lin = linearize(ctx, ctx.strict().front());
    CHECK(-lin.b == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("exact entropy at J = 0") {
    const geometry_context ctx = build_context(testutil::matrix1());
    for (const auto& v : ctx.strict()) {
      const linearization lin = linearize(ctx, v);
      CHECK(-lin.b == doctest::Approx(entropy(v.t)).epsilon(1e-12));
    }
  }
  SUBCASE("first-order error is quadratic in eps") {
    const geometry_context ctx = build_context(testutil::matrix1());
    const vertex_info& v = ctx.strict().front();
    const linearization lin = linearize(ctx, v);
    Eigen::VectorXd jv(2);
    jv << 0.5, -0.5;
    const double big_c = v.sigma_max * v.sigma_max / v.t.minCoeff();
    for (double eps : {1e-4, 5e-4, 1e-3}) {
      const Eigen::VectorXd p =
          extreme_point(ctx, v, jv, 1.0, eps, perletter_criterion::unweighted);
      const double exact = entropy(p);
      const double approx = -(lin.b + eps * (lin.a * jv)(0));
      CHECK(std::abs(exact - approx) <= big_c * eps * eps);
    }
  }
}

TEST_CASE("eps2 is invariant under Y relabeling") {
  const joint_dist& j = testutil::matrix1();
  Eigen::MatrixXd perm(2, 4);
  const int order[4] = {2, 0, 3, 1};
  for (int c = 0; c < 4; ++c) perm.col(c) = j.matrix().col(order[c]);
  const geometry_context a = build_context(j);
  const geometry_context b = build_context(joint_dist(perm, {}, {}));
  CHECK(a.eps2() == doctest::Approx(b.eps2()).epsilon(1e-9));
  CHECK(a.strict().size() == b.strict().size());
}

TEST_CASE("context rejections and degeneracy classification") {
  SUBCASE("|X| >= |Y| rejected") {
    CHECK_THROWS_AS(build_context(joint_dist::bsc(0.3)), validation_error);
  }
  SUBCASE("rank-deficient leakage rejected") {
    Eigen::MatrixXd m(2, 3);  // every column conditional equals (0.5, 0.5)
    m << 0.2, 0.15, 0.15, 0.2, 0.15, 0.15;
    CHECK_THROWS_AS(build_context(joint_dist(m, {}, {})), validation_error);
  }
  SUBCASE("erasure: one strict vertex, one deduplicated boundary vertex") {
    const geometry_context ctx = build_context(joint_dist::erasure(0.3));
    REQUIRE(ctx.strict().size() == 1);
    CHECK(ctx.strict().front().t.minCoeff() > 1e-9);
    REQUIRE(ctx.boundary().size() == 1);
    const Eigen::VectorXd sc = ctx.boundary().front().scattered(3);
    CHECK(sc(1) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("error-bound regimes") {
  const geometry_context ctx = build_context(testutil::matrix1());
  const double fine_value = 1.0 / (2.0 * std::pow(2.0 * std::sqrt(2.0) - 1.0, 2)) + 0.125;
  SUBCASE("eps = 0 sits in the fine regime") {
    const error_bound e = error_bounds(ctx, 0.0);
    CHECK(e.regime == error_regime::fine);
    CHECK(e.value == doctest::Approx(fine_value).epsilon(1e-12));
  }
  SUBCASE("between the two limits: coarse 3/4") {
    const error_bound e = error_bounds(ctx, 0.015);
    CHECK(e.regime == error_regime::coarse);
    CHECK(e.value == doctest::Approx(0.75));
  }
  SUBCASE("boundaries are excluded") {
    CHECK(error_bounds(ctx, ctx.eps2() / 2.0).regime == error_regime::none);
    CHECK(error_bounds(ctx, ctx.eps2() / (2.0 * std::sqrt(2.0))).regime ==
          error_regime::coarse);
  }
}
