#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <privutil/bounds.hpp>
#include <privutil/lpapprox.hpp>
#include <privutil/measures.hpp>
#include <privutil/mechanisms.hpp>
#include <privutil/oracle.hpp>
#include <privutil/rng.hpp>

#include "helpers.hpp"

using namespace privutil;
using namespace privutil::oracle;

namespace {
double fixture_value(const std::string& instance, const std::string& criterion,
                     double eps) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/oracle_fixtures.json");
  REQUIRE(in.good());
  const nlohmann::json doc = nlohmann::json::parse(in);
  for (const auto& f : doc["fixtures"])
    if (f["instance"] == instance && f["criterion"] == criterion &&
        std::abs(f["eps"].get<double>() - eps) < 1e-12)
      return f["value"].get<double>();
  FAIL("fixture not found");
  return 0.0;
}
}  // namespace

TEST_CASE("perfect-privacy search on the erasure channel") {
  // The optimal disclosure (is Y the erasure symbol?) lies exactly on the
  // grid, so the exact-feasibility search reaches h(theta).
  const joint_dist j = joint_dist::erasure(0.3);
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 3;
  const oracle_result r = brute_force_g(j, 0.0, criterion::perfect, g);
  CHECK(r.value == doctest::Approx(binary_entropy(0.3)).epsilon(1e-9));
}

TEST_CASE("mi-criterion search is pinned by the X = f(Y) equality case") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.25;
  m(1, 2) = 0.25;  // X = 1{Y != 0}
  const joint_dist j(m, {}, {});
  const auto es = entropy_suite(j);
  const double eps = 0.05;
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 3;
  const oracle_result r = brute_force_g(j, eps, criterion::mi, g);
  CHECK(r.value <= es.h_y_given_x + eps + 1e-12);
  CHECK(r.value >= es.h_y_given_x + eps - slack(j.ny(), g.resolution));
}

TEST_CASE("grid refinement never decreases the value") {
  const joint_dist j = joint_dist::erasure(0.3);
  grid_spec coarse, fine;
  coarse.resolution = 0.2;
  fine.resolution = 0.1;
  coarse.max_card = fine.max_card = 2;
  const double v_coarse = brute_force_g(j, 0.1, criterion::l, coarse).value;
  const double v_fine = brute_force_g(j, 0.1, criterion::l, fine).value;
  CHECK(v_fine >= v_coarse - 1e-12);
}

TEST_CASE("oversized searches are refused with a cost estimate") {
  grid_spec g;
  g.resolution = 0.02;
  g.max_card = 4;
  g.budget = 1e6;
  CHECK_THROWS_AS(brute_force_g(testutil::matrix1(), 0.01, criterion::wl, g),
                  infeasible_error);
  try {
    brute_force_g(testutil::matrix1(), 0.01, criterion::wl, g);
  } catch (const infeasible_error& e) {
    CHECK(std::string(e.what()).find("candidates") != std::string::npos);
  }
}

TEST_CASE("matrix-1 per-letter fixtures") {
  // Frozen from the first verified run (grid 0.02, |U| = 2) and confirmed
  // with an independent vectorized implementation.
  grid_spec g;
  g.resolution = 0.02;
  g.max_card = 2;
  const oracle_result wl =
      brute_force_g(testutil::matrix1(), 0.005, criterion::wl, g);
  CHECK(wl.value == doctest::Approx(fixture_value("matrix1", "wl", 0.005)).epsilon(1e-9));
  const oracle_result l = brute_force_g(testutil::matrix1(), 0.005, criterion::l, g);
  CHECK(l.value == doctest::Approx(fixture_value("matrix1", "l", 0.005)).epsilon(1e-9));
  // Oracle values are lower bounds, so the closed-form upper bounds on the
  // per-letter problems must dominate them.
  const auto rep = bounds::perletter_closed_bounds(testutil::matrix1(), 0.005);
  CHECK(wl.value <= rep.value_of("U_gwl") + 1e-12);
  CHECK(l.value <= rep.value_of("U_hl") + 1e-12);
}

TEST_CASE("brute_force_h on BSC stays under the joint-access upper bounds") {
  const joint_dist j = joint_dist::bsc(0.3);
  const auto es = entropy_suite(j);
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 2;
  const double eps = 0.02;  // nats
  const oracle_result r = brute_force_h(j, eps, g);
  CHECK(r.value <= es.h_y_given_x + eps + 1e-12);
  CHECK(r.value >= 0.0);
  // Under a |U| cap the optimizer property H(Y|X,U) ~ 0 is not implied (its
  // proof appends an extra FRL component); only sanity is asserted here.
  const audit_result audit = optimizer_audits(j, eps, r);
  CHECK(audit.h_y_given_xu >= 0.0);
  CHECK(audit.h_y_given_xu <= es.h_y_given_x + 1e-12);
}

TEST_CASE("h-search optimizer keeps H(Y|X,U) small when |U| suffices") {
  // X = f(Y) with binary ambiguity: a two-letter U can realize the optimum,
  // so the grid optimizer approaches the H(Y|X,U) = 0 property.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.25;
  m(1, 2) = 0.25;
  const joint_dist j(m, {}, {});
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 2;
  const double eps = 0.05;
  const oracle_result r = brute_force_h(j, eps, g);
  const audit_result audit = optimizer_audits(j, eps, r);
  CHECK(audit.h_y_given_xu <= slack(j.ny(), g.resolution));
}

TEST_CASE("h sandwich on a random 2x2 instance") {
  split_rng rng(99);
  Eigen::MatrixXd m(2, 2);
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = rng.exp1();
  m /= m.sum();
  const joint_dist j(m, {}, {});
  const auto es = entropy_suite(j);
  const double eps = 0.3 * es.mi;
  const double c = mech::sfrl_bound_constant(es.mi).standard;
  const double alpha = eps / es.h_x;
  const double l1 = es.h_y - es.h_x + eps;
  const double l2 =
      es.h_y_given_x - alpha * es.h_x_given_y + eps - (1.0 - alpha) * c;
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 2;
  const double v = brute_force_h(j, eps, g).value;
  CHECK(v >= std::max(l1, l2) - slack(j.ny(), g.resolution));
  CHECK(v <= es.h_y_given_x + eps + slack(j.ny(), g.resolution));
}

TEST_CASE("parallel scans are deterministic") {
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 3;
  const oracle_result a = brute_force_g(joint_dist::erasure(0.3), 0.05, criterion::l, g);
  const oracle_result b = brute_force_g(joint_dist::erasure(0.3), 0.05, criterion::l, g);
  CHECK(a.value == b.value);
  CHECK((a.best_kernel - b.best_kernel).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("h search dominates the g search on the same instance") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.25;
  m(1, 2) = 0.25;
  const joint_dist j(m, {}, {});
  grid_spec g;
  g.resolution = 0.1;
  g.max_card = 2;
  const double eps = 0.05;
  const double vg = brute_force_g(j, eps, criterion::mi, g).value;
  const double vh = brute_force_h(j, eps, g).value;
  CHECK(vh >= vg - 1e-12);
}

TEST_CASE("optimizer audits on a deliberately poor kernel") {
  const joint_dist j = joint_dist::bsc(0.3);
  oracle_result constant;
  constant.value = 0.0;
  constant.best_kernel = Eigen::MatrixXd::Zero(2, 4);
  constant.best_kernel.row(0).setOnes();  // U constant
  constant.resolution = 0.05;
  constant.max_card = 2;
  const audit_result r = optimizer_audits(j, 0.0, constant);
  CHECK(r.h_y_given_xu == doctest::Approx(entropy_suite(j).h_y_given_x).epsilon(1e-12));
  CHECK(r.h_y_given_xu > 0.1);
}

TEST_CASE("audits report the equality case when X = f(Y)") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.25;
  m(1, 2) = 0.25;
  const joint_dist j(m, {}, {});
  grid_spec g;
  g.resolution = 0.05;
  g.max_card = 2;
  const double eps = 0.05;
  const oracle_result h = brute_force_h(j, eps, g);
  const audit_result r = optimizer_audits(j, eps, h);
  CHECK(r.equality_case);
  CHECK(r.equality_within_slack);
}

TEST_CASE("grid validation") {
  grid_spec g;
  g.resolution = 0.6;
  CHECK_THROWS_AS(brute_force_g(joint_dist::erasure(0.3), 0.0, criterion::perfect, g),
                  validation_error);
  g.resolution = 0.05;
  g.max_card = 5;
  CHECK_THROWS_AS(brute_force_g(joint_dist::erasure(0.3), 0.0, criterion::perfect, g),
                  validation_error);
}
