#ifndef PRIVUTIL_SIMPLEX_HPP
#define PRIVUTIL_SIMPLEX_HPP

#include <Eigen/Dense>

namespace privutil::lp {

// min c'x  subject to  A x = b, x >= 0.
struct lp_problem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class lp_status { optimal, infeasible, unbounded };

struct lp_solution {
  lp_status status = lp_status::infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  double residual = 0.0;  // max(|Ax - b|_inf, violation of x >= 0)
  long iterations = 0;
};

// Two-phase dense tableau simplex with Bland's rule (deterministic, no
// cycling).  Sized for the small programs this project builds (tens of
// variables); not a general-purpose solver.
lp_solution solve_lp(const lp_problem& p);

}  // namespace privutil::lp

#endif  // PRIVUTIL_SIMPLEX_HPP
