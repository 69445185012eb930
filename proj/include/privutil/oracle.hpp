#ifndef PRIVUTIL_ORACLE_HPP
#define PRIVUTIL_ORACLE_HPP

#include <cstdint>
#include <string>

#include "privutil/types.hpp"

namespace privutil::oracle {

enum class criterion { mi, wl, l, perfect };

const char* criterion_name(criterion c);
criterion criterion_from_name(const std::string& name);

struct grid_spec {
  double resolution = 0.02;  // step on simplex coordinates, in (0, 0.5]
  long max_card = 0;         // |U| cap; 0 picks the search-specific default
  double budget = 4e9;       // refusal threshold on candidate count
};

struct oracle_result {
  double value = 0.0;          // max I(U;Y) over the grid, nats
  Eigen::MatrixXd best_kernel; // |U| x |Y| (g) or |U| x (|X||Y|) (h)
  double resolution = 0.0;
  long max_card = 0;
  double candidates = 0.0;
};

// Lipschitz slack of a grid search: C * resolution with C = |Y| log |Y|
// (entropy is |log(min mass)|-Lipschitz in l1 on the simplex; quantizing a
// kernel column moves each conditional by at most |Y| * resolution in l1,
// so the utility moves by at most |Y| log|Y| * resolution for the instances
// this oracle accepts).
double slack(long ny, double resolution);

// Exhaustive search over grid-quantized column-stochastic P_{U|Y}.
// Criterion feasibility is checked exactly; only the objective suffers
// quantization, so the value is a lower bound on the true optimum and
// refining the grid never decreases it.  Throws infeasible_error with a
// cost estimate when the candidate count exceeds grid.budget.
oracle_result brute_force_g(const joint_dist& j, double eps, criterion crit,
                            const grid_spec& grid);

// Exhaustive search over grid-quantized P_{U|X,Y} under I(U;X) <= eps.
oracle_result brute_force_h(const joint_dist& j, double eps, const grid_spec& grid);

struct audit_result {
  double h_y_given_xu = 0.0;  // expected ~ 0 at an unrestricted optimum
  bool equality_case = false; // H(X|Y) = 0 within tolerance
  double h_opt = 0.0;
  double hyx_plus_eps = 0.0;
  bool equality_within_slack = false;
};

// Structural checks on a brute_force_h optimizer.
audit_result optimizer_audits(const joint_dist& j, double eps,
                              const oracle_result& h_best);

}  // namespace privutil::oracle

#endif  // PRIVUTIL_ORACLE_HPP
