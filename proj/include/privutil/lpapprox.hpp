#ifndef PRIVUTIL_LPAPPROX_HPP
#define PRIVUTIL_LPAPPROX_HPP

#include <optional>
#include <vector>

#include "privutil/geometry.hpp"
#include "privutil/types.hpp"

namespace privutil::lp {

// Solved eta variables for one Omega-combination: one block per disclosed
// atom u, together with the chosen basis index into the context's vertex
// list (strict vertices first, then boundary).
struct eta_assignment {
  std::vector<int> vertex;           // candidate index per atom
  std::vector<Eigen::VectorXd> eta;  // |X| block per atom
};

struct reconstructed_mechanism {
  Eigen::VectorXd p_u;                  // positive weights only
  std::vector<Eigen::VectorXd> j;       // perturbation per retained atom
  Eigen::MatrixXd y_given_u;            // |Y| x |U| kernel columns
  std::vector<std::vector<int>> omega;  // basis per retained atom
};

struct approx_result {
  double lp_value = 0.0;            // approximated min H(Y|U), nats
  double exact_cond_entropy = 0.0;  // exact H(Y|U*) of the reconstruction
  double utility_lb = 0.0;          // H(Y) - exact_cond_entropy; a true lower bound
  double approx_utility = 0.0;      // H(Y) - lp_value
  double eps = 0.0;
  double eps2 = 0.0;
  geom::error_regime regime = geom::error_regime::none;
  double error_bound = 0.0;
  std::optional<double> upper1, upper2;  // approx + 3/4 / fine constant (l only)
  reconstructed_mechanism mechanism;
  double worst_criterion_distance = 0.0;
  double mixture_residual = 0.0;
  bool heuristic = false;
  bool invertible_kernel = false;  // square invertible leakage: g0 = 0
  long combinations_tried = 0;
};

// Perfect privacy: exact LP over the J = 0 polytope vertices (strict and
// boundary-degenerate).  A square invertible leakage matrix short-circuits
// to g0 = 0 with invertible_kernel set.
approx_result solve_g0(const joint_dist& j);

// Linearized minimization of H(Y|U) under the weighted strong l1 criterion;
// enumerates Omega-combinations (multisets over usable vertices, boundary
// vertices enter with J frozen at zero), solves the sign-split eta LP per
// combination and keeps the global minimum.  eps = 0 reduces to solve_g0.
approx_result solve_g_wl(const joint_dist& j, double eps,
                         std::size_t combo_cap = 1000000);

// Same machinery under the unweighted strong l1 criterion (perturbation
// P_{X|U=u} = P_X + eps J_u, combination constraint sum_u P_U(u) J_u = 0);
// also emits the regime-based upper bounds on the approximated value.
approx_result solve_g_l(const joint_dist& j, double eps,
                        std::size_t combo_cap = 1000000);

// Inverts the eta transform: P_U(u) = 1'eta_u and the displayed J_u
// recovery; zero-weight blocks are dropped, eps = 0 bypasses the division.
reconstructed_mechanism reconstruct(const eta_assignment& assignment,
                                    const geom::geometry_context& ctx, double eps,
                                    geom::perletter_criterion crit);

}  // namespace privutil::lp

#endif  // PRIVUTIL_LPAPPROX_HPP
