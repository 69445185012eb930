#ifndef PRIVUTIL_MECHANISMS_HPP
#define PRIVUTIL_MECHANISMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privutil/measures.hpp"
#include "privutil/types.hpp"

namespace privutil::mech {

// Label reserved for the randomized-response dummy symbol.
inline constexpr const char* kDummySymbol = "⊥";  // ⊥

enum class rep_kind { frl, efrl, sfrl, esfrl };

const char* rep_kind_name(rep_kind k);

// A functional representation: disclosed variable U with mass p_u, a
// deterministic table f(u, x) -> y, and the conditional P_{U|X} (equal to
// p_u for every x in the independent FRL case).
struct functional_rep {
  rep_kind kind = rep_kind::frl;
  double eps = 0.0;    // nats; exact leakage target for efrl
  double alpha = 0.0;  // eps / H(X)
  std::vector<std::string> atom_labels;
  Eigen::VectorXd p_u;
  Eigen::MatrixXd p_u_given_x;           // |U| x |X|, columns sum to 1
  Eigen::MatrixXi f;                     // |U| x |X| -> y index
  std::vector<std::string> x_labels, y_labels;

  long n_atoms() const { return p_u.size(); }

  // P_{Y|X} induced by (P_{U|X}, f); must reproduce the source conditional.
  Eigen::MatrixXd induced_y_given_x() const;

  // Full joint over (X, Y, U) against the source joint's P_X.
  tri_joint to_joint(const joint_dist& j) const;
};

// Interval-superposition FRL: the common refinement of the per-x cumulative
// partitions of [0,1) into intervals of length P_{Y|X}(y|x).  Half-open
// intervals; breakpoints closer than 1e-12 are merged.  The input column
// order defines the partition, so different Y orders give different
// (equally valid) representations.
functional_rep frl(const joint_dist& j);

// EFRL: U = (U_frl, W) with W = X w.p. alpha = eps/H(X), else the dummy
// symbol.  Requires 0 <= eps < I(X;Y) and H(X) > 0; achieves I(U;X) = eps
// exactly and H(Y|U,X) = 0.
functional_rep efrl(const joint_dist& j, double eps);

struct mechanism_summary {
  double i_uy, i_ux, i_ux_given_y, h_y_given_xu;
  Eigen::VectorXd weighted, unweighted;  // per-letter leakages
};

// A disclosure mechanism as a full joint over (X, Y, U) plus its summary.
struct mechanism {
  tri_joint joint;
  mechanism_summary summary;
  std::vector<std::string> u_labels;
  double truncation_mass = 0.0;   // sampling-based constructions only
  bool truncation_warning = false;
  long n_draws = 0;

  explicit mechanism(tri_joint t);
};

// Mechanism induced by a kernel P_{U|Y} (first scenario; X-Y-U holds).
mechanism from_y_kernel(const joint_dist& j, const kernel& u_given_y);

// Mechanism induced by a functional representation (second scenario).
mechanism from_rep(const joint_dist& j, const functional_rep& rep);

// Empirical SFRL mechanism via the Poisson functional representation: race
// times T_k against i.i.d. candidates Ybar_k ~ P_Y with
// U = argmin_k T_k / (P_{Y|X}(Ybar_k|x) / P_Y(Ybar_k)) and Y = Ybar_U.
// Draws whose winner cannot be certified within max_index race entries are
// counted into truncation_mass; a mass above 1e-3 sets truncation_warning.
mechanism sfrl_sample(const joint_dist& j, long n_draws, long max_index,
                      std::uint64_t seed);

// Empirical ESFRL: the SFRL disclosure augmented with the randomized
// response W = X w.p. alpha = eps/H(X).
mechanism esfrl_sample(const joint_dist& j, double eps, long n_draws,
                       long max_index, std::uint64_t seed);

struct utility_decomposition {
  double i_yu, i_xu, h_y_given_x, h_y_given_xu, i_xu_given_y;
  double residual;  // i_yu - (i_xu + h_y_given_x - h_y_given_xu - i_xu_given_y)
};

// I(Y;U) = I(X;U) + H(Y|X) - H(Y|U,X) - I(X;U|Y); residual is the numerical
// defect of that identity on the mechanism's joint.
utility_decomposition decompose_utility(const mechanism& m);

// SFRL bound log(I(X;Y)+1) + 4 together with the tighter alternative
// constant e^-1 log e + 2 + log(I(X;Y) + e^-1 log e + 2).
struct sfrl_constant {
  double standard;
  double tighter;
};
sfrl_constant sfrl_bound_constant(double mi_xy);

struct entropy_cap_result {
  bool holds;
  double h_u;
  double cap;        // sum_x H(Y|X=x) + eps + h(alpha)
  double margin;     // cap - h_u
  double sup_lower;  // H(Y|X) + h(alpha) + eps
};

// Checks H(U) <= sum_x H(Y|X=x) + eps + h(alpha) on an EFRL/FRL-built rep.
entropy_cap_result entropy_cap_check(const functional_rep& rep, const joint_dist& j,
                                     double eps);

}  // namespace privutil::mech

#endif  // PRIVUTIL_MECHANISMS_HPP
