#ifndef PRIVUTIL_MEASURES_HPP
#define PRIVUTIL_MEASURES_HPP

#include "privutil/types.hpp"

namespace privutil {

// Shannon entropy in nats with 0 log 0 := 0.  Input need not be validated.
double entropy(const Eigen::VectorXd& p);

// h(theta) in the requested base.
double binary_entropy(double theta, log_base base = log_base::nats);

// KL(p||q) in nats.  Throws validation_error if q(i) == 0 while p(i) > 0.
double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// d(P,Q) = sum_i |P(i) - Q(i)|: the full l1 distance, range [0, 2].
double l1_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct entropy_suite_result {
  double h_x;
  double h_y;
  double h_x_given_y;
  double h_y_given_x;
  double mi;                        // I(X;Y) = H(Y) - H(Y|X), same summation order
  Eigen::VectorXd h_y_given_x_each; // H(Y|X=x)
};

entropy_suite_result entropy_suite(const joint_dist& j, log_base base = log_base::nats);

struct divergence_result {
  double kl;  // nats
  double d;   // l1
};

divergence_result divergences(const prob_vec& p, const prob_vec& q);

// Per-letter leakage of a joint over (X, U): the weighted criterion
// d(P_{X,U}(.,u), P_X P_U(u)) and the unweighted d(P_{X|U}(.|u), P_X).
struct criterion_leakage_result {
  double mi_xu;              // nats
  Eigen::VectorXd weighted;
  Eigen::VectorXd unweighted;
};

criterion_leakage_result criterion_leakages(const joint_dist& joint_xu);

// Measures of a three-axis joint, axes fixed as (X, Y, U).  All in nats.
struct tri_measures {
  double h_x, h_y, h_u;
  double i_xu, i_yu;
  double i_xu_given_y;
  double h_y_given_x, h_y_given_xu;
  double h_x_given_y;
  Eigen::VectorXd weighted;    // d(P_{X,U}(.,u), P_X P_U(u)) per u
  Eigen::VectorXd unweighted;  // d(P_{X|U}(.|u), P_X) per u; 0 for P_U(u)=0
};

tri_measures measures_xyu(const tri_joint& t);

}  // namespace privutil

#endif  // PRIVUTIL_MEASURES_HPP
