#include "privutil/measures.hpp"

#include <cmath>

namespace privutil {

double entropy(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (long i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  return h;
}

double binary_entropy(double theta, log_base base) {
  if (theta < 0.0 || theta > 1.0)
    throw validation_error("binary_entropy: theta must lie in [0, 1]");
  double h = 0.0;
  if (theta > 0.0) h -= theta * std::log(theta);
  if (theta < 1.0) h -= (1.0 - theta) * std::log(1.0 - theta);
  return to_base(h, base);
}

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size())
    throw validation_error("kl_divergence: length mismatch");
  double kl = 0.0;
  for (long i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    if (q(i) <= 0.0)
      throw validation_error("kl_divergence: support violation at index " +
                             std::to_string(i) + " (p > 0, q = 0)");
    kl += p(i) * std::log(p(i) / q(i));
  }
  return kl;
}

double l1_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size())
    throw validation_error("l1_distance: length mismatch");
  return (p - q).cwiseAbs().sum();
}

entropy_suite_result entropy_suite(const joint_dist& j, log_base base) {
  entropy_suite_result r;
  r.h_x = entropy(j.px());
  r.h_y = entropy(j.py());
  r.h_y_given_x_each = Eigen::VectorXd::Zero(j.nx());
  const Eigen::MatrixXd y_x = j.y_given_x();
  double h_ygx = 0.0;
  for (long x = 0; x < j.nx(); ++x) {
    r.h_y_given_x_each(x) = entropy(y_x.col(x));
    h_ygx += j.px()(x) * r.h_y_given_x_each(x);
  }
  r.h_y_given_x = h_ygx;
  const Eigen::MatrixXd x_y = j.x_given_y();
  double h_xgy = 0.0;
  for (long y = 0; y < j.ny(); ++y) h_xgy += j.py()(y) * entropy(x_y.col(y));
  r.h_x_given_y = h_xgy;
  r.mi = r.h_y - r.h_y_given_x;
  if (base == log_base::bits) {
    const double s = 1.0 / std::log(2.0);
    r.h_x *= s;
    r.h_y *= s;
    r.h_x_given_y *= s;
    r.h_y_given_x *= s;
    r.mi *= s;
    r.h_y_given_x_each *= s;
  }
  return r;
}

divergence_result divergences(const prob_vec& p, const prob_vec& q) {
  return divergence_result{kl_divergence(p.mass, q.mass), l1_distance(p.mass, q.mass)};
}

criterion_leakage_result criterion_leakages(const joint_dist& joint_xu) {
  criterion_leakage_result r;
  const long nu = joint_xu.ny();
  const Eigen::VectorXd& px = joint_xu.px();
  const Eigen::VectorXd& pu = joint_xu.py();
  r.weighted = Eigen::VectorXd::Zero(nu);
  r.unweighted = Eigen::VectorXd::Zero(nu);
  const Eigen::MatrixXd x_u = joint_xu.x_given_y();
  for (long u = 0; u < nu; ++u) {
    r.weighted(u) = l1_distance(joint_xu.matrix().col(u), px * pu(u));
    r.unweighted(u) = l1_distance(x_u.col(u), px);
  }
  const entropy_suite_result es = entropy_suite(joint_xu);
  r.mi_xu = es.mi;
  return r;
}

tri_measures measures_xyu(const tri_joint& t) {
  tri_measures m;
  const Eigen::VectorXd px = t.marginal(0);
  const Eigen::VectorXd py = t.marginal(1);
  const Eigen::VectorXd pu = t.marginal(2);
  const Eigen::MatrixXd pxy = t.pair_marginal(0, 1);
  const Eigen::MatrixXd pxu = t.pair_marginal(0, 2);
  const Eigen::MatrixXd pyu = t.pair_marginal(1, 2);

  auto mat_entropy = [](const Eigen::MatrixXd& a) {
    return entropy(Eigen::Map<const Eigen::VectorXd>(a.data(), a.size()));
  };
  m.h_x = entropy(px);
  m.h_y = entropy(py);
  m.h_u = entropy(pu);
  const double h_xy = mat_entropy(pxy);
  const double h_xu = mat_entropy(pxu);
  const double h_yu = mat_entropy(pyu);
  double h_xyu = 0.0;
  for (double v : t.flat())
    if (v > 0.0) h_xyu -= v * std::log(v);

  m.i_xu = m.h_x + m.h_u - h_xu;
  m.i_yu = m.h_y + m.h_u - h_yu;
  m.h_y_given_x = h_xy - m.h_x;
  m.h_x_given_y = h_xy - m.h_y;
  m.h_y_given_xu = h_xyu - h_xu;
  m.i_xu_given_y = h_xy + h_yu - m.h_y - h_xyu;

  const long nx = t.dim(0);
  const long nu = t.dim(2);
  m.weighted = Eigen::VectorXd::Zero(nu);
  m.unweighted = Eigen::VectorXd::Zero(nu);
  for (long u = 0; u < nu; ++u) {
    double dw = 0.0;
    for (long x = 0; x < nx; ++x) dw += std::abs(pxu(x, u) - px(x) * pu(u));
    m.weighted(u) = dw;
    if (pu(u) > 0.0) m.unweighted(u) = dw / pu(u);
  }
  return m;
}

}  // namespace privutil
