#include "privutil/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "privutil/mechanisms.hpp"

namespace privutil::bounds {

const bound_entry* bounds_report::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

double bounds_report::value_of(const std::string& id) const {
  const bound_entry* e = find(id);
  if (!e) throw internal_error("bounds_report: no entry '" + id + "'");
  return e->value;
}

double bounds_report::worst_ordering_violation() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& lo : entries) {
    if (lo.kind != bound_kind::lower || !lo.valid) continue;
    for (const auto& hi : entries) {
      if (hi.kind == bound_kind::lower || !hi.valid) continue;
      if (hi.quantity != lo.quantity) continue;
      worst = std::max(worst, lo.value - hi.value);
    }
  }
  return worst;
}

bounds_report h_bounds_mi(const joint_dist& j, double eps, double g0) {
  const entropy_suite_result es = entropy_suite(j);
  if (eps < 0.0 || eps >= es.mi)
    throw validation_error("h_bounds_mi: need 0 <= eps < I(X;Y) = " +
                           std::to_string(es.mi) +
                           " nats (at eps >= I(X;Y) the optimum is H(Y))");
  const double alpha = es.h_x > 0.0 ? eps / es.h_x : 0.0;
  const double c = mech::sfrl_bound_constant(es.mi).standard;

  bounds_report r;
  r.entries.push_back({"L1_eps", "h_eps", bound_kind::lower,
                       es.h_y - es.h_x + eps, true, true, "0 <= eps < I(X;Y)",
                       "H(Y) - H(X) + eps"});
  r.entries.push_back({"L2_eps", "h_eps", bound_kind::lower,
                       es.h_y_given_x - alpha * es.h_x_given_y + eps -
                           (1.0 - alpha) * c,
                       true, true, "0 <= eps < I(X;Y)",
                       "H(Y|X) - a H(X|Y) + eps - (1-a)(log(I+1)+4), a = eps/H(X)"});
  r.entries.push_back({"L3_eps", "h_eps", bound_kind::lower,
                       eps * es.h_y / es.mi + g0 * (1.0 - eps / es.mi), true, true,
                       "0 <= eps < I(X;Y); g0 injected",
                       "eps H(Y)/I + g0 (1 - eps/I)"});
  r.entries.push_back({"U_eps", "h_eps", bound_kind::upper, es.h_y_given_x + eps,
                       true, true, "0 <= eps < I(X;Y)", "H(Y|X) + eps"});
  const double worst = r.worst_ordering_violation();
  if (worst > kSumTol)
    throw internal_error("h_bounds_mi: lower bound exceeds upper bound by " +
                         std::to_string(worst));
  return r;
}

positivity_result positivity_condition(const joint_dist& j, double eps) {
  const entropy_suite_result es = entropy_suite(j);
  if (eps < 0.0 || eps >= es.mi)
    throw validation_error("positivity_condition: need 0 <= eps < I(X;Y)");
  const double alpha = es.h_x > 0.0 ? eps / es.h_x : 0.0;
  const double c = mech::sfrl_bound_constant(es.mi).standard;
  positivity_result r;
  r.necessary = es.h_y_given_x > 0.0;
  r.margin = es.h_y_given_x - alpha * es.h_x_given_y -
             (1.0 - alpha) * std::min(es.h_x_given_y, c);
  r.sufficient = r.margin > 0.0;
  return r;
}

double efi_integral_term(const joint_dist& j) {
  const Eigen::MatrixXd y_x = j.y_given_x();  // |Y| x |X|
  const Eigen::VectorXd& px = j.px();
  double total = 0.0;
  for (long y = 0; y < j.ny(); ++y) {
    // Sorted distinct thresholds v_1 < ... < v_m of P_{Y|X}(y|.), with
    // g_y(t) = P_X{P_{Y|X}(y|X) >= t} constant on each (v_{k-1}, v_k].
    std::vector<std::pair<double, double>> th;  // (threshold, P_X mass)
    for (long x = 0; x < j.nx(); ++x) th.emplace_back(y_x(y, x), px(x));
    std::sort(th.begin(), th.end());
    double prev = 0.0;
    double tail = 1.0;  // P_X{P >= t} for t just above prev
    std::size_t i = 0;
    while (i < th.size()) {
      const double v = th[i].first;
      double mass_at_v = 0.0;
      while (i < th.size() && th[i].first == v) {
        mass_at_v += th[i].second;
        ++i;
      }
      if (v > prev && tail > 0.0)
        total += (v - prev) * tail * std::log(tail);
      prev = v;
      tail -= mass_at_v;
    }
  }
  return total;
}

double efi_lower(const joint_dist& j) {
  const entropy_suite_result es = entropy_suite(j);
  return -efi_integral_term(j) - es.mi;
}

bounds_report h0_report(const joint_dist& j) {
  const entropy_suite_result es = entropy_suite(j);
  const double c = mech::sfrl_bound_constant(es.mi).standard;
  const double integral = efi_integral_term(j);

  bounds_report r;
  r.entries.push_back({"L0_1", "h0", bound_kind::lower, es.h_y - es.h_x, true, true,
                       "always", "H(Y) - H(X)"});
  r.entries.push_back({"L0_2", "h0", bound_kind::lower, es.h_y_given_x - c, true,
                       true, "always", "H(Y|X) - (log(I+1)+4)"});
  r.entries.push_back({"U0_1", "h0", bound_kind::upper, es.h_y_given_x, true, true,
                       "always", "H(Y|X)"});
  r.entries.push_back({"U0_2", "h0", bound_kind::upper,
                       es.h_y_given_x + integral + es.mi, true, true, "always",
                       "H(Y|X) + sum_y int g log g + I(X;Y)"});
  if (j.ny() == 2)
    r.entries.push_back({"h0_exact", "h0", bound_kind::exact,
                         es.h_y_given_x + integral + es.mi, true, true,
                         "|Y| = 2", "h0 = U0_2"});
  const double worst = r.worst_ordering_violation();
  if (worst > kSumTol)
    throw internal_error("h0_report: lower bound exceeds upper bound by " +
                         std::to_string(worst));
  return r;
}

bounds_report perletter_closed_bounds(const joint_dist& j, double eps) {
  if (eps < 0.0) throw validation_error("perletter_closed_bounds: eps < 0");
  const entropy_suite_result es = entropy_suite(j);
  const double c = mech::sfrl_bound_constant(es.mi).standard;
  const double min_px = j.px().minCoeff();
  const bool lower_ok = eps < std::sqrt(2.0 * es.mi);
  const double alpha =
      es.h_x > 0.0 ? eps * eps / (2.0 * es.h_x) : 0.0;  // leakage eps^2/2

  bounds_report r;
  r.entries.push_back({"L_hwl_1", "h_wl", bound_kind::lower,
                       es.h_y_given_x - es.h_x_given_y + eps * eps / 2.0, true,
                       lower_ok, "0 <= eps < sqrt(2 I(X;Y))",
                       "H(Y|X) - H(X|Y) + eps^2/2"});
  r.entries.push_back({"L_hwl_2", "h_wl", bound_kind::lower,
                       es.h_y_given_x - alpha * es.h_x_given_y + eps * eps / 2.0 -
                           (1.0 - alpha) * c,
                       true, lower_ok, "0 <= eps < sqrt(2 I(X;Y))",
                       "H(Y|X) - a H(X|Y) + eps^2/2 - (1-a)(log(I+1)+4), a = eps^2/2H(X)"});
  r.entries.push_back({"U_gwl", "g_wl", bound_kind::upper,
                       eps * static_cast<double>(j.ny()) *
                               static_cast<double>(j.nx()) / min_px +
                           es.h_y_given_x,
                       true, true, "eps >= 0", "eps |Y||X| / min P_X + H(Y|X)"});
  r.entries.push_back({"U_hl", "h_l", bound_kind::upper,
                       eps * eps / min_px + es.h_y_given_x, true, true, "eps >= 0",
                       "eps^2 / min P_X + H(Y|X)"});
  return r;
}

pinsker_result pinsker_convert(double eps, double min_px) {
  if (eps < 0.0) throw validation_error("pinsker_convert: eps < 0");
  if (min_px <= 0.0 || min_px > 1.0)
    throw validation_error("pinsker_convert: need 0 < min P_X <= 1");
  return pinsker_result{std::sqrt(2.0 * eps), eps * eps / min_px,
                        std::sqrt(eps * min_px)};
}

bounds_report prioritized_bounds(const prioritized_joint& pj, double eps) {
  if (eps < 0.0) throw validation_error("prioritized_bounds: eps < 0");
  const tri_joint& t = pj.tensor();
  // Axes are (X1, X2, Y); fold (X1, X2) into one variable for the measures.
  const Eigen::VectorXd py = t.marginal(2);
  const Eigen::VectorXd px2 = t.marginal(1);
  const long n1 = t.dim(0), n2 = t.dim(1), ny = t.dim(2);

  Eigen::VectorXd px12 = Eigen::VectorXd::Zero(n1 * n2);
  Eigen::MatrixXd joint_x12_y = Eigen::MatrixXd::Zero(n1 * n2, ny);
  for (long a = 0; a < n1; ++a)
    for (long b = 0; b < n2; ++b)
      for (long y = 0; y < ny; ++y) {
        joint_x12_y(a * n2 + b, y) += t.at(a, b, y);
        px12(a * n2 + b) += t.at(a, b, y);
      }
  const double h_x12 = entropy(px12);
  const double h_y = entropy(py);
  const double h_x12y =
      entropy(Eigen::Map<const Eigen::VectorXd>(joint_x12_y.data(), joint_x12_y.size()));
  const double h_y_given_x12 = h_x12y - h_x12;
  const double h_x12_given_y = h_x12y - h_y;
  const double mi = h_y - h_y_given_x12;

  const Eigen::MatrixXd joint_x2_y = t.pair_marginal(1, 2);
  const double h_x2 = entropy(px2);
  const double h_x2_given_y =
      entropy(Eigen::Map<const Eigen::VectorXd>(joint_x2_y.data(), joint_x2_y.size())) -
      h_y;

  if (h_x2 <= 0.0)
    throw validation_error("prioritized_bounds: H(X2) = 0, alpha undefined");
  const double alpha = eps / h_x2;
  const double c = mech::sfrl_bound_constant(mi).standard;

  bounds_report r;
  r.entries.push_back({"L_hp_1", "h_p", bound_kind::lower,
                       eps + h_y_given_x12 - h_x12_given_y, true, true, "eps >= 0",
                       "eps + H(Y|X1,X2) - H(X1,X2|Y)"});
  r.entries.push_back({"L_hp_2", "h_p", bound_kind::lower,
                       eps + h_y_given_x12 - alpha * h_x2_given_y - c, true, true,
                       "eps >= 0; a = eps/H(X2)",
                       "eps + H(Y|X1,X2) - a H(X2|Y) - (log(I+1)+4)"});
  r.entries.push_back({"L_hp_3", "h_p", bound_kind::lower,
                       eps + h_y_given_x12 - alpha * h_x12_given_y -
                           (1.0 - alpha) * c,
                       true, true, "eps >= 0; a = eps/H(X2)",
                       "eps + H(Y|X1,X2) - a H(X1,X2|Y) - (1-a)(log(I+1)+4)"});
  r.entries.push_back({"U_hp_1", "h_p", bound_kind::upper, eps + h_y_given_x12,
                       true, true, "eps >= 0", "eps + H(Y|X1,X2)"});
  const double worst = r.worst_ordering_violation();
  if (worst > kSumTol)
    throw internal_error("prioritized_bounds: lower bound exceeds upper bound by " +
                         std::to_string(worst));
  return r;
}

equality_result equality_detector(const joint_dist& j, double eps) {
  const entropy_suite_result es = entropy_suite(j);
  if (eps >= es.mi)
    throw validation_error("equality_detector: need eps < I(X;Y)");
  equality_result r;
  r.h_x_given_y_zero = es.h_x_given_y <= kSumTol;
  if (r.h_x_given_y_zero) r.value = es.h_y_given_x + eps;
  return r;
}

}  // namespace privutil::bounds
