#ifndef PRIVUTIL_BOUNDS_HPP
#define PRIVUTIL_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "privutil/measures.hpp"
#include "privutil/types.hpp"

namespace privutil::bounds {

enum class bound_kind { lower, upper, exact };

struct bound_entry {
  std::string id;        // e.g. "L1_eps"
  std::string quantity;  // e.g. "h_eps"
  bound_kind kind = bound_kind::lower;
  double value = 0.0;    // nats when info_units, else dimensionless
  bool info_units = true;
  bool valid = true;
  std::string validity;  // human-readable predicate
  std::string note;      // closed form
};

struct bounds_report {
  std::vector<bound_entry> entries;

  const bound_entry* find(const std::string& id) const;
  double value_of(const std::string& id) const;  // throws if missing

  // Every valid lower bound must not exceed any valid upper bound of the
  // same quantity; returns the worst violation (<= 0 when consistent).
  double worst_ordering_violation() const;
};

// Part I bounds on h_eps: L1, L2, L3 lower bounds plus the H(Y|X)+eps upper
// bound.  eps in nats, 0 <= eps < I(X;Y); g0 is the perfect-privacy value
// (use 0 for an invertible square kernel).
bounds_report h_bounds_mi(const joint_dist& j, double eps, double g0);

struct positivity_result {
  bool necessary;    // H(Y|X) > 0
  bool sufficient;   // guarantees h_eps > eps
  double margin;     // value of the sufficient-condition expression
};

positivity_result positivity_condition(const joint_dist& j, double eps);

// sum_y int_0^1 g_y(t) log g_y(t) dt with g_y(t) = P_X{P_{Y|X}(y|X) >= t};
// evaluated exactly by segment summation over the sorted thresholds.
double efi_integral_term(const joint_dist& j);

// Lower bound on the excess functional information psi(X -> Y):
// -integral_term - I(X;Y).  Exact for |Y| = 2.
double efi_lower(const joint_dist& j);

// Perfect-privacy (eps = 0) report: L0_1, L0_2, U0_1 = H(Y|X), U0_2, and the
// exactness flag h0 = U0_2 when |Y| = 2.
bounds_report h0_report(const joint_dist& j);

// Per-letter closed-form bounds; eps is an l1 budget (dimensionless).
// Lower bounds require eps < sqrt(2 I(X;Y)); out-of-range entries are
// reported invalid rather than dropped.
bounds_report perletter_closed_bounds(const joint_dist& j, double eps);

struct pinsker_result {
  double eps_bar;    // sqrt(2 eps)
  double eps_prime;  // eps^2 / min P_X
  double eps_tilde;  // sqrt(eps * min P_X)
};

// Budget conversions between the mutual-information and l1 criteria giving
// the sandwich h^{wl}_{eps_bar} <= h_eps <= h^{l}_{eps_tilde}.
pinsker_result pinsker_convert(double eps, double min_px);

// Prioritized private data (X1 more private than X2); eps in nats.
bounds_report prioritized_bounds(const prioritized_joint& pj, double eps);

struct equality_result {
  bool h_x_given_y_zero;        // fired: common information = mutual information
  std::optional<double> value;  // g_eps = h_eps = H(Y|X) + eps when fired
};

equality_result equality_detector(const joint_dist& j, double eps);

}  // namespace privutil::bounds

#endif  // PRIVUTIL_BOUNDS_HPP
