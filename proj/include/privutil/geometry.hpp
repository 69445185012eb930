#ifndef PRIVUTIL_GEOMETRY_HPP
#define PRIVUTIL_GEOMETRY_HPP

#include <string>
#include <vector>

#include "privutil/types.hpp"

namespace privutil::geom {

enum class perletter_criterion { weighted, unweighted };  // wl, l

// One candidate basis: an |X|-subset Omega of Y-columns with its J = 0
// vertex t = M_Omega^{-1} M P_Y and sensitivity H_Omega.
struct vertex_info {
  std::vector<int> omega;   // increasing column indices, |omega| = |X|
  Eigen::VectorXd t;        // length |X|; scattered onto omega positions
  Eigen::MatrixXd h;        // H_Omega = M_Omega^{-1} M(1:|X|) P_{X|Y1}^{-1}
  double sigma_max = 0.0;
  bool strict = true;       // all t entries > tol (member of Omega^1)

  // Full-length vector with t at the omega positions, zero elsewhere.
  Eigen::VectorXd scattered(long ny) const;
};

class geometry_context {
 public:
  const Eigen::MatrixXd& m() const { return m_; }  // |X| x |Y|, orthonormal rows
  long nx() const { return nx_; }
  long ny() const { return ny_; }
  const Eigen::VectorXd& py() const { return py_; }
  const Eigen::VectorXd& px() const { return px_; }
  const Eigen::MatrixXd& x_given_y() const { return x_given_y_; }

  // Omega^1: strictly positive J = 0 vertices, usable at eps > 0.
  const std::vector<vertex_info>& strict() const { return strict_; }
  // Degenerate vertices (a zero t entry within tolerance), deduplicated by
  // scattered vector; valid probability vectors but not perturbable.
  const std::vector<vertex_info>& boundary() const { return boundary_; }

  double eps2() const { return eps2_; }
  double min_t() const { return min_t_; }
  double max_sigma() const { return max_sigma_; }
  // Columns forming the invertible leading block P_{X|Y1} (identity
  // permutation unless the first |X| columns were singular).
  const std::vector<int>& basis_cols() const { return basis_cols_; }

  friend geometry_context build_context(const joint_dist& j);

 private:
  geometry_context() = default;
  Eigen::MatrixXd m_, x_given_y_;
  Eigen::VectorXd px_, py_;
  long nx_ = 0, ny_ = 0;
  std::vector<vertex_info> strict_, boundary_;
  std::vector<int> basis_cols_;
  double eps2_ = 0.0, min_t_ = 0.0, max_sigma_ = 0.0;
};

// Builds the SVD-derived context.  Requires |X| < |Y| and a full-row-rank
// leakage matrix P_{X|Y} (singular values below 1e-10 * sigma_max count as
// zero); violations are rejected with the offending singular value.
geometry_context build_context(const joint_dist& j);

// True iff beta is in Null(P_{X|Y}); asserts the equivalence with
// Null(M) membership and 1' beta = 0 along the way.
bool null_space_property(const geometry_context& ctx, const Eigen::VectorXd& beta);

// Extreme point of S_u for basis `v`: the omega entries are
// t + scale * H_Omega J with scale = eps / weight (wl) or eps (l).
// J must satisfy 1'J = 0 and 1'|J| <= 1; a negative entry raises
// infeasible_error (eps too large for this basis).
Eigen::VectorXd extreme_point(const geometry_context& ctx, const vertex_info& v,
                              const Eigen::VectorXd& j_u, double weight, double eps,
                              perletter_criterion crit);

struct linearization {
  double b;               // l . t  (so -b = H(t))
  Eigen::RowVectorXd a;   // l . H_Omega
  Eigen::RowVectorXd l;   // elementwise log t
};

// First-order entropy coefficients at the J = 0 vertex:
// H(P_{Y|U=u}) ~ -(b + scale a J).
linearization linearize(const geometry_context& ctx, const vertex_info& v);

enum class error_regime { none, coarse, fine };

struct error_bound {
  error_regime regime = error_regime::none;
  double value = 0.0;        // bound on |exact - linearized H(Y|U)|, nats
  double coarse_limit = 0.0; // eps2 / 2
  double fine_limit = 0.0;   // eps2 / (2 sqrt|X|)
};

// Approximation-error bound: 3/4 for eps < eps2/2 and
// 1/(2(2 sqrt|X| - 1)^2) + 1/(4|X|) for eps < eps2/(2 sqrt|X|).
// Boundaries are excluded (strict inequalities).
error_bound error_bounds(const geometry_context& ctx, double eps);

}  // namespace privutil::geom

#endif  // PRIVUTIL_GEOMETRY_HPP
