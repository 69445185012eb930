#include "privutil/simplex.hpp"

#include <cmath>
#include <vector>

namespace privutil::lp {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;
}  // namespace

lp_solution solve_lp(const lp_problem& p) {
  const long m = p.a.rows();
  const long n = p.a.cols();
  // Tableau [A | I | b] with artificial basis; rows flipped so b >= 0.
  Eigen::MatrixXd t(m, n + m + 1);
  t.setZero();
  for (long i = 0; i < m; ++i) {
    const double s = p.b(i) < 0.0 ? -1.0 : 1.0;
    t.block(i, 0, 1, n) = s * p.a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = s * p.b(i);
  }
  std::vector<long> basis(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  lp_solution sol;

  auto pivot = [&](long row, long col) {
    t.row(row) /= t(row, col);
    for (long i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
    ++sol.iterations;
  };

  auto run = [&](const Eigen::VectorXd& cost, long n_cols) -> bool {
    // Returns false on unboundedness.  Bland's rule both ways.
    while (true) {
      Eigen::RowVectorXd reduced = cost.transpose().head(n_cols);
      for (long i = 0; i < m; ++i) {
        const long bi = basis[static_cast<std::size_t>(i)];
        const double cb = bi < cost.size() ? cost(bi) : 0.0;
        if (cb != 0.0) reduced -= cb * t.block(i, 0, 1, n_cols);
      }
      long enter = -1;
      for (long jcol = 0; jcol < n_cols; ++jcol) {
        if (reduced(jcol) < -kCostTol) {
          enter = jcol;
          break;
        }
      }
      if (enter < 0) return true;
      long leave = -1;
      double best_ratio = 0.0;
      for (long i = 0; i < m; ++i) {
        if (t(i, enter) > kPivotTol) {
          const double ratio = t(i, n + m) / t(i, enter);
          if (leave < 0 || ratio < best_ratio - kPivotTol ||
              (std::abs(ratio - best_ratio) <= kPivotTol &&
               basis[static_cast<std::size_t>(i)] <
                   basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the artificial sum.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  if (!run(phase1, n + m)) {
    sol.status = lp_status::unbounded;  // cannot happen for phase 1
    return sol;
  }
  double art_sum = 0.0;
  for (long i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] >= n) art_sum += t(i, n + m);
  if (art_sum > kFeasTol) {
    sol.status = lp_status::infeasible;
    return sol;
  }
  // Pivot lingering zero-level artificials out where a real column allows it;
  // otherwise the row is redundant and the artificial stays at zero.
  for (long i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    for (long jcol = 0; jcol < n; ++jcol) {
      if (std::abs(t(i, jcol)) > 1e-8) {
        pivot(i, jcol);
        break;
      }
    }
  }

  // Phase 2 over the original columns only.
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = p.c;
  if (!run(phase2, n)) {
    sol.status = lp_status::unbounded;
    return sol;
  }

  sol.x = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] < n)
      sol.x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
  sol.value = p.c.dot(sol.x);
  double resid = (p.a * sol.x - p.b).cwiseAbs().maxCoeff();
  resid = std::max(resid, std::max(0.0, -sol.x.minCoeff()));
  sol.residual = resid;
  sol.status = lp_status::optimal;
  return sol;
}

}  // namespace privutil::lp
