#include "privutil/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace privutil::geom {

namespace {
constexpr double kRankTol = 1e-10;   // relative singular-value cutoff
constexpr double kVertexTol = 1e-9;  // strict-positivity tolerance on t
}  // namespace

Eigen::VectorXd vertex_info::scattered(long ny) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ny);
  for (std::size_t i = 0; i < omega.size(); ++i) out(omega[i]) = std::max(t(static_cast<long>(i)), 0.0);
  return out;
}

geometry_context build_context(const joint_dist& j) {
  const long nx = j.nx(), ny = j.ny();
  if (nx >= ny)
    throw validation_error("geometry: requires |X| < |Y| (got " + std::to_string(nx) +
                           " x " + std::to_string(ny) + ")");
  geometry_context ctx;
  ctx.nx_ = nx;
  ctx.ny_ = ny;
  ctx.px_ = j.px();
  ctx.py_ = j.py();
  ctx.x_given_y_ = j.x_given_y();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctx.x_given_y_,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv(nx - 1) <= kRankTol * sv(0))
    throw validation_error("geometry: leakage matrix P_{X|Y} is rank deficient "
                           "(smallest singular value " + std::to_string(sv(nx - 1)) + ")");
  ctx.m_ = svd.matrixV().leftCols(nx).transpose();  // rows = right singular vectors

  // Invertible leading block P_{X|Y1}; fall back to QR column pivots when
  // the first |X| columns are singular.
  ctx.basis_cols_.resize(static_cast<std::size_t>(nx));
  for (long i = 0; i < nx; ++i) ctx.basis_cols_[static_cast<std::size_t>(i)] = static_cast<int>(i);
  {
    Eigen::MatrixXd lead(nx, nx);
    for (long i = 0; i < nx; ++i) lead.col(i) = ctx.x_given_y_.col(i);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lead);
    if (lu.rank() < nx) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ctx.x_given_y_);
      const auto perm = qr.colsPermutation().indices();
      for (long i = 0; i < nx; ++i) ctx.basis_cols_[static_cast<std::size_t>(i)] = perm(i);
      std::sort(ctx.basis_cols_.begin(), ctx.basis_cols_.end());
    }
  }
  Eigen::MatrixXd m_lead(nx, nx), p_lead(nx, nx);
  for (long i = 0; i < nx; ++i) {
    m_lead.col(i) = ctx.m_.col(ctx.basis_cols_[static_cast<std::size_t>(i)]);
    p_lead.col(i) = ctx.x_given_y_.col(ctx.basis_cols_[static_cast<std::size_t>(i)]);
  }
  const Eigen::MatrixXd m_lead_over_p = m_lead * p_lead.inverse();
  const Eigen::VectorXd mpy = ctx.m_ * ctx.py_;

  // Enumerate |X|-subsets of Y-columns in lexicographic order.
  std::vector<int> idx(static_cast<std::size_t>(nx));
  for (long i = 0; i < nx; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  while (true) {
    Eigen::MatrixXd m_omega(nx, nx);
    for (long i = 0; i < nx; ++i) m_omega.col(i) = ctx.m_.col(idx[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m_omega);
    if (lu.rank() == nx) {
      vertex_info v;
      v.omega = idx;
      v.t = lu.solve(mpy);
      v.h = lu.solve(m_lead_over_p);
      v.sigma_max = v.h.jacobiSvd().singularValues()(0);
      const double tmin = v.t.minCoeff();
      if (tmin > kVertexTol) {
        v.strict = true;
        ctx.strict_.push_back(std::move(v));
      } else if (tmin > -kVertexTol) {
        v.strict = false;
        const Eigen::VectorXd sc = v.scattered(ny);
        bool dup = false;
        for (const auto& w : ctx.boundary_)
          if ((w.scattered(ny) - sc).cwiseAbs().maxCoeff() <= kVertexTol) {
            dup = true;
            break;
          }
        if (!dup) ctx.boundary_.push_back(std::move(v));
      }
    }
    // next combination
    long p = nx - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == static_cast<int>(ny - nx + p)) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (long q = p + 1; q < nx; ++q)
      idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }

  if (!ctx.strict_.empty()) {
    ctx.min_t_ = std::numeric_limits<double>::infinity();
    ctx.max_sigma_ = 0.0;
    for (const auto& v : ctx.strict_) {
      ctx.min_t_ = std::min(ctx.min_t_, v.t.minCoeff());
      ctx.max_sigma_ = std::max(ctx.max_sigma_, v.sigma_max);
    }
    ctx.eps2_ = ctx.min_t_ / ctx.max_sigma_;
  }
  return ctx;
}

bool null_space_property(const geometry_context& ctx, const Eigen::VectorXd& beta) {
  if (beta.size() != ctx.ny())
    throw validation_error("null_space_property: beta length mismatch");
  const double tol = 1e-9 * std::max(1.0, beta.cwiseAbs().maxCoeff());
  const bool in_null_p = (ctx.x_given_y() * beta).cwiseAbs().maxCoeff() <= tol;
  const bool in_null_m = (ctx.m() * beta).cwiseAbs().maxCoeff() <= tol;
  if (in_null_p != in_null_m)
    throw internal_error("null_space_property: Null(P_{X|Y}) and Null(M) disagree");
  if (in_null_p && std::abs(beta.sum()) > tol)
    throw internal_error("null_space_property: null vector with nonzero coordinate sum");
  return in_null_p;
}

Eigen::VectorXd extreme_point(const geometry_context& ctx, const vertex_info& v,
                              const Eigen::VectorXd& j_u, double weight, double eps,
                              perletter_criterion crit) {
  if (j_u.size() != ctx.nx())
    throw validation_error("extreme_point: J length mismatch");
  if (std::abs(j_u.sum()) > kSumTol)
    throw validation_error("extreme_point: 1'J != 0");
  if (j_u.cwiseAbs().sum() > 1.0 + kSumTol)
    throw validation_error("extreme_point: 1'|J| > 1");
  double scale = 0.0;
  if (eps > 0.0) {
    if (crit == perletter_criterion::weighted) {
      if (weight <= 0.0) throw validation_error("extreme_point: weight must be > 0");
      scale = eps / weight;
    } else {
      scale = eps;
    }
  }
  Eigen::VectorXd nz = v.t + scale * (v.h * j_u);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ctx.ny());
  for (std::size_t i = 0; i < v.omega.size(); ++i) {
    if (nz(static_cast<long>(i)) < -kVertexTol)
      throw infeasible_error("extreme_point: entry " + std::to_string(i) +
                             " negative (" + std::to_string(nz(static_cast<long>(i))) +
                             "); eps too large for this basis");
    out(v.omega[i]) = std::max(nz(static_cast<long>(i)), 0.0);
  }
  return out;
}

linearization linearize(const geometry_context& ctx, const vertex_info& v) {
  linearization lin;
  lin.l = Eigen::RowVectorXd::Zero(ctx.nx());
  for (long i = 0; i < ctx.nx(); ++i)
    lin.l(i) = std::log(std::max(v.t(i), std::numeric_limits<double>::min()));
  lin.b = lin.l * v.t;
  lin.a = lin.l * v.h;
  return lin;
}

error_bound error_bounds(const geometry_context& ctx, double eps) {
  if (eps < 0.0) throw validation_error("error_bounds: eps < 0");
  error_bound out;
  const double sx = std::sqrt(static_cast<double>(ctx.nx()));
  out.coarse_limit = ctx.eps2() / 2.0;
  out.fine_limit = ctx.eps2() / (2.0 * sx);
  if (eps < out.fine_limit) {
    out.regime = error_regime::fine;
    out.value = 1.0 / (2.0 * (2.0 * sx - 1.0) * (2.0 * sx - 1.0)) +
                1.0 / (4.0 * static_cast<double>(ctx.nx()));
  } else if (eps < out.coarse_limit) {
    out.regime = error_regime::coarse;
    out.value = 0.75;
  } else {
    out.regime = error_regime::none;
    out.value = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace privutil::geom
