#include "privutil/lpapprox.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "privutil/measures.hpp"
#include "privutil/simplex.hpp"

namespace privutil::lp {

namespace {

constexpr double kCertTol = 1e-9;

struct candidate {
  const geom::vertex_info* v;
  bool strict;
  double b;               // l . t
  Eigen::RowVectorXd a;   // l . H
  Eigen::MatrixXd g;      // H^{-1} (I - t 1')   (strict only)
  Eigen::MatrixXd h_inv;  // H^{-1}              (strict only)
};

std::vector<candidate> make_candidates(const geom::geometry_context& ctx) {
  std::vector<candidate> out;
  const long nx = ctx.nx();
  auto push = [&](const geom::vertex_info& v, bool strict) {
    candidate c;
    c.v = &v;
    c.strict = strict;
    const geom::linearization lin = geom::linearize(ctx, v);
    c.b = lin.b;
    c.a = lin.a;
    if (strict) {
      c.h_inv = v.h.fullPivLu().inverse();
      c.g = c.h_inv * (Eigen::MatrixXd::Identity(nx, nx) -
                       v.t * Eigen::RowVectorXd::Ones(nx));
    }
    out.push_back(std::move(c));
  };
  for (const auto& v : ctx.strict()) push(v, true);
  for (const auto& v : ctx.boundary()) push(v, false);
  return out;
}

// LP in eta variables for one combination; returns the assignment on success.
std::optional<std::pair<double, eta_assignment>> solve_combo(
    const geom::geometry_context& ctx, const std::vector<candidate>& cands,
    const std::vector<int>& combo, double eps, geom::perletter_criterion crit) {
  const long nx = ctx.nx();
  const long ny = ctx.ny();
  const long slots = static_cast<long>(combo.size());

  std::vector<long> offset(static_cast<std::size_t>(slots));
  long nvar = 0;
  long n_strict = 0;
  for (long u = 0; u < slots; ++u) {
    offset[static_cast<std::size_t>(u)] = nvar;
    const bool strict = cands[static_cast<std::size_t>(combo[static_cast<std::size_t>(u)])].strict;
    nvar += nx + (strict ? 3 * nx + 1 : 0);
    if (strict) ++n_strict;
  }
  const long nrow = ny + n_strict * (nx + 1) + nx;

  lp_problem p;
  p.a = Eigen::MatrixXd::Zero(nrow, nvar);
  p.b = Eigen::VectorXd::Zero(nrow);
  p.c = Eigen::VectorXd::Zero(nvar);

  long row = 0;
  // Mixture sum_u P_U(u) V*_{Omega_u} = P_Y via the scattered eta blocks.
  for (long y = 0; y < ny; ++y, ++row) {
    for (long u = 0; u < slots; ++u) {
      const candidate& c = cands[static_cast<std::size_t>(combo[static_cast<std::size_t>(u)])];
      for (std::size_t i = 0; i < c.v->omega.size(); ++i)
        if (c.v->omega[i] == static_cast<int>(y))
          p.a(row, offset[static_cast<std::size_t>(u)] + static_cast<long>(i)) = 1.0;
    }
    p.b(row) = ctx.py()(y);
  }
  for (long u = 0; u < slots; ++u) {
    const candidate& c = cands[static_cast<std::size_t>(combo[static_cast<std::size_t>(u)])];
    const long o = offset[static_cast<std::size_t>(u)];
    p.c.segment(o, nx).setConstant(-c.b);
    if (!c.strict) continue;
    // w = wp - wm recovers H^{-1}(eta - (1'eta) t); link rows w - G eta = 0.
    for (long i = 0; i < nx; ++i, ++row) {
      p.a(row, o + nx + i) = 1.0;
      p.a(row, o + 2 * nx + i) = -1.0;
      p.a.block(row, o, 1, nx) = -c.g.row(i);
    }
    // Budget 1'|w| <= eps (wl) or <= eps P_U(u) (l), via slack s.
    p.a.block(row, o + nx, 1, 2 * nx).setOnes();
    p.a(row, o + 3 * nx) = 1.0;
    if (crit == geom::perletter_criterion::weighted) {
      p.b(row) = eps;
    } else {
      p.a.block(row, o, 1, nx).array() -= eps;
      p.b(row) = 0.0;
    }
    ++row;
    p.c.segment(o + nx, nx) = -c.a.transpose();
    p.c.segment(o + 2 * nx, nx) = c.a.transpose();
  }
  // Combination constraint: sum over atoms of w_u = 0 (frozen atoms give 0).
  for (long i = 0; i < nx; ++i, ++row) {
    for (long u = 0; u < slots; ++u) {
      const candidate& c = cands[static_cast<std::size_t>(combo[static_cast<std::size_t>(u)])];
      if (!c.strict) continue;
      const long o = offset[static_cast<std::size_t>(u)];
      p.a(row, o + nx + i) = 1.0;
      p.a(row, o + 2 * nx + i) = -1.0;
    }
  }

  const lp_solution sol = solve_lp(p);
  if (sol.status != lp_status::optimal) return std::nullopt;
  if (sol.residual > kCertTol)
    throw internal_error("lpapprox: LP residual " + std::to_string(sol.residual));
  eta_assignment asg;
  asg.vertex = combo;
  for (long u = 0; u < slots; ++u)
    asg.eta.push_back(sol.x.segment(offset[static_cast<std::size_t>(u)], nx));
  return std::make_pair(sol.value, asg);
}

// Non-decreasing index tuples of length `slots` over `n` candidates,
// lexicographic order.
bool next_multiset(std::vector<int>& combo, int n) {
  const long k = static_cast<long>(combo.size());
  long p = k - 1;
  while (p >= 0 && combo[static_cast<std::size_t>(p)] == n - 1) --p;
  if (p < 0) return false;
  const int v = combo[static_cast<std::size_t>(p)] + 1;
  for (long q = p; q < k; ++q) combo[static_cast<std::size_t>(q)] = v;
  return true;
}

double multiset_count(long n, long k) {
  double c = 1.0;
  for (long i = 1; i <= k; ++i) c *= static_cast<double>(n + i - 1) / static_cast<double>(i);
  return c;
}

approx_result finish(const joint_dist& jd, const geom::geometry_context& ctx,
                     const std::vector<candidate>& cands, double lp_value,
                     const eta_assignment& asg, double eps,
                     geom::perletter_criterion crit) {
  approx_result r;
  r.eps = eps;
  r.eps2 = ctx.eps2();
  r.lp_value = lp_value;
  r.mechanism = reconstruct(asg, ctx, eps, crit);

  const double h_y = entropy(ctx.py());
  double exact = 0.0;
  Eigen::VectorXd mix = Eigen::VectorXd::Zero(ctx.ny());
  double worst = 0.0;
  for (long u = 0; u < r.mechanism.p_u.size(); ++u) {
    const Eigen::VectorXd col = r.mechanism.y_given_u.col(u);
    exact += r.mechanism.p_u(u) * entropy(col);
    mix += r.mechanism.p_u(u) * col;
    const Eigen::VectorXd px_u = ctx.x_given_y() * col;
    const double d = (px_u - ctx.px()).cwiseAbs().sum();
    worst = std::max(worst, crit == geom::perletter_criterion::weighted
                                ? r.mechanism.p_u(u) * d
                                : d);
  }
  r.exact_cond_entropy = exact;
  r.utility_lb = h_y - exact;
  r.approx_utility = h_y - lp_value;
  r.mixture_residual = (mix - ctx.py()).cwiseAbs().maxCoeff();
  r.worst_criterion_distance = worst;
  if (r.mixture_residual > kCertTol)
    throw internal_error("lpapprox: mixture residual " +
                         std::to_string(r.mixture_residual));
  if (worst > eps + kCertTol)
    throw internal_error("lpapprox: reconstructed mechanism violates the criterion (" +
                         std::to_string(worst) + " > eps)");

  const geom::error_bound eb = geom::error_bounds(ctx, eps);
  r.regime = eb.regime;
  r.error_bound = eb.value;
  if (crit == geom::perletter_criterion::unweighted) {
    if (eps < eb.coarse_limit) r.upper1 = r.approx_utility + 0.75;
    if (eps < eb.fine_limit) r.upper2 = r.approx_utility + 1.0 / (2.0 * std::pow(2.0 * std::sqrt(static_cast<double>(ctx.nx())) - 1.0, 2)) + 1.0 / (4.0 * static_cast<double>(ctx.nx()));
  }
  (void)jd;
  (void)cands;
  return r;
}

approx_result solve_perletter(const joint_dist& jd, double eps,
                              geom::perletter_criterion crit, std::size_t combo_cap) {
  if (eps < 0.0) throw validation_error("lpapprox: eps < 0");
  if (eps == 0.0) {
    approx_result r = solve_g0(jd);
    if (crit == geom::perletter_criterion::unweighted && !r.invertible_kernel) {
      // The regime-based upper bounds also apply at eps = 0.
      r.upper1 = r.approx_utility + 0.75;
      r.upper2 = r.approx_utility +
                 1.0 / (2.0 * std::pow(2.0 * std::sqrt(static_cast<double>(jd.nx())) - 1.0, 2)) +
                 1.0 / (4.0 * static_cast<double>(jd.nx()));
      r.regime = geom::error_regime::fine;
    }
    return r;
  }
  const geom::geometry_context ctx = geom::build_context(jd);
  if (eps >= ctx.eps2())
    throw validation_error("lpapprox: eps = " + std::to_string(eps) +
                           " is not below the validity threshold eps2 = " +
                           std::to_string(ctx.eps2()));
  const std::vector<candidate> cands = make_candidates(ctx);
  const int n = static_cast<int>(cands.size());
  const long slots = ctx.ny();

  double best_value = 0.0;
  std::optional<eta_assignment> best;
  long tried = 0;
  bool heuristic = false;

  auto consider = [&](const std::vector<int>& combo) {
    ++tried;
    auto out = solve_combo(ctx, cands, combo, eps, crit);
    if (!out) return false;
    if (!best || out->first < best_value - 1e-12) {
      best_value = out->first;
      best = std::move(out->second);
    }
    return true;
  };

  if (multiset_count(n, slots) <= static_cast<double>(combo_cap)) {
    std::vector<int> combo(static_cast<std::size_t>(slots), 0);
    do {
      consider(combo);
    } while (next_multiset(combo, n));
  } else {
    // Greedy restriction: start from a guaranteed-feasible combination (the
    // J = 0 vertex support of the perfect-privacy LP, padded to all slots),
    // also try the uniform assignments, then local swaps.
    heuristic = true;
    {
      const approx_result g0 = solve_g0(jd);
      std::vector<int> seed;
      for (const auto& omega : g0.mechanism.omega)
        for (int c = 0; c < n; ++c)
          if (cands[static_cast<std::size_t>(c)].v->omega == omega) {
            seed.push_back(c);
            break;
          }
      if (!seed.empty()) {
        while (static_cast<long>(seed.size()) < slots) seed.push_back(seed.back());
        std::sort(seed.begin(), seed.end());
        consider(seed);
      }
    }
    for (int c = 0; c < n; ++c) {
      std::vector<int> combo(static_cast<std::size_t>(slots), c);
      consider(combo);
    }
    if (best) {
      std::vector<int> current = best->vertex;
      bool improved = true;
      for (int round = 0; round < 64 && improved; ++round) {
        improved = false;
        for (long u = 0; u < slots; ++u) {
          for (int c = 0; c < n; ++c) {
            std::vector<int> combo = current;
            combo[static_cast<std::size_t>(u)] = c;
            std::sort(combo.begin(), combo.end());
            const double before = best_value;
            consider(combo);
            if (best_value < before - 1e-12) {
              current = best->vertex;
              improved = true;
            }
          }
        }
      }
    }
  }

  if (!best)
    throw internal_error(
        "lpapprox: no feasible Omega-combination; the J = 0 fallback should make "
        "the mixture constraint feasible");
  approx_result r = finish(jd, ctx, cands, best_value, *best, eps, crit);
  r.heuristic = heuristic;
  r.combinations_tried = tried;
  return r;
}

}  // namespace

reconstructed_mechanism reconstruct(const eta_assignment& assignment,
                                    const geom::geometry_context& ctx, double eps,
                                    geom::perletter_criterion crit) {
  const std::vector<candidate> cands = make_candidates(ctx);
  reconstructed_mechanism m;
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> cols;
  for (std::size_t u = 0; u < assignment.vertex.size(); ++u) {
    const candidate& c = cands[static_cast<std::size_t>(assignment.vertex[u])];
    const Eigen::VectorXd& eta = assignment.eta[u];
    const double pu = eta.sum();
    if (pu <= 1e-9) continue;  // never enters I(U;Y)
    Eigen::VectorXd j_u = Eigen::VectorXd::Zero(ctx.nx());
    if (c.strict && eps > 0.0) {
      const Eigen::VectorXd w = c.h_inv * (eta - pu * c.v->t);
      j_u = crit == geom::perletter_criterion::weighted ? (w / eps).eval()
                                                        : (w / (eps * pu)).eval();
      // Strip float dust so the koon1/koon3 constraints hold exactly.
      j_u.array() -= j_u.mean();
      const double s1 = j_u.cwiseAbs().sum();
      if (s1 > 1.0 + 1e-7)
        throw internal_error("reconstruct: recovered J with 1'|J| = " +
                             std::to_string(s1));
      if (s1 > 1.0) j_u /= s1;
    }
    cols.push_back(geom::extreme_point(ctx, *c.v, j_u, pu, c.strict ? eps : 0.0, crit));
    weights.push_back(pu);
    m.j.push_back(j_u);
    m.omega.push_back(c.v->omega);
  }
  m.p_u = Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<long>(weights.size()));
  m.y_given_u = Eigen::MatrixXd::Zero(ctx.ny(), static_cast<long>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    m.y_given_u.col(static_cast<long>(i)) = cols[i];
  return m;
}

approx_result solve_g0(const joint_dist& jd) {
  if (jd.nx() == jd.ny()) {
    const Eigen::MatrixXd k = jd.x_given_y();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
    lu.setThreshold(1e-10);
    if (lu.rank() == jd.nx()) {
      // Information can only be revealed through a non-invertible kernel.
      approx_result r;
      r.invertible_kernel = true;
      r.lp_value = entropy(jd.py());
      r.exact_cond_entropy = r.lp_value;
      r.utility_lb = 0.0;
      r.approx_utility = 0.0;
      r.mechanism.p_u = Eigen::VectorXd::Ones(1);
      r.mechanism.y_given_u = jd.py();
      r.mechanism.j.push_back(Eigen::VectorXd::Zero(jd.nx()));
      r.mechanism.omega.push_back({});
      return r;
    }
    throw validation_error("solve_g0: square leakage matrix is rank deficient");
  }
  const geom::geometry_context ctx = geom::build_context(jd);
  const std::vector<candidate> cands = make_candidates(ctx);
  const long nv = static_cast<long>(cands.size());

  lp_problem p;
  p.a = Eigen::MatrixXd::Zero(ctx.ny(), nv);
  p.b = ctx.py();
  p.c = Eigen::VectorXd::Zero(nv);
  for (long v = 0; v < nv; ++v) {
    p.a.col(v) = cands[static_cast<std::size_t>(v)].v->scattered(ctx.ny());
    p.c(v) = entropy(p.a.col(v));
  }
  const lp_solution sol = solve_lp(p);
  if (sol.status != lp_status::optimal)
    throw internal_error("solve_g0: vertex LP infeasible; P_Y should lie in the "
                         "J = 0 polytope");
  if (sol.residual > kCertTol)
    throw internal_error("solve_g0: LP residual " + std::to_string(sol.residual));

  eta_assignment asg;
  for (long v = 0; v < nv; ++v) {
    if (sol.x(v) <= 1e-12) continue;
    asg.vertex.push_back(static_cast<int>(v));
    asg.eta.push_back(sol.x(v) * cands[static_cast<std::size_t>(v)].v->t);
  }
  approx_result r = finish(jd, ctx, cands, sol.value, asg, 0.0,
                           geom::perletter_criterion::unweighted);
  r.combinations_tried = 1;
  return r;
}

approx_result solve_g_wl(const joint_dist& j, double eps, std::size_t combo_cap) {
  return solve_perletter(j, eps, geom::perletter_criterion::weighted, combo_cap);
}

approx_result solve_g_l(const joint_dist& j, double eps, std::size_t combo_cap) {
  return solve_perletter(j, eps, geom::perletter_criterion::unweighted, combo_cap);
}

}  // namespace privutil::lp
