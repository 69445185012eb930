#include "privutil/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "privutil/measures.hpp"

namespace privutil::oracle {

namespace {
constexpr double kExactTol = 1e-12;  // float dust only; no criterion slack
}

const char* criterion_name(criterion c) {
  switch (c) {
    case criterion::mi: return "mi";
    case criterion::wl: return "wl";
    case criterion::l: return "l";
    case criterion::perfect: return "perfect";
  }
  return "?";
}

criterion criterion_from_name(const std::string& name) {
  if (name == "mi") return criterion::mi;
  if (name == "wl") return criterion::wl;
  if (name == "l") return criterion::l;
  if (name == "perfect") return criterion::perfect;
  throw validation_error("oracle: unknown criterion '" + name + "'");
}

double slack(long ny, double resolution) {
  return static_cast<double>(ny) * std::log(static_cast<double>(ny)) * resolution;
}

namespace {

// All length-`parts` compositions of 1 with step 1/k, lexicographic.
std::vector<Eigen::VectorXd> simplex_grid(long k, long parts) {
  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(parts);
  std::vector<long> comp(static_cast<std::size_t>(parts), 0);
  std::function<void(long, long)> rec = [&](long pos, long left) {
    if (pos == parts - 1) {
      comp[static_cast<std::size_t>(pos)] = left;
      for (long i = 0; i < parts; ++i)
        cur(i) = static_cast<double>(comp[static_cast<std::size_t>(i)]) /
                 static_cast<double>(k);
      out.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      comp[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, k);
  return out;
}

void check_grid(const grid_spec& g) {
  if (!(g.resolution > 0.0) || g.resolution > 0.5)
    throw validation_error("oracle: resolution must lie in (0, 0.5]");
  const double k = 1.0 / g.resolution;
  if (std::abs(k - std::round(k)) > 1e-9)
    throw validation_error("oracle: 1/resolution must be an integer");
}

struct chunk_best {
  double value = -1.0;
  std::vector<long> pick;
};

// Runs `eval` over the odometer of `cells` indices in [0, n_cols), cell 0
// fixed per chunk, threads striped over chunks, merged in chunk order.
chunk_best parallel_scan(long n_cols, long cells,
                         const std::function<double(const std::vector<long>&)>& eval) {
  const long n_threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<chunk_best> per_chunk(static_cast<std::size_t>(n_cols));
  auto worker = [&](long tid) {
    std::vector<long> idx(static_cast<std::size_t>(cells), 0);
    for (long c0 = tid; c0 < n_cols; c0 += n_threads) {
      chunk_best& best = per_chunk[static_cast<std::size_t>(c0)];
      std::fill(idx.begin(), idx.end(), 0L);
      idx[0] = c0;
      while (true) {
        const double v = eval(idx);
        if (v > best.value) {
          best.value = v;
          best.pick = idx;
        }
        long p = cells - 1;
        while (p >= 1 && idx[static_cast<std::size_t>(p)] == n_cols - 1) --p;
        if (p < 1) break;
        ++idx[static_cast<std::size_t>(p)];
        for (long q = p + 1; q < cells; ++q) idx[static_cast<std::size_t>(q)] = 0;
      }
    }
  };
  std::vector<std::thread> pool;
  for (long t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  chunk_best best;
  for (const auto& cb : per_chunk)
    if (cb.value > best.value) best = cb;
  return best;
}

}  // namespace

oracle_result brute_force_g(const joint_dist& j, double eps, criterion crit,
                            const grid_spec& grid) {
  check_grid(grid);
  const long ny = j.ny(), nx = j.nx();
  const long max_card = grid.max_card > 0 ? grid.max_card : ny;
  if (max_card > ny)
    throw validation_error("oracle: Markov-chain search needs |U| <= |Y|");
  const long k = static_cast<long>(std::round(1.0 / grid.resolution));
  const std::vector<Eigen::VectorXd> cols = simplex_grid(k, max_card);
  const double n_candidates =
      std::pow(static_cast<double>(cols.size()), static_cast<double>(ny));
  if (n_candidates > grid.budget)
    throw infeasible_error("oracle: refusing grid search with ~" +
                           std::to_string(n_candidates) + " candidates (budget " +
                           std::to_string(grid.budget) + "); coarsen the grid or cap |U|");

  const Eigen::VectorXd& py = j.py();
  const Eigen::VectorXd& px = j.px();
  const Eigen::MatrixXd pxy = j.matrix();
  const double h_y = entropy(py);
  const double h_x = entropy(px);

  auto eval = [&](const std::vector<long>& idx) -> double {
    // Joint over (U, Y) and (X, U) for the picked kernel columns.
    double value = h_y;
    double i_xu = h_x;
    for (long u = 0; u < max_card; ++u) {
      double pu = 0.0;
      for (long y = 0; y < ny; ++y)
        pu += cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(y)])](u) * py(y);
      if (pu <= 0.0) continue;
      double d = 0.0;
      double h_xg = 0.0;
      for (long x = 0; x < nx; ++x) {
        double pxu = 0.0;
        for (long y = 0; y < ny; ++y)
          pxu += cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(y)])](u) *
                 pxy(x, y);
        d += std::abs(pxu / pu - px(x));
        if (pxu > 0.0) h_xg -= pxu * std::log(pxu / pu);
      }
      switch (crit) {
        case criterion::perfect:
          if (d > kExactTol) return -1.0;
          break;
        case criterion::l:
          if (d > eps + kExactTol) return -1.0;
          break;
        case criterion::wl:
          if (pu * d > eps + kExactTol) return -1.0;
          break;
        case criterion::mi:
          i_xu -= h_xg;
          break;
      }
      double h_yg = 0.0;
      for (long y = 0; y < ny; ++y) {
        const double pyu =
            cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(y)])](u) * py(y);
        if (pyu > 0.0) h_yg -= pyu * std::log(pyu / pu);
      }
      value -= h_yg;
    }
    if (crit == criterion::mi && i_xu > eps + kExactTol) return -1.0;
    return value;
  };

  const chunk_best best = parallel_scan(static_cast<long>(cols.size()), ny, eval);
  if (best.value < 0.0)
    throw internal_error("oracle: no feasible grid kernel (constant U is always feasible)");

  oracle_result r;
  r.value = best.value;
  r.best_kernel = Eigen::MatrixXd::Zero(max_card, ny);
  for (long y = 0; y < ny; ++y)
    r.best_kernel.col(y) = cols[static_cast<std::size_t>(best.pick[static_cast<std::size_t>(y)])];
  r.resolution = grid.resolution;
  r.max_card = max_card;
  r.candidates = n_candidates;
  return r;
}

oracle_result brute_force_h(const joint_dist& j, double eps, const grid_spec& grid) {
  check_grid(grid);
  const long ny = j.ny(), nx = j.nx();
  const long cells = nx * ny;
  const long max_card = grid.max_card > 0 ? grid.max_card : 2;
  if (max_card > cells + 2)
    throw validation_error("oracle: joint-access search needs |U| <= |X||Y| + 2");
  const long k = static_cast<long>(std::round(1.0 / grid.resolution));
  const std::vector<Eigen::VectorXd> cols = simplex_grid(k, max_card);
  const double n_candidates =
      std::pow(static_cast<double>(cols.size()), static_cast<double>(cells));
  if (n_candidates > grid.budget)
    throw infeasible_error("oracle: refusing grid search with ~" +
                           std::to_string(n_candidates) + " candidates (budget " +
                           std::to_string(grid.budget) + "); coarsen the grid or cap |U|");

  const Eigen::MatrixXd pxy = j.matrix();
  const double h_y = entropy(j.py());
  const double h_x = entropy(j.px());

  auto eval = [&](const std::vector<long>& idx) -> double {
    double i_xu = h_x;
    double value = h_y;
    for (long u = 0; u < max_card; ++u) {
      double pu = 0.0;
      for (long x = 0; x < nx; ++x)
        for (long y = 0; y < ny; ++y)
          pu += cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(x * ny + y)])](u) *
                pxy(x, y);
      if (pu <= 0.0) continue;
      double h_xg = 0.0, h_yg = 0.0;
      for (long x = 0; x < nx; ++x) {
        double pxu = 0.0;
        for (long y = 0; y < ny; ++y)
          pxu += cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(x * ny + y)])](u) *
                 pxy(x, y);
        if (pxu > 0.0) h_xg -= pxu * std::log(pxu / pu);
      }
      for (long y = 0; y < ny; ++y) {
        double pyu = 0.0;
        for (long x = 0; x < nx; ++x)
          pyu += cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(x * ny + y)])](u) *
                 pxy(x, y);
        if (pyu > 0.0) h_yg -= pyu * std::log(pyu / pu);
      }
      i_xu -= h_xg;
      value -= h_yg;
    }
    if (i_xu > eps + kExactTol) return -1.0;
    return value;
  };

  const chunk_best best = parallel_scan(static_cast<long>(cols.size()), cells, eval);
  if (best.value < 0.0)
    throw internal_error("oracle: no feasible grid kernel (constant U is always feasible)");

  oracle_result r;
  r.value = best.value;
  r.best_kernel = Eigen::MatrixXd::Zero(max_card, cells);
  for (long c = 0; c < cells; ++c)
    r.best_kernel.col(c) = cols[static_cast<std::size_t>(best.pick[static_cast<std::size_t>(c)])];
  r.resolution = grid.resolution;
  r.max_card = max_card;
  r.candidates = n_candidates;
  return r;
}

audit_result optimizer_audits(const joint_dist& j, double eps,
                              const oracle_result& h_best) {
  const long nx = j.nx(), ny = j.ny();
  if (h_best.best_kernel.cols() != nx * ny)
    throw validation_error("optimizer_audits: kernel shape is not |U| x (|X||Y|)");
  const long nu = h_best.best_kernel.rows();
  tri_joint t(nx, ny, nu);
  for (long x = 0; x < nx; ++x)
    for (long y = 0; y < ny; ++y)
      for (long u = 0; u < nu; ++u)
        t.at(x, y, u) = j.matrix()(x, y) * h_best.best_kernel(u, x * ny + y);
  const tri_measures m = measures_xyu(t);

  audit_result r;
  r.h_y_given_xu = m.h_y_given_xu;
  const entropy_suite_result es = entropy_suite(j);
  r.equality_case = es.h_x_given_y <= kSumTol;
  r.h_opt = h_best.value;
  r.hyx_plus_eps = es.h_y_given_x + eps;
  r.equality_within_slack =
      r.equality_case &&
      std::abs(r.h_opt - r.hyx_plus_eps) <= slack(ny, h_best.resolution);
  return r;
}

}  // namespace privutil::oracle
