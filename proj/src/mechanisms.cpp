#include "privutil/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "privutil/rng.hpp"

namespace privutil::mech {

const char* rep_kind_name(rep_kind k) {
  switch (k) {
    case rep_kind::frl: return "frl";
    case rep_kind::efrl: return "efrl";
    case rep_kind::sfrl: return "sfrl";
    case rep_kind::esfrl: return "esfrl";
  }
  return "?";
}

Eigen::MatrixXd functional_rep::induced_y_given_x() const {
  const long nx = p_u_given_x.cols();
  const long ny = static_cast<long>(y_labels.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ny, nx);
  for (long u = 0; u < n_atoms(); ++u)
    for (long x = 0; x < nx; ++x) out(f(u, x), x) += p_u_given_x(u, x);
  return out;
}

tri_joint functional_rep::to_joint(const joint_dist& j) const {
  if (j.nx() != p_u_given_x.cols())
    throw validation_error("functional_rep: |X| mismatch with joint");
  tri_joint t(j.nx(), j.ny(), n_atoms());
  for (long u = 0; u < n_atoms(); ++u)
    for (long x = 0; x < j.nx(); ++x)
      t.at(x, f(u, x), u) += j.px()(x) * p_u_given_x(u, x);
  return t;
}

namespace {
constexpr double kMergeTol = 1e-12;
}

functional_rep frl(const joint_dist& j) {
  const long nx = j.nx();
  const long ny = j.ny();
  const Eigen::MatrixXd y_x = j.y_given_x();  // |Y| x |X|

  // Cumulative partition of [0,1) per x, then the common refinement.
  std::vector<double> breakpoints{0.0, 1.0};
  for (long x = 0; x < nx; ++x) {
    double c = 0.0;
    for (long y = 0; y < ny; ++y) {
      c += y_x(y, x);
      breakpoints.push_back(std::min(c, 1.0));
    }
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> merged{breakpoints.front()};
  for (double b : breakpoints)
    if (b - merged.back() > kMergeTol) merged.push_back(b);

  const long n_atoms = static_cast<long>(merged.size()) - 1;
  functional_rep rep;
  rep.kind = rep_kind::frl;
  rep.x_labels = j.x_labels();
  rep.y_labels = j.y_labels();
  rep.p_u = Eigen::VectorXd::Zero(n_atoms);
  rep.f = Eigen::MatrixXi::Zero(n_atoms, nx);
  for (long u = 0; u < n_atoms; ++u) {
    rep.p_u(u) = merged[u + 1] - merged[u];
    rep.atom_labels.push_back("u" + std::to_string(u));
    const double mid = 0.5 * (merged[u] + merged[u + 1]);
    for (long x = 0; x < nx; ++x) {
      double c = 0.0;
      long pick = ny - 1;
      for (long y = 0; y < ny; ++y) {
        c += y_x(y, x);
        if (mid < c) {
          pick = y;
          break;
        }
      }
      rep.f(u, x) = static_cast<int>(pick);
    }
  }
  rep.p_u_given_x = rep.p_u.replicate(1, nx);
  return rep;
}

functional_rep efrl(const joint_dist& j, double eps) {
  const entropy_suite_result es = entropy_suite(j);
  if (eps < 0.0 || eps >= es.mi)
    throw validation_error("efrl: eps must satisfy 0 <= eps < I(X;Y) = " +
                           std::to_string(es.mi) + " nats");
  if (es.h_x <= 0.0) throw validation_error("efrl: H(X) = 0, alpha undefined");
  const double alpha = eps / es.h_x;

  const functional_rep base = frl(j);
  const long nx = j.nx();

  functional_rep rep;
  rep.kind = rep_kind::efrl;
  rep.eps = eps;
  rep.alpha = alpha;
  rep.x_labels = j.x_labels();
  rep.y_labels = j.y_labels();

  // Atoms (u_tilde, w) with w in X for the revealing branch and the dummy
  // symbol otherwise.  Zero-mass atoms are dropped (alpha = 0 collapses to
  // the plain FRL).
  std::vector<double> mass;
  std::vector<Eigen::VectorXd> cond_cols;
  std::vector<std::array<long, 2>> ids;  // (u_tilde, w); w == nx means dummy
  for (long ut = 0; ut < base.n_atoms(); ++ut) {
    for (long w = 0; w <= nx; ++w) {
      double m = 0.0;
      Eigen::VectorXd cond = Eigen::VectorXd::Zero(nx);
      if (w == nx) {
        m = base.p_u(ut) * (1.0 - alpha);
        cond.setConstant(base.p_u(ut) * (1.0 - alpha));
      } else {
        m = base.p_u(ut) * alpha * j.px()(w);
        cond(w) = base.p_u(ut) * alpha;
      }
      if (m <= 0.0) continue;
      mass.push_back(m);
      cond_cols.push_back(cond);
      ids.push_back({ut, w});
    }
  }
  const long n_atoms = static_cast<long>(mass.size());
  rep.p_u = Eigen::VectorXd::Zero(n_atoms);
  rep.p_u_given_x = Eigen::MatrixXd::Zero(n_atoms, nx);
  rep.f = Eigen::MatrixXi::Zero(n_atoms, nx);
  for (long a = 0; a < n_atoms; ++a) {
    rep.p_u(a) = mass[static_cast<std::size_t>(a)];
    rep.p_u_given_x.row(a) = cond_cols[static_cast<std::size_t>(a)].transpose();
    const auto [ut, w] = ids[static_cast<std::size_t>(a)];
    rep.atom_labels.push_back(
        "(u" + std::to_string(ut) + "," +
        (w == nx ? std::string(kDummySymbol) : j.x_labels()[static_cast<std::size_t>(w)]) +
        ")");
    for (long x = 0; x < nx; ++x) rep.f(a, x) = base.f(ut, x);
  }
  return rep;
}

mechanism::mechanism(tri_joint t) : joint(std::move(t)) {
  const tri_measures m = measures_xyu(joint);
  summary.i_uy = m.i_yu;
  summary.i_ux = m.i_xu;
  summary.i_ux_given_y = m.i_xu_given_y;
  summary.h_y_given_xu = m.h_y_given_xu;
  summary.weighted = m.weighted;
  summary.unweighted = m.unweighted;
}

mechanism from_y_kernel(const joint_dist& j, const kernel& u_given_y) {
  if (u_given_y.n_in() != j.ny())
    throw validation_error("from_y_kernel: kernel expects " +
                           std::to_string(u_given_y.n_in()) + " columns, joint has " +
                           std::to_string(j.ny()));
  tri_joint t(j.nx(), j.ny(), u_given_y.n_out());
  for (long x = 0; x < j.nx(); ++x)
    for (long y = 0; y < j.ny(); ++y)
      for (long u = 0; u < u_given_y.n_out(); ++u)
        t.at(x, y, u) = j.matrix()(x, y) * u_given_y.matrix(u, y);
  mechanism m(std::move(t));
  m.u_labels = default_labels("u", u_given_y.n_out());
  return m;
}

mechanism from_rep(const joint_dist& j, const functional_rep& rep) {
  mechanism m(rep.to_joint(j));
  m.u_labels = rep.atom_labels;
  return m;
}

namespace {

struct pfr_draw {
  long x, y, u;
  bool truncated;
};

// One Poisson-functional-representation race for private symbol x.  Stops as
// soon as no later arrival can beat the current winner.
pfr_draw pfr_race(const joint_dist& j, const Eigen::MatrixXd& y_x, long x,
                  double r_max, long max_index, split_rng& rng) {
  double t = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  long best_k = -1, best_y = -1;
  bool certified = false;
  for (long k = 0; k < max_index; ++k) {
    t += rng.exp1();
    const long y = rng.categorical(j.py());
    const double ratio = y_x(y, x) / j.py()(y);
    if (ratio > 0.0) {
      const double score = t / ratio;
      if (score < best_score) {
        best_score = score;
        best_k = k;
        best_y = y;
      }
    }
    if (t / r_max > best_score) {
      certified = true;
      break;
    }
  }
  if (best_k < 0) return {x, 0, 0, true};
  return {x, best_y, best_k, !certified};
}

mechanism empirical_mechanism(const joint_dist& j, long n_draws, long max_index,
                              std::uint64_t seed, double alpha, rep_kind kind) {
  if (n_draws <= 0 || max_index <= 0)
    throw validation_error("sfrl_sample: n_draws and max_index must be positive");
  const Eigen::MatrixXd y_x = j.y_given_x();
  Eigen::VectorXd r_max(j.nx());
  for (long x = 0; x < j.nx(); ++x)
    r_max(x) = (y_x.col(x).array() / j.py().array()).maxCoeff();

  split_rng rng(seed);
  const long nx = j.nx(), ny = j.ny();
  // Dense relabeling of observed (race index, w) atoms; w == nx is the dummy.
  std::map<std::pair<long, long>, long> atom_id;
  std::vector<std::string> labels;
  std::vector<double> counts;  // flattened (x, y, atom)
  long truncated = 0;
  auto atom_of = [&](long k, long w) {
    auto [it, inserted] = atom_id.try_emplace({k, w}, static_cast<long>(labels.size()));
    if (inserted) {
      std::string lab = "k" + std::to_string(k + 1);
      if (kind == rep_kind::esfrl)
        lab = "(" + lab + "," +
              (w == nx ? std::string(kDummySymbol) : j.x_labels()[static_cast<std::size_t>(w)]) +
              ")";
      labels.push_back(lab);
      counts.resize(labels.size() * static_cast<std::size_t>(nx * ny), 0.0);
    }
    return it->second;
  };

  const long n_atoms_hint = nx * ny;
  counts.reserve(static_cast<std::size_t>(n_atoms_hint * nx * ny));
  std::vector<std::array<long, 3>> events;
  events.reserve(static_cast<std::size_t>(n_draws));
  for (long d = 0; d < n_draws; ++d) {
    const long x = rng.categorical(j.px());
    const pfr_draw r = pfr_race(j, y_x, x, r_max(x), max_index, rng);
    if (r.truncated) ++truncated;
    long w = nx;
    if (kind == rep_kind::esfrl && alpha > 0.0 && rng.bernoulli(alpha)) w = x;
    events.push_back({x, r.y, atom_of(r.u, w)});
  }

  const long n_atoms = static_cast<long>(labels.size());
  tri_joint t(nx, ny, n_atoms);
  const double inv = 1.0 / static_cast<double>(n_draws);
  for (const auto& e : events) t.at(e[0], e[1], e[2]) += inv;

  mechanism m(std::move(t));
  m.u_labels = labels;
  m.n_draws = n_draws;
  m.truncation_mass = static_cast<double>(truncated) / static_cast<double>(n_draws);
  m.truncation_warning = m.truncation_mass > 1e-3;
  return m;
}

}  // namespace

mechanism sfrl_sample(const joint_dist& j, long n_draws, long max_index,
                      std::uint64_t seed) {
  return empirical_mechanism(j, n_draws, max_index, seed, 0.0, rep_kind::sfrl);
}

mechanism esfrl_sample(const joint_dist& j, double eps, long n_draws, long max_index,
                       std::uint64_t seed) {
  const entropy_suite_result es = entropy_suite(j);
  if (eps < 0.0 || eps >= es.mi)
    throw validation_error("esfrl_sample: eps must satisfy 0 <= eps < I(X;Y)");
  if (es.h_x <= 0.0) throw validation_error("esfrl_sample: H(X) = 0");
  return empirical_mechanism(j, n_draws, max_index, seed, eps / es.h_x,
                             rep_kind::esfrl);
}

utility_decomposition decompose_utility(const mechanism& m) {
  const tri_measures t = measures_xyu(m.joint);
  utility_decomposition d;
  d.i_yu = t.i_yu;
  d.i_xu = t.i_xu;
  d.h_y_given_x = t.h_y_given_x;
  d.h_y_given_xu = t.h_y_given_xu;
  d.i_xu_given_y = t.i_xu_given_y;
  d.residual = d.i_yu - (d.i_xu + d.h_y_given_x - d.h_y_given_xu - d.i_xu_given_y);
  return d;
}

sfrl_constant sfrl_bound_constant(double mi_xy) {
  sfrl_constant c;
  c.standard = std::log(mi_xy + 1.0) + 4.0;
  const double e1loge = std::exp(-1.0);  // e^-1 log(e) in nats
  c.tighter = e1loge + 2.0 + std::log(mi_xy + e1loge + 2.0);
  return c;
}

entropy_cap_result entropy_cap_check(const functional_rep& rep, const joint_dist& j,
                                     double eps) {
  const entropy_suite_result es = entropy_suite(j);
  const double alpha = es.h_x > 0.0 ? eps / es.h_x : 0.0;
  entropy_cap_result r;
  r.h_u = entropy(rep.p_u);
  r.cap = es.h_y_given_x_each.sum() + eps + binary_entropy(alpha);
  r.margin = r.cap - r.h_u;
  r.holds = r.margin >= -kSumTol;
  r.sup_lower = es.h_y_given_x + binary_entropy(alpha) + eps;
  return r;
}

}  // namespace privutil::mech
