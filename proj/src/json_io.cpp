#include "privutil/json_io.hpp"

#include <json.hpp>
#include <sstream>

#include "privutil/geometry.hpp"

namespace privutil::io {

using nlohmann::json;

namespace {

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty())
    throw validation_error(what + ": 'matrix' must be a non-empty array of rows");
  const std::size_t ncols = rows[0].size();
  Eigen::MatrixXd m(static_cast<long>(rows.size()), static_cast<long>(ncols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != ncols)
      throw validation_error(what + ": row " + std::to_string(r) +
                             " has inconsistent length");
    for (std::size_t c = 0; c < ncols; ++c)
      m(static_cast<long>(r), static_cast<long>(c)) = rows[r][c].get<double>();
  }
  return m;
}

std::vector<std::string> labels_from_json(const json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key))
    for (const auto& v : j[key]) out.push_back(v.get<std::string>());
  return out;
}

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json report_to_json(const bounds::bounds_report& rep, log_base base) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"id", e.id},
                       {"quantity", e.quantity},
                       {"kind", e.kind == bounds::bound_kind::lower   ? "lower"
                                : e.kind == bounds::bound_kind::upper ? "upper"
                                                                      : "exact"},
                       {"value", e.info_units ? to_base(e.value, base) : e.value},
                       {"units", e.info_units ? base_name(base) : "dimensionless"},
                       {"valid", e.valid},
                       {"validity", e.validity},
                       {"note", e.note}});
  }
  return entries;
}

}  // namespace

log_base base_from_name(const std::string& name) {
  if (name == "bits") return log_base::bits;
  if (name == "nats") return log_base::nats;
  throw validation_error("unknown base '" + name + "' (expected bits or nats)");
}

instance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("instance: JSON parse failure: ") + e.what());
  }
  instance inst;
  inst.name = j.value("name", "instance");
  if (j.contains("tensor")) {
    const auto& t = j["tensor"];
    if (!t.is_array() || t.empty() || !t[0].is_array() || t[0].empty())
      throw validation_error("instance: 'tensor' must be [x1][x2][y]");
    const long n1 = static_cast<long>(t.size());
    const long n2 = static_cast<long>(t[0].size());
    const long ny = static_cast<long>(t[0][0].size());
    tri_joint tensor(n1, n2, ny);
    for (long a = 0; a < n1; ++a)
      for (long b = 0; b < n2; ++b) {
        if (static_cast<long>(t[a].size()) != n2 ||
            static_cast<long>(t[a][b].size()) != ny)
          throw validation_error("instance: ragged tensor at x1=" + std::to_string(a));
        for (long y = 0; y < ny; ++y) tensor.at(a, b, y) = t[a][b][y].get<double>();
      }
    inst.prioritized = prioritized_joint(std::move(tensor),
                                         labels_from_json(j, "x1_labels"),
                                         labels_from_json(j, "x2_labels"),
                                         labels_from_json(j, "y_labels"));
    return inst;
  }
  if (!j.contains("matrix"))
    throw validation_error("instance: expected a 'matrix' or 'tensor' field");
  inst.joint = joint_dist(matrix_from_json(j["matrix"], "instance"),
                          labels_from_json(j, "x_labels"),
                          labels_from_json(j, "y_labels"));
  return inst;
}

instance parse_instance_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  if (rows.size() < 2)
    throw validation_error("instance csv: need a header row and at least one data row");
  const std::size_t ncols = rows[0].size();
  std::vector<std::string> y_labels(rows[0].begin() + 1, rows[0].end());
  std::vector<std::string> x_labels;
  Eigen::MatrixXd m(static_cast<long>(rows.size()) - 1, static_cast<long>(ncols) - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != ncols)
      throw validation_error("instance csv: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " cells, expected " +
                             std::to_string(ncols));
    x_labels.push_back(rows[r][0]);
    for (std::size_t c = 1; c < ncols; ++c) {
      try {
        m(static_cast<long>(r) - 1, static_cast<long>(c) - 1) = std::stod(rows[r][c]);
      } catch (const std::exception&) {
        throw validation_error("instance csv: row " + std::to_string(r) + ", column '" +
                               y_labels[c - 1] + "': not a number");
      }
    }
  }
  instance inst;
  inst.name = rows[0][0].empty() ? "instance" : rows[0][0];
  inst.joint = joint_dist(m, x_labels, y_labels);
  return inst;
}

std::string instance_to_json(const instance& inst) {
  json j;
  j["name"] = inst.name;
  if (inst.prioritized) {
    const auto& p = *inst.prioritized;
    j["x1_labels"] = p.x1_labels();
    j["x2_labels"] = p.x2_labels();
    j["y_labels"] = p.y_labels();
    json t = json::array();
    for (long a = 0; a < p.tensor().dim(0); ++a) {
      json plane = json::array();
      for (long b = 0; b < p.tensor().dim(1); ++b) {
        json row = json::array();
        for (long y = 0; y < p.tensor().dim(2); ++y) row.push_back(p.tensor().at(a, b, y));
        plane.push_back(row);
      }
      t.push_back(plane);
    }
    j["tensor"] = t;
  } else {
    j["x_labels"] = inst.joint->x_labels();
    j["y_labels"] = inst.joint->y_labels();
    j["matrix"] = mat_to_json(inst.joint->matrix());
  }
  return j.dump(2);
}

std::string info_json(const instance& inst, log_base base) {
  json j;
  j["name"] = inst.name;
  j["base"] = base_name(base);
  if (inst.prioritized) {
    const auto& t = inst.prioritized->tensor();
    j["shape"] = {t.dim(0), t.dim(1), t.dim(2)};
    j["kind"] = "prioritized";
    return j.dump(2);
  }
  const joint_dist& d = *inst.joint;
  const entropy_suite_result es = entropy_suite(d, base);
  j["kind"] = "joint";
  j["shape"] = {d.nx(), d.ny()};
  j["x_labels"] = d.x_labels();
  j["y_labels"] = d.y_labels();
  j["p_x"] = vec_to_json(d.px());
  j["p_y"] = vec_to_json(d.py());
  j["H_X"] = es.h_x;
  j["H_Y"] = es.h_y;
  j["H_X_given_Y"] = es.h_x_given_y;
  j["H_Y_given_X"] = es.h_y_given_x;
  j["I_XY"] = es.mi;
  j["H_Y_given_X_each"] = vec_to_json(es.h_y_given_x_each);
  j["min_p_x"] = d.px().minCoeff();
  // Geometry dump for reproduction, where the leakage matrix admits it.
  try {
    const geom::geometry_context ctx = geom::build_context(d);
    json g;
    g["m"] = mat_to_json(ctx.m());
    g["eps2"] = ctx.eps2();
    g["basis_cols"] = ctx.basis_cols();
    json omega1 = json::array();
    for (const auto& v : ctx.strict())
      omega1.push_back({{"omega", v.omega},
                        {"t", vec_to_json(v.t)},
                        {"sigma_max", v.sigma_max}});
    g["omega1"] = omega1;
    json boundary = json::array();
    for (const auto& v : ctx.boundary())
      boundary.push_back({{"omega", v.omega}, {"t", vec_to_json(v.t)}});
    g["boundary"] = boundary;
    j["geometry"] = g;
  } catch (const validation_error&) {
    // square or rank-deficient leakage matrix; no geometry section
  }
  return j.dump(2);
}

std::string bounds_json(const instance& inst, double eps, log_base base,
                        bool with_g0) {
  json j;
  j["name"] = inst.name;
  j["base"] = base_name(base);
  j["eps"] = eps;
  if (inst.prioritized) {
    const double eps_nats = from_base(eps, base);
    j["kind"] = "prioritized";
    j["entries"] = report_to_json(bounds::prioritized_bounds(*inst.prioritized, eps_nats), base);
    return j.dump(2);
  }
  const joint_dist& d = *inst.joint;
  const entropy_suite_result es = entropy_suite(d);
  const double eps_nats = from_base(eps, base);

  json entries = json::array();
  auto append = [&entries](const json& more) {
    for (const auto& e : more) entries.push_back(e);
  };
  append(report_to_json(bounds::h0_report(d), base));
  if (eps_nats < es.mi) {
    double g0 = 0.0;
    bool have_g0 = false;
    if (with_g0) {
      try {
        g0 = lp::solve_g0(d).utility_lb;
        have_g0 = true;
      } catch (const validation_error&) {
        g0 = 0.0;  // rank-deficient or unsupported shape; keep the zero default
      }
    }
    append(report_to_json(bounds::h_bounds_mi(d, eps_nats, g0), base));
    j["g0_available"] = have_g0;
    const bounds::positivity_result pos = bounds::positivity_condition(d, eps_nats);
    j["positivity"] = {{"necessary", pos.necessary},
                       {"sufficient", pos.sufficient},
                       {"margin", to_base(pos.margin, base)}};
    const bounds::equality_result eq = bounds::equality_detector(d, eps_nats);
    j["equality"] = {{"h_x_given_y_zero", eq.h_x_given_y_zero}};
    if (eq.value) j["equality"]["value"] = to_base(*eq.value, base);
  } else {
    j["note_mi"] = "eps >= I(X;Y): the optimum is H(Y), Part-I bounds omitted";
  }
  append(report_to_json(bounds::perletter_closed_bounds(d, eps), base));
  const bounds::pinsker_result pk = bounds::pinsker_convert(eps_nats, d.px().minCoeff());
  j["pinsker"] = {{"eps_bar", pk.eps_bar},
                  {"eps_prime", pk.eps_prime},
                  {"eps_tilde", pk.eps_tilde}};
  j["efi_lower"] = to_base(bounds::efi_lower(d), base);
  j["entries"] = entries;
  return j.dump(2);
}

std::string mechanism_json(const joint_dist& j, const std::string& kind, double eps,
                           log_base base, long n_draws, long max_index,
                           std::optional<std::uint64_t> seed) {
  json out;
  out["kind"] = kind;
  out["base"] = base_name(base);
  const double eps_nats = from_base(eps, base);
  if (kind == "frl" || kind == "efrl") {
    const mech::functional_rep rep =
        kind == "frl" ? mech::frl(j) : mech::efrl(j, eps_nats);
    out["eps"] = eps;
    out["alpha"] = rep.alpha;
    out["atoms"] = rep.atom_labels;
    out["masses"] = vec_to_json(rep.p_u);
    out["cond_masses_per_x"] = mat_to_json(rep.p_u_given_x);
    json f = json::array();
    for (long u = 0; u < rep.n_atoms(); ++u) {
      json row = json::array();
      for (long x = 0; x < j.nx(); ++x)
        row.push_back(j.y_labels()[static_cast<std::size_t>(rep.f(u, x))]);
      f.push_back(row);
    }
    out["f_table"] = f;
    const mech::mechanism m = mech::from_rep(j, rep);
    out["summary"] = {{"I_UX", to_base(m.summary.i_ux, base)},
                      {"I_UY", to_base(m.summary.i_uy, base)},
                      {"I_UX_given_Y", to_base(m.summary.i_ux_given_y, base)},
                      {"H_Y_given_XU", to_base(m.summary.h_y_given_xu, base)}};
    out["faithfulness_linf"] =
        (rep.induced_y_given_x() - j.y_given_x()).cwiseAbs().maxCoeff();
    const long card_bound = kind == "frl"
                                ? j.nx() * (j.ny() - 1) + 1
                                : (j.nx() * (j.ny() - 1) + 1) * (j.nx() + 1);
    out["cardinality"] = rep.n_atoms();
    out["cardinality_bound"] = card_bound;
    return out.dump(2);
  }
  if (kind == "sfrl" || kind == "esfrl") {
    if (!seed) throw validation_error("mechanism: sampling commands require --seed");
    const mech::mechanism m =
        kind == "sfrl" ? mech::sfrl_sample(j, n_draws, max_index, *seed)
                       : mech::esfrl_sample(j, eps_nats, n_draws, max_index, *seed);
    out["eps"] = eps;
    out["n_draws"] = m.n_draws;
    out["max_index"] = max_index;
    out["seed"] = *seed;
    out["truncation_mass"] = m.truncation_mass;
    out["truncation_warning"] = m.truncation_warning;
    out["atoms"] = m.u_labels;
    out["estimates"] = {{"I_UX", to_base(m.summary.i_ux, base)},
                        {"I_UY", to_base(m.summary.i_uy, base)},
                        {"I_UX_given_Y", to_base(m.summary.i_ux_given_y, base)},
                        {"H_Y_given_XU", to_base(m.summary.h_y_given_xu, base)}};
    const entropy_suite_result es = entropy_suite(j);
    const mech::sfrl_constant c = mech::sfrl_bound_constant(es.mi);
    out["sfrl_constant"] = {{"standard", to_base(c.standard, base)},
                            {"tighter", to_base(c.tighter, base)}};
    return out.dump(2);
  }
  throw validation_error("mechanism: unknown kind '" + kind + "'");
}

std::string lp_json(const joint_dist& j, const std::string& which, double eps,
                    log_base base) {
  lp::approx_result r;
  if (which == "g0")
    r = lp::solve_g0(j);
  else if (which == "gwl")
    r = lp::solve_g_wl(j, eps);
  else if (which == "gl")
    r = lp::solve_g_l(j, eps);
  else
    throw validation_error("lp: unknown problem '" + which + "' (g0|gwl|gl)");

  json out;
  out["problem"] = which;
  out["base"] = base_name(base);
  out["eps"] = eps;
  out["eps2"] = r.eps2;
  out["lp_value"] = to_base(r.lp_value, base);
  out["exact_cond_entropy"] = to_base(r.exact_cond_entropy, base);
  out["utility_lb"] = to_base(r.utility_lb, base);
  out["approx_utility"] = to_base(r.approx_utility, base);
  out["regime"] = r.regime == geom::error_regime::fine     ? "fine"
                  : r.regime == geom::error_regime::coarse ? "coarse"
                                                           : "none";
  out["error_bound"] = to_base(r.error_bound, base);
  if (r.upper1) out["upper1"] = to_base(*r.upper1, base);
  if (r.upper2) out["upper2"] = to_base(*r.upper2, base);
  out["heuristic"] = r.heuristic;
  out["invertible_kernel"] = r.invertible_kernel;
  out["combinations_tried"] = r.combinations_tried;
  out["worst_criterion_distance"] = r.worst_criterion_distance;
  out["mixture_residual"] = r.mixture_residual;
  out["mechanism"] = {{"p_u", vec_to_json(r.mechanism.p_u)},
                      {"y_given_u", mat_to_json(r.mechanism.y_given_u)}};
  json js = json::array();
  for (const auto& v : r.mechanism.j) js.push_back(vec_to_json(v));
  out["mechanism"]["j"] = js;
  json om = json::array();
  for (const auto& o : r.mechanism.omega) om.push_back(o);
  out["mechanism"]["omega"] = om;
  return out.dump(2);
}

std::string oracle_json(const joint_dist& j, const std::string& crit, double eps,
                        double resolution, long max_card, log_base base) {
  oracle::grid_spec g;
  g.resolution = resolution;
  g.max_card = max_card;
  json out;
  out["criterion"] = crit;
  out["base"] = base_name(base);
  out["eps"] = eps;
  oracle::oracle_result r;
  if (crit == "h") {
    r = oracle::brute_force_h(j, from_base(eps, base), g);
  } else {
    const oracle::criterion c = oracle::criterion_from_name(crit);
    const double e = c == oracle::criterion::mi ? from_base(eps, base) : eps;
    r = oracle::brute_force_g(j, e, c, g);
  }
  out["value"] = to_base(r.value, base);
  out["resolution"] = r.resolution;
  out["max_card"] = r.max_card;
  out["candidates"] = r.candidates;
  out["slack"] = to_base(oracle::slack(j.ny(), r.resolution), base);
  out["best_kernel"] = mat_to_json(r.best_kernel);
  return out.dump(2);
}

}  // namespace privutil::io
