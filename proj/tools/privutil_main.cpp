// Command-line front end for the privutil shared library.  Everything goes
// through the C API in privutil.h; this binary only parses flags, moves JSON
// around and writes plot-ready CSV.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "privutil.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct owned_string {
  char* ptr = nullptr;
  ~owned_string() { pu_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct owned_instance {
  pu_instance* ptr = nullptr;
  ~owned_instance() { pu_instance_free(ptr); }
};

[[noreturn]] void fail(pu_status st, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(static_cast<int>(st));
}

void check(pu_status st, const owned_string& err) {
  if (st != PU_OK) fail(st, err.str().empty() ? "unknown failure" : err.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(PU_ERR_VALIDATION, "cannot open instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct instance_flags {
  std::string file;
  std::string family;
  double theta = 0.3;
};

void add_instance_flags(CLI::App* cmd, instance_flags& f) {
  cmd->add_option("--instance", f.file, "instance file (.json or .csv)");
  cmd->add_option("--family", f.family, "built-in family: bsc or erasure")
      ->check(CLI::IsMember({"bsc", "erasure"}));
  cmd->add_option("--theta", f.theta, "family parameter");
}

owned_instance load_instance(const instance_flags& f) {
  owned_instance inst;
  owned_string err;
  if (!f.file.empty()) {
    const std::string text = read_file(f.file);
    const bool csv = fs::path(f.file).extension() == ".csv";
    check(csv ? pu_instance_from_csv(text.c_str(), &inst.ptr, &err.ptr)
              : pu_instance_from_json(text.c_str(), &inst.ptr, &err.ptr),
          err);
  } else if (f.family == "bsc") {
    check(pu_instance_bsc(f.theta, &inst.ptr, &err.ptr), err);
  } else if (f.family == "erasure") {
    check(pu_instance_erasure(f.theta, &inst.ptr, &err.ptr), err);
  } else {
    fail(PU_ERR_VALIDATION, "provide --instance FILE or --family {bsc,erasure}");
  }
  return inst;
}

void emit(const std::string& text, const std::string& out_dir,
          const std::string& file_name) {
  std::cout << text << "\n";
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / file_name);
  out << text << "\n";
}

std::string normalize_series(std::string s) {
  std::string out;
  for (char c : s)
    if (c != '_') out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

// Long-format rows (x, series, value, valid) from a bounds report JSON.
void append_bounds_rows(std::ostream& csv, double x, const json& report,
                        const std::vector<std::string>& series) {
  for (const auto& e : report["entries"]) {
    const std::string id = e["id"].get<std::string>();
    if (!series.empty()) {
      const std::string norm = normalize_series(id);
      bool wanted = false;
      for (const auto& s : series)
        if (normalize_series(s) == norm) wanted = true;
      if (!wanted) continue;
    }
    csv << x << ',' << id << ',' << e["value"].get<double>() << ','
        << (e["valid"].get<bool>() ? "true" : "false") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-utility trade-off bounds, mechanisms and LP approximations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string base = "bits";
  std::string out_dir;
  app.add_option("--base", base, "report units: bits (default) or nats")
      ->check(CLI::IsMember({"bits", "nats"}));
  app.add_option("--out", out_dir, "directory for report files");

  instance_flags inst_flags;
  double eps = 0.0;
  std::string criterion = "l";
  double grid = 0.02;
  long max_card = 0;
  std::optional<std::uint64_t> seed;
  long n_draws = 100000;
  long max_index = 10000;

  auto* c_info = app.add_subcommand("info", "entropy suite of an instance");
  add_instance_flags(c_info, inst_flags);

  auto* c_bounds = app.add_subcommand("bounds", "closed-form bound report");
  add_instance_flags(c_bounds, inst_flags);
  c_bounds->add_option("--eps", eps, "leakage budget");
  bool no_g0 = false;
  c_bounds->add_flag("--no-g0", no_g0, "skip the LP-backed g0 value in L3");

  auto* c_mech = app.add_subcommand("mechanism", "construct frl/efrl/sfrl/esfrl");
  add_instance_flags(c_mech, inst_flags);
  std::string kind = "frl";
  c_mech->add_option("kind", kind, "frl | efrl | sfrl | esfrl")->required();
  c_mech->add_option("--eps", eps, "leakage budget (efrl/esfrl)");
  c_mech->add_option("--seed", seed, "sampler seed (required for sfrl/esfrl)");
  c_mech->add_option("--draws", n_draws, "Monte-Carlo draws");
  c_mech->add_option("--max-index", max_index, "race truncation index");

  auto* c_lp = app.add_subcommand("lp", "linear-program approximations");
  add_instance_flags(c_lp, inst_flags);
  std::string which = "g0";
  c_lp->add_option("problem", which, "g0 | gwl | gl")->required();
  c_lp->add_option("--eps", eps, "per-letter budget");

  auto* c_oracle = app.add_subcommand("oracle", "brute-force grid search");
  add_instance_flags(c_oracle, inst_flags);
  c_oracle->add_option("--criterion", criterion, "mi | wl | l | perfect | h");
  c_oracle->add_option("--eps", eps, "budget");
  c_oracle->add_option("--grid", grid, "simplex resolution");
  c_oracle->add_option("--max-card", max_card, "|U| cap (0 = default)");

  auto* c_sweep = app.add_subcommand("sweep", "parameter sweep to long-format CSV");
  add_instance_flags(c_sweep, inst_flags);
  std::string var = "eps";
  std::string range = "0:0.1:11";
  std::string series_arg;
  std::string lp_problem;
  c_sweep->add_option("--var", var, "eps | theta")->check(CLI::IsMember({"eps", "theta"}));
  c_sweep->add_option("--range", range, "lo:hi:steps");
  c_sweep->add_option("--series", series_arg, "comma-separated bound ids (default all)");
  c_sweep->add_option("--lp", lp_problem, "also sweep an LP problem: g0 | gwl | gl");
  c_sweep->add_option("--eps", eps, "fixed eps for theta sweeps");

  auto* c_report = app.add_subcommand("report", "info + bounds + g0 in one document");
  add_instance_flags(c_report, inst_flags);
  c_report->add_option("--eps", eps, "leakage budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  owned_string err;

  if (c_info->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string out;
    check(pu_info(inst.ptr, base.c_str(), &out.ptr, &err.ptr), err);
    emit(out.str(), out_dir, "info.json");
    return 0;
  }

  if (c_bounds->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string out;
    check(pu_bounds(inst.ptr, eps, base.c_str(), no_g0 ? 0 : 1, &out.ptr, &err.ptr), err);
    emit(out.str(), out_dir, "bounds.json");
    if (!out_dir.empty()) {
      const json j = json::parse(out.str());
      std::ofstream csv(fs::path(out_dir) / "bounds.csv");
      csv << "bound_id,eps,value,valid\n";
      for (const auto& e : j["entries"])
        csv << e["id"].get<std::string>() << ',' << eps << ','
            << e["value"].get<double>() << ','
            << (e["valid"].get<bool>() ? "true" : "false") << '\n';
    }
    return 0;
  }

  if (c_mech->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string out;
    check(pu_mechanism(inst.ptr, kind.c_str(), eps, base.c_str(), n_draws, max_index,
                       seed.value_or(0), seed.has_value() ? 1 : 0, &out.ptr, &err.ptr),
          err);
    emit(out.str(), out_dir, "mechanism.json");
    return 0;
  }

  if (c_lp->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string out;
    check(pu_lp(inst.ptr, which.c_str(), eps, base.c_str(), &out.ptr, &err.ptr), err);
    emit(out.str(), out_dir, "lp.json");
    return 0;
  }

  if (c_oracle->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string out;
    check(pu_oracle(inst.ptr, criterion.c_str(), eps, grid, max_card, base.c_str(),
                    &out.ptr, &err.ptr),
          err);
    emit(out.str(), out_dir, "oracle.json");
    return 0;
  }

  if (c_sweep->parsed()) {
    double lo = 0.0, hi = 0.0;
    long steps = 0;
    {
      std::istringstream rs(range);
      std::string a, b, c;
      std::getline(rs, a, ':');
      std::getline(rs, b, ':');
      std::getline(rs, c, ':');
      try {
        lo = std::stod(a);
        hi = std::stod(b);
        steps = std::stol(c);
      } catch (const std::exception&) {
        fail(PU_ERR_VALIDATION, "--range must be lo:hi:steps");
      }
    }
    if (steps < 2 || !(lo < hi))
      fail(PU_ERR_VALIDATION, "--range needs lo < hi and steps >= 2");
    std::vector<std::string> series;
    {
      std::istringstream ss(series_arg);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) series.push_back(item);
    }

    std::ofstream file_csv;
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      file_csv.open(fs::path(out_dir) / "sweep.csv");
    }
    std::ostream& csv = file_csv.is_open() ? file_csv : std::cout;
    csv << "x,series,value,valid\n";

    for (long i = 0; i < steps; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(steps - 1);
      instance_flags point = inst_flags;
      double point_eps = eps;
      if (var == "theta")
        point.theta = x;
      else
        point_eps = x;
      owned_instance inst = load_instance(point);
      owned_string bounds_out, lerr;
      const pu_status st = pu_bounds(inst.ptr, point_eps, base.c_str(),
                                     lp_problem.empty() ? 0 : 1, &bounds_out.ptr,
                                     &lerr.ptr);
      if (st == PU_OK) {
        append_bounds_rows(csv, x, json::parse(bounds_out.str()), series);
      } else {
        csv << x << ",bounds_error,nan,false\n";
      }
      if (!lp_problem.empty()) {
        owned_string lp_out, lperr;
        const pu_status lst = pu_lp(inst.ptr, lp_problem.c_str(), point_eps,
                                    base.c_str(), &lp_out.ptr, &lperr.ptr);
        if (lst == PU_OK) {
          const json r = json::parse(lp_out.str());
          const bool coarse_ok = r["regime"] != "none";
          csv << x << ",utility_lb," << r["utility_lb"].get<double>() << ",true\n";
          csv << x << ",approx_utility," << r["approx_utility"].get<double>()
              << ',' << (coarse_ok ? "true" : "false") << '\n';
          if (r.contains("upper1"))
            csv << x << ",U_gl_1," << r["upper1"].get<double>() << ",true\n";
          if (r.contains("upper2"))
            csv << x << ",U_gl_2," << r["upper2"].get<double>() << ",true\n";
        } else {
          csv << x << ',' << lp_problem << "_infeasible,nan,false\n";
        }
      }
      csv.flush();  // partial sweeps stay usable
    }
    return 0;
  }

  if (c_report->parsed()) {
    owned_instance inst = load_instance(inst_flags);
    owned_string info_out, bounds_out, export_out;
    check(pu_info(inst.ptr, base.c_str(), &info_out.ptr, &err.ptr), err);
    check(pu_bounds(inst.ptr, eps, base.c_str(), 1, &bounds_out.ptr, &err.ptr), err);
    check(pu_instance_to_json(inst.ptr, &export_out.ptr, &err.ptr), err);
    json doc;
    doc["info"] = json::parse(info_out.str());
    doc["bounds"] = json::parse(bounds_out.str());
    doc["instance"] = json::parse(export_out.str());
    emit(doc.dump(2), out_dir, "report.json");
    return 0;
  }

  return 2;
}
