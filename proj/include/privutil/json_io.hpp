#ifndef PRIVUTIL_JSON_IO_HPP
#define PRIVUTIL_JSON_IO_HPP

#include <optional>
#include <string>

#include "privutil/bounds.hpp"
#include "privutil/lpapprox.hpp"
#include "privutil/mechanisms.hpp"
#include "privutil/oracle.hpp"
#include "privutil/types.hpp"

namespace privutil::io {

// A parsed instance file: a 2-D joint over (X, Y) or a 3-D tensor over
// (X1, X2, Y) for the prioritized problem.
struct instance {
  std::string name;
  std::optional<joint_dist> joint;
  std::optional<prioritized_joint> prioritized;

  bool is_prioritized() const { return prioritized.has_value(); }
};

instance parse_instance_json(const std::string& text);
// CSV: header row of Y labels (first cell is the instance name or blank),
// one row per X symbol.  2-D instances only.
instance parse_instance_csv(const std::string& text);
std::string instance_to_json(const instance& inst);

log_base base_from_name(const std::string& name);

// Entropy suite and basic structure of an instance.
std::string info_json(const instance& inst, log_base base);

// Every applicable closed-form bound at the given budget: Part I bounds
// (eps read in `base` units), the eps = 0 report, per-letter bounds (eps
// read as an l1 budget), budget conversions, and the equality detector.
// For prioritized instances, the prioritized bounds instead.
std::string bounds_json(const instance& inst, double eps, log_base base,
                        bool with_g0);

// kind: frl | efrl | sfrl | esfrl.  eps in `base` units where applicable.
std::string mechanism_json(const joint_dist& j, const std::string& kind, double eps,
                           log_base base, long n_draws, long max_index,
                           std::optional<std::uint64_t> seed);

// which: g0 | gwl | gl.  eps is an l1 budget.
std::string lp_json(const joint_dist& j, const std::string& which, double eps,
                    log_base base);

std::string oracle_json(const joint_dist& j, const std::string& crit, double eps,
                        double resolution, long max_card, log_base base);

}  // namespace privutil::io

#endif  // PRIVUTIL_JSON_IO_HPP
