#include "privutil.h"

#include <cstring>
#include <new>
#include <string>

#include "privutil/json_io.hpp"

using namespace privutil;

struct pu_instance {
  io::instance inst;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& msg) {
  if (error) *error = dup_string(msg);
}

template <typename Fn>
pu_status guarded(char** error, Fn&& fn) {
  try {
    fn();
    return PU_OK;
  } catch (const validation_error& e) {
    set_error(error, e.what());
    return PU_ERR_VALIDATION;
  } catch (const infeasible_error& e) {
    set_error(error, e.what());
    return PU_ERR_INFEASIBLE;
  } catch (const internal_error& e) {
    set_error(error, e.what());
    return PU_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return PU_ERR_INTERNAL;
  }
}

const joint_dist& require_joint(const pu_instance* inst) {
  if (!inst || !inst->inst.joint)
    throw validation_error("this operation needs a 2-D joint instance");
  return *inst->inst.joint;
}

}  // namespace

extern "C" {

const char* pu_version(void) { return "0.1.0"; }

void pu_string_free(char* s) { delete[] s; }

void pu_instance_free(pu_instance* inst) { delete inst; }

pu_status pu_instance_from_json(const char* text, pu_instance** out, char** error) {
  return guarded(error, [&] {
    if (!text || !out) throw validation_error("null argument");
    auto* inst = new pu_instance{io::parse_instance_json(text)};
    *out = inst;
  });
}

pu_status pu_instance_from_csv(const char* text, pu_instance** out, char** error) {
  return guarded(error, [&] {
    if (!text || !out) throw validation_error("null argument");
    auto* inst = new pu_instance{io::parse_instance_csv(text)};
    *out = inst;
  });
}

pu_status pu_instance_bsc(double theta, pu_instance** out, char** error) {
  return guarded(error, [&] {
    if (!out) throw validation_error("null argument");
    io::instance inst;
    inst.name = "bsc";
    inst.joint = joint_dist::bsc(theta);
    *out = new pu_instance{std::move(inst)};
  });
}

pu_status pu_instance_erasure(double theta, pu_instance** out, char** error) {
  return guarded(error, [&] {
    if (!out) throw validation_error("null argument");
    io::instance inst;
    inst.name = "erasure";
    inst.joint = joint_dist::erasure(theta);
    *out = new pu_instance{std::move(inst)};
  });
}

pu_status pu_instance_to_json(const pu_instance* inst, char** json_out, char** error) {
  return guarded(error, [&] {
    if (!inst || !json_out) throw validation_error("null argument");
    *json_out = dup_string(io::instance_to_json(inst->inst));
  });
}

pu_status pu_info(const pu_instance* inst, const char* base, char** json_out,
                  char** error) {
  return guarded(error, [&] {
    if (!inst || !json_out) throw validation_error("null argument");
    *json_out = dup_string(io::info_json(inst->inst, io::base_from_name(base ? base : "bits")));
  });
}

pu_status pu_bounds(const pu_instance* inst, double eps, const char* base,
                    int with_g0, char** json_out, char** error) {
  return guarded(error, [&] {
    if (!inst || !json_out) throw validation_error("null argument");
    *json_out = dup_string(io::bounds_json(inst->inst, eps,
                                           io::base_from_name(base ? base : "bits"),
                                           with_g0 != 0));
  });
}

pu_status pu_mechanism(const pu_instance* inst, const char* kind, double eps,
                       const char* base, long n_draws, long max_index, uint64_t seed,
                       int has_seed, char** json_out, char** error) {
  return guarded(error, [&] {
    if (!inst || !kind || !json_out) throw validation_error("null argument");
    std::optional<std::uint64_t> s;
    if (has_seed) s = seed;
    *json_out = dup_string(io::mechanism_json(require_joint(inst), kind, eps,
                                              io::base_from_name(base ? base : "bits"),
                                              n_draws, max_index, s));
  });
}

pu_status pu_lp(const pu_instance* inst, const char* which, double eps,
                const char* base, char** json_out, char** error) {
  return guarded(error, [&] {
    if (!inst || !which || !json_out) throw validation_error("null argument");
    *json_out = dup_string(io::lp_json(require_joint(inst), which, eps,
                                       io::base_from_name(base ? base : "bits")));
  });
}

pu_status pu_oracle(const pu_instance* inst, const char* criterion, double eps,
                    double resolution, long max_card, const char* base,
                    char** json_out, char** error) {
  return guarded(error, [&] {
    if (!inst || !criterion || !json_out) throw validation_error("null argument");
    *json_out = dup_string(io::oracle_json(require_joint(inst), criterion, eps,
                                           resolution, max_card,
                                           io::base_from_name(base ? base : "bits")));
  });
}

}  // extern "C"
