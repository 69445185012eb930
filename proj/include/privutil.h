/* privutil C API: computes privacy-utility trade-off bounds, functional
 * representation mechanisms, linear-program approximations and brute-force
 * oracle values for finite discrete (X, Y).
 *
 * All functions return a pu_status; results are returned as JSON strings
 * allocated by the library (free with pu_string_free).  On failure *error
 * (when non-NULL) receives a diagnostic string, also owned by the caller.
 *
 * Budgets named `eps` are read in the requested base ("bits" or "nats")
 * when they are mutual-information budgets, and as dimensionless l1
 * distances for the per-letter criteria (lp and oracle wl/l/perfect).
 */
#ifndef PRIVUTIL_H
#define PRIVUTIL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define PU_API __declspec(dllexport)
#else
#define PU_API __attribute__((visibility("default")))
#endif

typedef struct pu_instance pu_instance;

typedef enum pu_status {
  PU_OK = 0,
  PU_ERR_VALIDATION = 2, /* bad input; message names the offending row/field */
  PU_ERR_INFEASIBLE = 3, /* no feasible solution, or a refused search */
  PU_ERR_INTERNAL = 4    /* internal invariant violation */
} pu_status;

PU_API const char* pu_version(void);

PU_API void pu_string_free(char* s);
PU_API void pu_instance_free(pu_instance* inst);

/* Instance construction: JSON ({"matrix": [[...]]} or {"tensor": [[[...]]]})
 * or CSV (header row of Y labels, one row per X symbol). */
PU_API pu_status pu_instance_from_json(const char* text, pu_instance** out,
                                       char** error);
PU_API pu_status pu_instance_from_csv(const char* text, pu_instance** out,
                                      char** error);
PU_API pu_status pu_instance_bsc(double theta, pu_instance** out, char** error);
PU_API pu_status pu_instance_erasure(double theta, pu_instance** out, char** error);
PU_API pu_status pu_instance_to_json(const pu_instance* inst, char** json_out,
                                     char** error);

/* Entropy suite and shape information. */
PU_API pu_status pu_info(const pu_instance* inst, const char* base, char** json_out,
                         char** error);

/* Closed-form bound report at budget eps.  with_g0 != 0 computes the
 * perfect-privacy value for the L3 bound when the geometry admits it. */
PU_API pu_status pu_bounds(const pu_instance* inst, double eps, const char* base,
                           int with_g0, char** json_out, char** error);

/* kind: "frl" | "efrl" | "sfrl" | "esfrl".  Sampling kinds require has_seed. */
PU_API pu_status pu_mechanism(const pu_instance* inst, const char* kind, double eps,
                              const char* base, long n_draws, long max_index,
                              uint64_t seed, int has_seed, char** json_out,
                              char** error);

/* which: "g0" | "gwl" | "gl"; eps is an l1 budget. */
PU_API pu_status pu_lp(const pu_instance* inst, const char* which, double eps,
                       const char* base, char** json_out, char** error);

/* criterion: "mi" | "wl" | "l" | "perfect" | "h".  max_card 0 = default. */
PU_API pu_status pu_oracle(const pu_instance* inst, const char* criterion,
                           double eps, double resolution, long max_card,
                           const char* base, char** json_out, char** error);

#ifdef __cplusplus
}
#endif

#endif /* PRIVUTIL_H */
