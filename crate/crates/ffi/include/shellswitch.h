#ifndef SHELLSWITCH_H
#define SHELLSWITCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShsSign {
  SHS_SIGN_PLUS = 0,
  SHS_SIGN_MINUS = 1,
} ShsSign;

// Result code of every call.
typedef enum ShsStatus {
  SHS_STATUS_OK = 0,
  SHS_STATUS_NULL_POINTER = 1,
  // Malformed input: bad JSON, UTF-8, dimensions or indices.
  SHS_STATUS_INVALID_INPUT = 2,
  // Input parsed but describes an invalid spacetime or motion.
  SHS_STATUS_INVALID = 3,
  // The search has no solution.
  SHS_STATUS_INFEASIBLE = 4,
  // Zero-probability measurement outcome.
  SHS_STATUS_IMPOSSIBLE_OUTCOME = 5,
  SHS_STATUS_PANIC = 6,
} ShsStatus;

// Opaque handle to a solved switch configuration and its meeting event.
typedef struct ShsSolution ShsSolution;

// Opaque spacetime handle.
typedef struct ShsSpacetime ShsSpacetime;

typedef struct ShsStress {
  double shell_radius;
  double inner_mass;
  double outer_mass;
  // Jump of the extrinsic curvature, `(t, θ, φ)` components.
  double k_jump[3];
  double s[3];
  double rho;
  double p_tangential;
  double p_radial;
} ShsStress;

typedef struct ShsPeriod {
  double dt_global;
  double dtau;
} ShsPeriod;

typedef struct ShsSolutionData {
  double r1;
  double f;
  double r;
  double dt1;
  double dtau1;
  double dt2;
  double dtau2;
  double ratio;
  double proper_residual;
  double ratio_residual;
  double t_f;
  uint64_t p;
  uint64_t q;
} ShsSolutionData;

typedef struct ShsMeeting {
  double r_t;
  double tau_a;
  double t_a1;
  double t_a2;
  double tau_mismatch;
  bool excursion_ordered;
} ShsMeeting;

typedef struct ShsComplex {
  double re;
  double im;
} ShsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *shs_last_error(void);

// Builds a spacetime from `{"patches": [...]}` JSON. `margin` is the
// relative horizon margin for shells (negative selects the default).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ShsStatus shs_spacetime_from_json(const char *json,
                                       double margin,
                                       struct ShsSpacetime **out_handle);

// # Safety
// `handle` must come from [`shs_spacetime_from_json`] and not be freed twice.
void shs_spacetime_free(struct ShsSpacetime *handle);

// # Safety
// Pointers must be valid.
enum ShsStatus shs_spacetime_shell_count(const struct ShsSpacetime *handle, uintptr_t *count);

// Lapse factor of patch `index` (global time = lapse × local time).
//
// # Safety
// Pointers must be valid.
enum ShsStatus shs_spacetime_lapse(const struct ShsSpacetime *handle,
                                   uintptr_t index,
                                   double *lapse);

// # Safety
// Pointers must be valid.
enum ShsStatus shs_spacetime_stress(const struct ShsSpacetime *handle,
                                    uintptr_t shell_index,
                                    struct ShsStress *stress);

// Period of a particle dropped from rest at `release_radius`.
//
// # Safety
// Pointers must be valid.
enum ShsStatus shs_oscillation_period(const struct ShsSpacetime *handle,
                                      double release_radius,
                                      struct ShsPeriod *period);

// Global time for a radial light ray between `r_a` and `r_b`.
//
// # Safety
// Pointers must be valid.
enum ShsStatus shs_null_crossing_time(const struct ShsSpacetime *handle,
                                      double r_a,
                                      double r_b,
                                      double *dt);

// Solves the switch geometry for a search config (JSON) and locates the
// meeting radius. `jobs` sizes the worker pool (0: all cores).
//
// # Safety
// `config_json` must be a NUL-terminated string; `out_handle` writable.
enum ShsStatus shs_search_solve(const char *config_json,
                                uintptr_t jobs,
                                struct ShsSolution **out_handle);

// # Safety
// `handle` must come from [`shs_search_solve`] and not be freed twice.
void shs_solution_free(struct ShsSolution *handle);

// # Safety
// Pointers must be valid.
enum ShsStatus shs_solution_get(const struct ShsSolution *handle, struct ShsSolutionData *data);

// # Safety
// Pointers must be valid.
enum ShsStatus shs_solution_meeting(const struct ShsSolution *handle, struct ShsMeeting *meeting);

// Runs the switch on a solved configuration with `t_B` at the midpoint of
// `(t_A1, t_A2)`. `a` and `b` are row-major `dim × dim` matrices, `psi` has
// `dim` entries. Writes `2·dim` amplitudes to `state`: the `M1` block, then
// the `M2` block.
//
// # Safety
// All arrays must have the stated lengths.
enum ShsStatus shs_run_switch(const struct ShsSolution *handle,
                              uintptr_t dim,
                              const struct ShsComplex *a,
                              const struct ShsComplex *b,
                              const struct ShsComplex *psi,
                              struct ShsComplex *state);

// Projects the control of a joint state (`2·dim` amplitudes, as written by
// [`shs_run_switch`]) onto `|±⟩`. Writes the normalized target (`dim`
// entries) and the probability. `sign` is a [`ShsSign`] value. A zero-probability outcome returns
// `IMPOSSIBLE_OUTCOME` with probability 0 and the target left untouched.
//
// # Safety
// Arrays must have the stated lengths.
enum ShsStatus shs_measure_control_diagonal(uintptr_t dim,
                                            const struct ShsComplex *state,
                                            int32_t sign,
                                            struct ShsComplex *target,
                                            double *probability);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHELLSWITCH_H */
