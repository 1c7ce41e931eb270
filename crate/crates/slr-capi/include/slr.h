#ifndef SLR_CAPI_H
#define SLR_CAPI_H

/* Generated by cbindgen from the slr-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API function.
 */
typedef enum {
  /**
   * Success.
   */
  SLR_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SLR_NULL_ARGUMENT = 1,
  /**
   * An argument failed to parse or validate.
   */
  SLR_INVALID_ARGUMENT = 2,
  /**
   * A curve spec violated an invariant.
   */
  SLR_INVALID_SPEC = 3,
  /**
   * No catalog entry with the requested name.
   */
  SLR_NOT_FOUND = 4,
  /**
   * The computation itself reported an error.
   */
  SLR_COMPUTE_ERROR = 5,
} SlrStatus;

/**
 * Opaque curve handle.
 */
typedef struct SlrCurve SlrCurve;

/**
 * Description of the most recent error on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *slr_last_error_message(void);

/**
 * Builds a handle for a built-in curve (`hilbert`, `peano9`,
 * `serpentine9`).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
SlrStatus slr_curve_from_catalog(const char *name, SlrCurve **out);

/**
 * Parses a curve-spec JSON document (the same format the CLI reads).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
SlrStatus slr_curve_from_json(const char *json, SlrCurve **out);

/**
 * Releases a curve handle. Null is ignored.
 *
 * # Safety
 * `curve` must be null or a pointer returned by a `slr_curve_from_*`
 * function that has not been freed yet.
 */
void slr_curve_free(SlrCurve *curve);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned through an out-parameter of this
 * library that has not been freed yet.
 */
void slr_string_free(char *s);

/**
 * Two-sided square-to-linear ratio bounds as a JSON report.
 *
 * `target_gap` is a rational string like `"1/10"`.
 *
 * # Safety
 * `curve` must be a live handle; `target_gap` a valid NUL-terminated
 * string; `out_json` a valid pointer.
 */
SlrStatus slr_bounds_json(const SlrCurve *curve,
                          const char *target_gap,
                          uint32_t max_depth,
                          uint64_t budget,
                          char **out_json);

/**
 * Best chain certificate at the given refinement depth as certificate
 * JSON.
 *
 * # Safety
 * `curve` must be a live handle and `out_json` a valid pointer.
 */
SlrStatus slr_best_chain_json(const SlrCurve *curve,
                              uint32_t depth,
                              uint32_t max_nodes,
                              char **out_json);

/**
 * Runs every built-in quadratic-form case; the JSON array reports each
 * case's derived form, computed minimum and pass flag. `all_pass` receives
 * 1 when every case passed.
 *
 * # Safety
 * `out_json` and `all_pass` must be valid pointers.
 */
SlrStatus slr_verify_cases_json(char **out_json, int32_t *all_pass);

/**
 * Searches for the lattice ordering of an `rows x cols` grid minimizing
 * the discrete ratio; returns the CLI's lattice JSON report.
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
SlrStatus slr_lattice_optimal_json(uint32_t rows, uint32_t cols, uint64_t budget, char **out_json);

#endif  /* SLR_CAPI_H */
