#ifndef VCSP_H
#define VCSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VcspMethod {
  VCSP_METHOD_AUTO = 0,
  VCSP_METHOD_FLOW = 1,
  VCSP_METHOD_NOC = 2,
  VCSP_METHOD_BRUTE = 3,
  VCSP_METHOD_MWIS = 4,
} VcspMethod;

typedef enum VcspStatus {
  VCSP_STATUS_OK = 0,
  VCSP_STATUS_NULL_POINTER = 1,
  VCSP_STATUS_INVALID_UTF8 = 2,
  VCSP_STATUS_PARSE = 3,
  /**
   * The requested operation does not apply to this instance.
   */
  VCSP_STATUS_INAPPLICABLE = 4,
  VCSP_STATUS_INVALID_ARGUMENT = 5,
  VCSP_STATUS_INTERNAL = 6,
} VcspStatus;

/**
 * A parsed VCSP or NOC instance.
 */
typedef struct VcspProblem VcspProblem;

/**
 * An optimal assignment with its cost.
 */
typedef struct VcspSolution VcspSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *vcsp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *vcsp_version(void);

/**
 * Parses instance text (VCSP or NOC format) into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum VcspStatus vcsp_parse(const char *text, struct VcspProblem **out);

/**
 * # Safety
 * `problem` must come from [`vcsp_parse`] and not be used afterwards.
 */
void vcsp_free(struct VcspProblem *problem);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `problem` must be null or a live handle.
 */
size_t vcsp_num_vars(const struct VcspProblem *problem);

/**
 * Whether a VCSP instance has the joint-winner property.
 *
 * # Safety
 * `problem` must be a live handle and `out` writable.
 */
enum VcspStatus vcsp_check_jwp(const struct VcspProblem *problem, bool *out);

/**
 * Canonical text of the instance.
 *
 * # Safety
 * `problem` must be null or a live handle. Returns null on failure.
 */
char *vcsp_serialize(const struct VcspProblem *problem);

/**
 * Solves the instance. `max_brute` caps brute-force enumeration; 0 keeps
 * the default.
 *
 * # Safety
 * `problem` must be a live handle and `out` writable.
 */
enum VcspStatus vcsp_solve(const struct VcspProblem *problem,
                           enum VcspMethod method,
                           uint64_t max_brute,
                           struct VcspSolution **out);

/**
 * # Safety
 * `solution` must come from [`vcsp_solve`] and not be used afterwards.
 */
void vcsp_solution_free(struct VcspSolution *solution);

/**
 * Length of the assignment.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t vcsp_solution_len(const struct VcspSolution *solution);

/**
 * Writes the value index of variable `var` (0-based) to `out`.
 *
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum VcspStatus vcsp_solution_value(const struct VcspSolution *solution, size_t var, size_t *out);

/**
 * Whether the optimum is infinite (no feasible assignment).
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
bool vcsp_solution_is_infinite(const struct VcspSolution *solution);

/**
 * Optimal cost as text: an integer, `p/q` or `inf`. Free with
 * [`vcsp_string_free`]; null for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
char *vcsp_solution_cost(const struct VcspSolution *solution);

/**
 * The method that produced the solution.
 *
 * # Safety
 * `solution` must be a live handle.
 */
enum VcspMethod vcsp_solution_method(const struct VcspSolution *solution);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void vcsp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCSP_H */
