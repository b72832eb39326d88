#ifndef NILPO_H
#define NILPO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every FFI entry point.
 */
typedef enum {
  /**
   * Success.
   */
  NILPO_STATUS_OK = 0,
  /**
   * A pointer argument was null or a parameter was out of range.
   */
  NILPO_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The input could not be parsed (bad UTF-8, bad JSON, bad schema).
   */
  NILPO_STATUS_PARSE_ERROR = 2,
  /**
   * The structure constants do not define a nilpotent Lie algebra.
   */
  NILPO_STATUS_INVALID_ALGEBRA = 3,
  /**
   * A computation failed or panicked; see the last error message.
   */
  NILPO_STATUS_COMPUTE_ERROR = 4,
} NilpoStatus;

/**
 * Opaque handle to a validated Lie algebra.
 */
typedef struct NilpoAlgebra NilpoAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns a copy of the last error message on this thread, or null if
 * none. Free with `nilpo_string_free`.
 */
char *nilpo_last_error_message(void);

/**
 * Frees a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must have been returned by a nilpo function and not freed before.
 */
void nilpo_string_free(char *s);

/**
 * Frees an algebra handle. Null is accepted.
 *
 * # Safety
 * `h` must have been returned by a nilpo constructor and not freed
 * before.
 */
void nilpo_algebra_free(NilpoAlgebra *h);

/**
 * Parses an algebra from JSON in the CLI file schema and validates it.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid
 * pointer.
 */
NilpoStatus nilpo_algebra_from_json(const char *json, NilpoAlgebra **out);

/**
 * Generates a built-in algebra. Kinds: `"abelian"` (a = dimension),
 * `"heisenberg"` (a = dimension), `"free"` (a = generators, b = class),
 * `"example6"`, `"nilradical-A"`/`-B`/`-C`/`-D` (a = rank).
 *
 * # Safety
 * `kind` must be a NUL-terminated string; `out` must be valid.
 */
NilpoStatus nilpo_algebra_generate(const char *kind, uint64_t a, uint64_t b, NilpoAlgebra **out);

/**
 * Serializes the algebra back to the canonical JSON file format.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_algebra_to_json(const NilpoAlgebra *h, char **out);

/**
 * Dimension of the algebra; zero for a null handle.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
uintptr_t nilpo_algebra_dim(const NilpoAlgebra *h);

/**
 * Nilpotency index from the lower central series.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_nilpotency_index(const NilpoAlgebra *h, uintptr_t *out);

/**
 * The i-th Betti number.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_betti(const NilpoAlgebra *h, uintptr_t degree, uintptr_t *out);

/**
 * Dimension of the limit intermediate cohomology group `E_inf^{p,q}`;
 * `q` may be negative.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_e_infty_dim(const NilpoAlgebra *h, uintptr_t p, int64_t q, uintptr_t *out);

/**
 * True iff `E_inf^{0,2}` vanishes (the symplectic obstruction).
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_obstruction_vanishes(const NilpoAlgebra *h, bool *out);

/**
 * Runs the full analysis and returns the report as JSON (the CLI's
 * `--json` schema). Set `e_table` for the full limit table.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
NilpoStatus nilpo_analyze_json(const NilpoAlgebra *h,
                               uint64_t seed,
                               uintptr_t samples,
                               bool e_table,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILPO_H */
