#ifndef CQG_H
#define CQG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum CqgStatus {
  /**
   * Success; for `cqg_check`, all checks passed.
   */
  CqgStatus_Ok = 0,
  /**
   * A mathematical check failed (validation, positivity, ...).
   */
  CqgStatus_CheckFailed = 1,
  /**
   * Input could not be parsed.
   */
  CqgStatus_ParseError = 2,
  /**
   * A computation reported an error (singular solve, no Haar state, ...).
   */
  CqgStatus_MathError = 3,
  /**
   * A required pointer argument was null.
   */
  CqgStatus_NullArgument = 4,
  /**
   * The caller-provided buffer is too small.
   */
  CqgStatus_BufferTooSmall = 5,
} CqgStatus;

/**
 * Opaque handle to a loaded quantum group.
 */
typedef struct CqgQuantumGroup CqgQuantumGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message into `buf` (NUL-terminated, truncated to
 * `cap` bytes). Returns the full message length in bytes.
 */
uintptr_t cqg_last_error(char *buf, uintptr_t cap);

/**
 * Parse a quantum group from JSON text. Returns null on error (see
 * `cqg_last_error`).
 */
struct CqgQuantumGroup *cqg_load_json(const char *text);

/**
 * Build a bundled example: `kind` is "function-algebra" or "group-algebra",
 * `group` is "c1".."c12", "s3", or "d4". Returns null on error.
 */
struct CqgQuantumGroup *cqg_generate(const char *kind, const char *group);

/**
 * Release a handle. Null is ignored.
 */
void cqg_free(struct CqgQuantumGroup *handle);

/**
 * Dimension of the underlying algebra, or 0 for a null handle.
 */
uintptr_t cqg_dimension(const struct CqgQuantumGroup *handle);

/**
 * Validate the algebra and Hopf axioms at tolerance `tol`.
 */
enum CqgStatus cqg_check(const struct CqgQuantumGroup *handle, double tol);

/**
 * Solve for the Haar state; writes `dim` interleaved (re, im) pairs into
 * `out` (length `2 * dim`).
 */
enum CqgStatus cqg_haar(const struct CqgQuantumGroup *handle,
                        double tol,
                        double *out,
                        uintptr_t out_len);

/**
 * Pentagon residual of the multiplicative unitary V on the Haar GNS space.
 */
enum CqgStatus cqg_pentagon_residual(const struct CqgQuantumGroup *handle, double tol, double *out);

/**
 * Number of Wedderburn blocks (the rank of K0).
 */
enum CqgStatus cqg_k0_rank(const struct CqgQuantumGroup *handle, double tol, uintptr_t *out);

/**
 * The box-product ring table on K0 generator classes: writes k*k*k entries
 * into `out`, laid out as out[(i*k + j)*k + l] = coefficient of generator l
 * in (class i) box (class j). `k` must equal the value from `cqg_k0_rank`.
 */
enum CqgStatus cqg_k0_table(const struct CqgQuantumGroup *handle,
                            double tol,
                            int64_t *out,
                            uintptr_t out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CQG_H */
