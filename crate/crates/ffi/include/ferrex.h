#ifndef FERREX_H
#define FERREX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every function.
 */
typedef enum FerrexStatus {
  FerrexStatus_Ok = 0,
  FerrexStatus_NullPointer = 1,
  FerrexStatus_InvalidArgument = 2,
  FerrexStatus_ParseError = 3,
  FerrexStatus_BufferTooSmall = 4,
} FerrexStatus;

/**
 * Opaque diagram handle.
 */
typedef struct FerrexStepFn FerrexStepFn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a step function from its JSON wire format into a new handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum FerrexStatus ferrex_stepfn_from_json(const char *json, struct FerrexStepFn **out);

/**
 * Releases a handle created by [`ferrex_stepfn_from_json`]. NULL is a no-op.
 *
 * # Safety
 * `f` must be NULL or a pointer returned by this library, not yet freed.
 */
void ferrex_stepfn_free(struct FerrexStepFn *f);

/**
 * `E|X_f - Y_f|^k` as a `"p/q"` string.
 *
 * # Safety
 * `f` must be a live handle; `buf` must point to `len` writable bytes.
 */
enum FerrexStatus ferrex_stepfn_moment(const struct FerrexStepFn *f,
                                       uint32_t k,
                                       char *buf,
                                       size_t len);

/**
 * `E|X_f - Y_f|^k` as a double.
 *
 * # Safety
 * `f` must be a live handle; `out` must be a valid pointer.
 */
enum FerrexStatus ferrex_stepfn_moment_f64(const struct FerrexStepFn *f, uint32_t k, double *out);

/**
 * `P(|X_f - Y_f| > delta)` (strict != 0) or `>= delta`, as `"p/q"`.
 * `delta` is a rational string such as `"3/5"`.
 *
 * # Safety
 * `f` must be a live handle; `delta` a valid string; `buf` writable.
 */
enum FerrexStatus ferrex_stepfn_tail(const struct FerrexStepFn *f,
                                     const char *delta,
                                     int strict,
                                     char *buf,
                                     size_t len);

/**
 * Conjugate partition: reads `n` parts, writes `n` conjugate parts.
 *
 * # Safety
 * `parts` and `out` must each point to `n` readable/writable `size_t`s.
 */
enum FerrexStatus ferrex_conjugate(const size_t *parts, size_t n, size_t *out);

/**
 * Gale-Ryser test; `*out` is 1 when `(a, b)` is bigraphic, else 0.
 *
 * # Safety
 * `a` and `b` must point to `n` readable `size_t`s; `out` must be valid.
 */
enum FerrexStatus ferrex_is_bigraphic(const size_t *a, const size_t *b, size_t n, int *out);

/**
 * The moment bound from the proven tail envelope, `(2 - 2^-k)/(1 + k)`.
 *
 * # Safety
 * `buf` must point to `len` writable bytes.
 */
enum FerrexStatus ferrex_eps_moment_bound(uint32_t k, char *buf, size_t len);

/**
 * The sharper moment bound for `k >= 3`.
 *
 * # Safety
 * `buf` must point to `len` writable bytes.
 */
enum FerrexStatus ferrex_new_bound(uint32_t k, char *buf, size_t len);

/**
 * Independent-pair tail supremum `2 delta (1 - delta)` for rational
 * `delta` in `(1/2, 1]`.
 *
 * # Safety
 * `delta` must be a valid string; `buf` must point to `len` writable bytes.
 */
enum FerrexStatus ferrex_independent_tail_curve(const char *delta, char *buf, size_t len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FERREX_H */
