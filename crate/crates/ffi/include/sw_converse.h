#ifndef SW_CONVERSE_H
#define SW_CONVERSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwcStatus {
  SwcStatus_Ok = 0,
  SwcStatus_NullPointer = 1,
  SwcStatus_NegativeMass = 2,
  SwcStatus_MassSumMismatch = 3,
  SwcStatus_ZeroProbability = 4,
  SwcStatus_DimensionMismatch = 5,
  SwcStatus_ShapeMismatch = 6,
  SwcStatus_NumericalBreakdown = 7,
  SwcStatus_InstanceTooLarge = 8,
  SwcStatus_EnumerationTooLarge = 9,
  SwcStatus_InfeasibleInput = 10,
  SwcStatus_InvalidArgument = 11,
  SwcStatus_ParseError = 12,
  SwcStatus_UnknownBound = 13,
  SwcStatus_Panic = 14,
} SwcStatus;

/**
 * Opaque joint pmf.
 */
typedef struct SwcJointPmf SwcJointPmf;

/**
 * A bound value. `t` is the optimizing threshold when the bound has one,
 * NaN otherwise.
 */
typedef struct SwcBound {
  double raw;
  double clamped;
  double t;
} SwcBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `<status name>: <detail>` for the last failing call on this thread; empty
 * after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *swc_last_error(void);

/**
 * Build a joint pmf from `n1 * n2` row-major masses.
 *
 * # Safety
 * `mass` must point to `n1 * n2` readable doubles and `out` must be writable.
 */
enum SwcStatus swc_joint_new(uintptr_t n1,
                             uintptr_t n2,
                             const double *mass,
                             struct SwcJointPmf **out);

/**
 * Parse a `pmf2` text description.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SwcStatus swc_joint_parse(const char *text, struct SwcJointPmf **out);

/**
 * Release a handle; null is ignored.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void swc_joint_free(struct SwcJointPmf *h);

/**
 * Alphabet sizes of a joint pmf.
 *
 * # Safety
 * `h` must be a live handle; `n1`, `n2` writable.
 */
enum SwcStatus swc_joint_dims(const struct SwcJointPmf *h, uintptr_t *n1, uintptr_t *n2);

/**
 * Evaluate a named Slepian-Wolf bound (`meta-sw`, `meta-je`, `meta-sid12`,
 * `meta-sid21`, `max-converse`, `mk`, `mk-improved`, `sid-classic12`,
 * `sid-classic21`, `sid-improved12`, `sid-improved21`, `meta-sw-eta-family`).
 *
 * # Safety
 * `h` must be a live handle, `name` NUL-terminated, `out` writable.
 */
enum SwcStatus swc_bound(const struct SwcJointPmf *h,
                         uintptr_t m1,
                         uintptr_t m2,
                         const char *name,
                         struct SwcBound *out);

/**
 * Exact optimal error probability by exhaustive search; `cap` bounds the
 * number of encoder pairs tried.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum SwcStatus swc_exact_opt_sw(const struct SwcJointPmf *h,
                                uintptr_t m1,
                                uintptr_t m2,
                                uint64_t cap,
                                double *out);

/**
 * Doubly symmetric binary source bound at blocklength `n`, crossover `p`
 * and rates in bits; `name` is `dsbs-converse`, `dsbs-je` or `dsbs-mk`.
 *
 * # Safety
 * `name` must be NUL-terminated and `out` writable.
 */
enum SwcStatus swc_dsbs_bound(uintptr_t n,
                              double p,
                              double r1,
                              double r2,
                              const char *name,
                              struct SwcBound *out);

/**
 * Static description of a status code.
 */
const char *swc_status_name(enum SwcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SW_CONVERSE_H */
