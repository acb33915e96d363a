#ifndef STRATSUM_H
#define STRATSUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StratsumStatus {
  STRATSUM_STATUS_OK = 0,
  STRATSUM_STATUS_NULL_POINTER = 1,
  STRATSUM_STATUS_INVALID_UTF8 = 2,
  STRATSUM_STATUS_PARSE = 3,
  STRATSUM_STATUS_INVALID_ARGUMENT = 4,
  STRATSUM_STATUS_HYPOTHESIS = 5,
  STRATSUM_STATUS_TOO_LARGE = 6,
  STRATSUM_STATUS_INTERNAL = 7,
} StratsumStatus;

/**
 * Parsed homogeneous form.
 */
typedef struct StratsumPoly StratsumPoly;

/**
 * Estimated strata over `F_p^n`.
 */
typedef struct StratsumStrata StratsumStrata;

typedef struct StratsumLiftCount {
  uint64_t n1;
  uint64_t n2_enumerated;
  /**
   * Valid only when `formula_valid` is nonzero.
   */
  uint64_t n2_formula;
  int32_t formula_valid;
  int32_t agree;
} StratsumLiftCount;

typedef struct StratsumSum {
  double re;
  double im;
  double abs;
  /**
   * 1 when the reduction and brute-force routes agree exactly.
   */
  int32_t equal_exact;
} StratsumSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *stratsum_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *stratsum_version(void);

/**
 * Parses `text` in variables `x1..x{nvars}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum StratsumStatus stratsum_poly_parse(const char *text, size_t nvars, struct StratsumPoly **out);

/**
 * # Safety
 * `poly` must come from [`stratsum_poly_parse`] and not be used afterwards.
 */
void stratsum_poly_free(struct StratsumPoly *poly);

/**
 * Total degree, or 0 for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
uint32_t stratsum_poly_degree(const struct StratsumPoly *poly);

/**
 * `#V(F_p)` and `#V(Z/p^2Z)` by enumeration and by the lift formula.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum StratsumStatus stratsum_count_mod_p2(const struct StratsumPoly *poly,
                                          uint64_t p,
                                          struct StratsumLiftCount *out);

/**
 * `S(h; p^2)` by reduction, cross-checked exactly against brute force.
 *
 * # Safety
 * `poly` must be a live handle, `h` must point to `h_len` values and `out` be valid.
 */
enum StratsumStatus stratsum_sum_mod_p2(const struct StratsumPoly *poly,
                                        const uint64_t *h,
                                        size_t h_len,
                                        uint64_t p,
                                        struct StratsumSum *out);

/**
 * Builds the estimated strata of `F_p^n` using extensions up to degree `kmax`.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum StratsumStatus stratsum_strata_build(const struct StratsumPoly *poly,
                                          uint64_t p,
                                          uint32_t kmax,
                                          struct StratsumStrata **out);

/**
 * `#G_{F,j}(F_p)`.
 *
 * # Safety
 * `strata` must be a live handle and `out` a valid pointer.
 */
enum StratsumStatus stratsum_strata_size(const struct StratsumStrata *strata,
                                         size_t j,
                                         uint64_t *out);

/**
 * Estimated `dim W_{F,h}` for `h` in `F_p^n`.
 *
 * # Safety
 * `strata` must be a live handle, `h` must point to `h_len` values and `out` be valid.
 */
enum StratsumStatus stratsum_strata_dim(const struct StratsumStrata *strata,
                                        const uint64_t *h,
                                        size_t h_len,
                                        size_t *out);

/**
 * # Safety
 * `strata` must come from [`stratsum_strata_build`] and not be used afterwards.
 */
void stratsum_strata_free(struct StratsumStrata *strata);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRATSUM_H */
