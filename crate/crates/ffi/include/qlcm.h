#ifndef QLCM_H
#define QLCM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define QLCM_DEPTH_FACTORED 0

#define QLCM_DEPTH_POLYNOMIAL 1

/*
 Result code of every fallible call.
 */
typedef enum QlcmStatus {
  QLCM_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  QLCM_STATUS_NULL_POINTER = 1,
  /*
   Zero where a positive value is needed, an index out of range, or a
   value too large for the requested representation.
   */
  QLCM_STATUS_INVALID_ARGUMENT = 2,
  QLCM_STATUS_NOT_PRIME = 3,
  QLCM_STATUS_NON_EXACT_DIVISION = 4,
  /*
   Division by, or lcm involving, the zero polynomial.
   */
  QLCM_STATUS_ZERO_POLYNOMIAL = 5,
  /*
   A requested carry level has no individual witness.
   */
  QLCM_STATUS_HYPOTHESIS_VIOLATED = 6,
  /*
   No common witness exists although every level has one.
   */
  QLCM_STATUS_NOT_FOUND = 7,
  QLCM_STATUS_PARSE = 8,
  QLCM_STATUS_INVALID_UTF8 = 9,
  QLCM_STATUS_INTERNAL = 10,
  /*
   The library panicked; the message holds the panic payload.
   */
  QLCM_STATUS_PANIC = 11,
} QlcmStatus;

/*
 Opaque product of cyclotomic polynomials `Phi_d^e`.
 */
typedef struct QlcmFactorization QlcmFactorization;

/*
 Opaque integer polynomial in `q`.
 */
typedef struct QlcmPoly QlcmPoly;

/*
 Opaque outcome of checking the lcm identity for one `n`.
 */
typedef struct QlcmReport QlcmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *qlcm_version(void);

/*
 Message for the last failed call on this thread, or null if none failed
 yet. Valid until the next failing call on the same thread.
 */
const char *qlcm_last_error(void);

void qlcm_string_free(char *s);

/*
 Parses text such as `1 + q + 2*q^2 - q^5`.
 */
enum QlcmStatus qlcm_poly_parse(const char *text, struct QlcmPoly **out_poly);

/*
 Builds `coeffs[0] + coeffs[1] q + ...`; `len == 0` gives the zero polynomial.
 */
enum QlcmStatus qlcm_poly_from_coeffs(const int64_t *coeffs,
                                      uintptr_t len,
                                      struct QlcmPoly **out_poly);

void qlcm_poly_free(struct QlcmPoly *p);

/*
 Degree, or -1 for the zero polynomial.
 */
enum QlcmStatus qlcm_poly_degree(const struct QlcmPoly *p, int64_t *out_degree);

/*
 Coefficient of `q^i`; zero past the degree. Fails with
 `QLCM_STATUS_INVALID_ARGUMENT` if it does not fit in 64 bits.
 */
enum QlcmStatus qlcm_poly_coeff(const struct QlcmPoly *p, uintptr_t i, int64_t *out_coeff);

enum QlcmStatus qlcm_poly_to_string(const struct QlcmPoly *p, char **out_text);

enum QlcmStatus qlcm_poly_equal(const struct QlcmPoly *a,
                                const struct QlcmPoly *b,
                                bool *out_equal);

enum QlcmStatus qlcm_poly_mul(const struct QlcmPoly *a,
                              const struct QlcmPoly *b,
                              struct QlcmPoly **out_poly);

/*
 `a / b`, failing with `QLCM_STATUS_NON_EXACT_DIVISION` on a nonzero remainder.
 */
enum QlcmStatus qlcm_poly_exact_div(const struct QlcmPoly *a,
                                    const struct QlcmPoly *b,
                                    struct QlcmPoly **out_poly);

/*
 Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
 */
enum QlcmStatus qlcm_poly_gcd(const struct QlcmPoly *a,
                              const struct QlcmPoly *b,
                              struct QlcmPoly **out_poly);

/*
 Primitive lcm with positive leading coefficient.
 */
enum QlcmStatus qlcm_poly_lcm(const struct QlcmPoly *a,
                              const struct QlcmPoly *b,
                              struct QlcmPoly **out_poly);

/*
 The cyclotomic polynomial `Phi_d`, `d >= 1`.
 */
enum QlcmStatus qlcm_cyclotomic(uint64_t d, struct QlcmPoly **out_poly);

/*
 The expanded Gaussian binomial `[n choose k]_q`.
 */
enum QlcmStatus qlcm_q_binomial(uint64_t n, uint64_t k, struct QlcmPoly **out_poly);

enum QlcmStatus qlcm_q_binomial_factorization(uint64_t n,
                                              uint64_t k,
                                              struct QlcmFactorization **out_f);

/*
 `lcm` of the row `[n choose k]_q`, `0 <= k <= n`, in factored form.
 */
enum QlcmStatus qlcm_lcm_factorization(uint64_t n, struct QlcmFactorization **out_f);

/*
 `lcm([1]_q, ..., [n+1]_q) / [n+1]_q` in factored form.
 */
enum QlcmStatus qlcm_rhs_factorization(uint64_t n, struct QlcmFactorization **out_f);

void qlcm_factorization_free(struct QlcmFactorization *f);

/*
 Number of distinct cyclotomic factors.
 */
enum QlcmStatus qlcm_factorization_len(const struct QlcmFactorization *f, uintptr_t *out_len);

/*
 The `i`-th factor `Phi_d^e` in increasing order of `d`.
 */
enum QlcmStatus qlcm_factorization_term(const struct QlcmFactorization *f,
                                        uintptr_t i,
                                        uint64_t *out_d,
                                        uint32_t *out_e);

enum QlcmStatus qlcm_factorization_equal(const struct QlcmFactorization *a,
                                         const struct QlcmFactorization *b,
                                         bool *out_equal);

/*
 `Phi_3 * Phi_4^2`, or `1` for the empty product.
 */
enum QlcmStatus qlcm_factorization_to_string(const struct QlcmFactorization *f, char **out_text);

/*
 `[{"d":3,"e":1},{"d":4,"e":2}]`
 */
enum QlcmStatus qlcm_factorization_to_json(const struct QlcmFactorization *f, char **out_json);

/*
 Multiplies the factors out.
 */
enum QlcmStatus qlcm_factorization_expand(const struct QlcmFactorization *f,
                                          struct QlcmPoly **out_poly);

/*
 Value at `q = 1` as a decimal string.
 */
enum QlcmStatus qlcm_factorization_value_at_one(const struct QlcmFactorization *f, char **out_text);

/*
 Checks the lcm identity for one `n >= 1` at `QLCM_DEPTH_FACTORED` or
 `QLCM_DEPTH_POLYNOMIAL`. A failed identity still returns `QLCM_STATUS_OK`;
 inspect it with `qlcm_report_passed`.
 */
enum QlcmStatus qlcm_verify(uint64_t n, uint32_t depth, struct QlcmReport **out_report);

void qlcm_report_free(struct QlcmReport *r);

enum QlcmStatus qlcm_report_passed(const struct QlcmReport *r, bool *out_passed);

/*
 Copy of the left side's factorization.
 */
enum QlcmStatus qlcm_report_lhs(const struct QlcmReport *r, struct QlcmFactorization **out_f);

/*
 Copy of the right side's factorization.
 */
enum QlcmStatus qlcm_report_rhs(const struct QlcmReport *r, struct QlcmFactorization **out_f);

/*
 The same line `qlcm verify` prints in text mode.
 */
enum QlcmStatus qlcm_report_to_text(const struct QlcmReport *r, char **out_text);

/*
 The same record `qlcm verify --format json` prints.
 */
enum QlcmStatus qlcm_report_to_json(const struct QlcmReport *r, char **out_json);

/*
 `Phi_d(1)` for `d >= 2`: `p` when `d` is a power of the prime `p`, else 1.
 */
enum QlcmStatus qlcm_phi_at_one(uint64_t d, uint64_t *out_value);

/*
 Largest number of base-`p` carries over `k + (n-k)`, `0 <= k <= n`.
 */
enum QlcmStatus qlcm_carry_count_lhs(uint64_t n, uint64_t p, uint64_t *out_count);

/*
 The same count from the base-`p` digits of `n + 1`.
 */
enum QlcmStatus qlcm_carry_count_rhs(uint64_t n, uint64_t p, uint64_t *out_count);

/*
 A `k` attaining the largest carry count; requires `n >= p`.
 */
enum QlcmStatus qlcm_witness_all_carries(uint64_t n, uint64_t p, uint64_t *out_k);

/*
 A single `k` carrying at every level in `levels`. `out_closed_form` tells
 whether it came from the digit formula rather than a search.
 */
enum QlcmStatus qlcm_common_witness(uint64_t n,
                                    uint64_t p,
                                    const uint32_t *levels,
                                    uintptr_t len,
                                    uint64_t *out_k,
                                    bool *out_closed_form);

/*
 Whether `lcm_k C(n, k) = lcm(1..n+1) / (n+1)`.
 */
enum QlcmStatus qlcm_classical_check(uint64_t n, bool *out_holds);

/*
 Whether `2^(n-1) <= lcm(1..n) <= 3^n`.
 */
enum QlcmStatus qlcm_bounds_check(uint64_t n, bool *out_holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLCM_H */
