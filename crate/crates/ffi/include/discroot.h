#ifndef DISCROOT_H
#define DISCROOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum DrStatus {
  DR_STATUS_OK = 0,
  DR_STATUS_NULL_POINTER = 1,
  DR_STATUS_INVALID_ARGUMENT = 2,
  DR_STATUS_SINGULAR_CURVE = 3,
  DR_STATUS_PARSE_ERROR = 4,
  DR_STATUS_UNSUPPORTED_LEVEL = 5,
  DR_STATUS_COMPUTATION_FAILED = 6,
  DR_STATUS_PANIC = 7,
} DrStatus;

/**
 * A curve over a finite field.
 */
typedef struct DrCurve DrCurve;

/**
 * The n-torsion of a curve over the field it is defined over.
 */
typedef struct DrTorsion DrTorsion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the curve `[a1, a2, a3, a4, a6]` over `F_{p^ext_degree}`.
 *
 * # Safety
 * `a` must point to five integers and `out` must be writable.
 */
enum DrStatus dr_curve_new(uint64_t p, uint32_t ext_degree, const int64_t *a, struct DrCurve **out);

/**
 * Creates a curve from JSON such as `{"p":13,"a":[0,0,0,1,2]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum DrStatus dr_curve_from_json(const char *json, struct DrCurve **out);

/**
 * Releases a curve. Null is ignored.
 *
 * # Safety
 * `curve` must come from this library and not be used afterwards.
 */
void dr_curve_free(struct DrCurve *curve);

/**
 * The discriminant, printed as a field element.
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
enum DrStatus dr_curve_discriminant(const struct DrCurve *curve, char **out);

/**
 * Computes `E[n]` (n = 3 or 4) over the smallest field containing it.
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
enum DrStatus dr_torsion_new(const struct DrCurve *curve, uint32_t n, struct DrTorsion **out);

/**
 * Degree over the prime field of the field generated by the torsion points.
 *
 * # Safety
 * `torsion` must be a live handle and `out` writable.
 */
enum DrStatus dr_torsion_field_degree(const struct DrTorsion *torsion, uint32_t *out);

/**
 * Releases a torsion handle. Null is ignored.
 *
 * # Safety
 * `torsion` must come from this library and not be used afterwards.
 */
void dr_torsion_free(struct DrTorsion *torsion);

/**
 * The cube roots of the discriminant given by the 3-torsion, as JSON
 * `{"field_degree": k, "values": [...]}`.
 *
 * # Safety
 * `torsion` must be a live 3-torsion handle and `out` writable.
 */
enum DrStatus dr_w3_values(const struct DrTorsion *torsion, char **out);

/**
 * The fourth roots of the discriminant given by the 4-torsion, same JSON shape.
 *
 * # Safety
 * `torsion` must be a live 4-torsion handle and `out` writable.
 */
enum DrStatus dr_w4_values(const struct DrTorsion *torsion, char **out);

/**
 * Runs a suite. `config_json` may be null or a partial config object
 * (missing fields take defaults). The report is written as JSON lines to
 * `out_jsonl`, and the process-style exit code (0 pass, 1 failure) to
 * `out_exit_code`.
 *
 * # Safety
 * `suite` must be a NUL-terminated string, `config_json` null or one, and
 * both out pointers writable.
 */
enum DrStatus dr_run_suite(const char *suite,
                           const char *config_json,
                           char **out_jsonl,
                           int32_t *out_exit_code);

/**
 * Runs the Tate curve checks for `n` in {3, 4} at the given precision;
 * `out_passed` is set to 1 when all hold, else 0.
 *
 * # Safety
 * `out_passed` must be writable.
 */
enum DrStatus dr_tate_check(uint32_t n, int64_t precision, int32_t *out_passed);

/**
 * Checks the discriminant class along every rational isogeny of prime
 * degree `l` from the curve. `out_count` receives the number of isogenies
 * and `out_passed` 1 when the class is preserved along all of them.
 *
 * # Safety
 * `curve` must be a live handle and both out pointers writable.
 */
enum DrStatus dr_coates_check(const struct DrCurve *curve,
                              uint32_t l,
                              uint32_t *out_count,
                              int32_t *out_passed);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void dr_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *dr_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCROOT_H */
