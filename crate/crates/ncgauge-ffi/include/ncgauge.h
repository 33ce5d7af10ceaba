#ifndef NCGAUGE_H
#define NCGAUGE_H

/* Generated by cbindgen from the ncgauge-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum NcgStatus {
  NCG_STATUS_OK = 0,
  NCG_STATUS_NULL_POINTER = 1,
  NCG_STATUS_INVALID_UTF8 = 2,
  NCG_STATUS_CONFIG = 3,
  NCG_STATUS_PARSE = 4,
  NCG_STATUS_SOLVER = 5,
  NCG_STATUS_DEGREE = 6,
  NCG_STATUS_INCOMPATIBLE = 7,
  NCG_STATUS_PANIC = 8,
} NcgStatus;

/**
 * A solved or loaded morphism.
 */
typedef struct NcgMorphism NcgMorphism;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *ncg_last_error(void);

/**
 * Solve the recursion. `theta` and `theta_prime` take `0`, `sym`,
 * `sym:PREFIX` or rows `a,b;c,d`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum NcgStatus ncg_solve(uintptr_t n,
                         const char *theta,
                         const char *theta_prime,
                         uintptr_t order,
                         uint32_t degree_bound,
                         struct NcgMorphism **out);

/**
 * Load a morphism from the JSON file format.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum NcgStatus ncg_morphism_from_json(const char *json, struct NcgMorphism **out);

/**
 * Serialize to the JSON file format.
 *
 * # Safety
 * `f` must come from this library; `out` must be writable.
 */
enum NcgStatus ncg_morphism_to_json(const struct NcgMorphism *f, char **out);

/**
 * Number of solved orders, 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or come from this library.
 */
uintptr_t ncg_morphism_order(const struct NcgMorphism *f);

/**
 * Check the component equations at every order on the monomial basis of
 * x-degree `≤ basis_degree` and the MC residual. `pass` receives 1 or 0.
 *
 * # Safety
 * `f` must come from this library; `pass` must be writable.
 */
enum NcgStatus ncg_verify(const struct NcgMorphism *f, uint32_t basis_degree, int32_t *pass);

/**
 * Evaluate `Â` and `λ̂`. `field` lists the components of A separated by
 * `;`. The result is a JSON object `{"A_hat": [...], "lambda_hat": ...}`
 * of rendered polynomials.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum NcgStatus ncg_apply(const struct NcgMorphism *f,
                         const char *field,
                         const char *lambda,
                         char **out);

/**
 * # Safety
 * `f` must be NULL or come from this library, and not be used afterwards.
 */
void ncg_morphism_free(struct NcgMorphism *f);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void ncg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NCGAUGE_H */
