#ifndef HARMAP_H
#define HARMAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HarmapStatus {
  HARMAP_STATUS_OK = 0,
  HARMAP_STATUS_NULL_POINTER = 1,
  HARMAP_STATUS_DOMAIN = 2,
  HARMAP_STATUS_NON_FINITE = 3,
  HARMAP_STATUS_INVALID_PARAMS = 4,
  HARMAP_STATUS_NORMALIZATION = 5,
  HARMAP_STATUS_INVALID_ARGUMENT = 6,
  HARMAP_STATUS_DEGENERATE = 7,
  HARMAP_STATUS_CONSISTENCY = 8,
  HARMAP_STATUS_SCHEMA = 9,
  HARMAP_STATUS_IO = 10,
  HARMAP_STATUS_UTF8 = 11,
  HARMAP_STATUS_PANIC = 12,
} HarmapStatus;

typedef enum HarmapProperty {
  HARMAP_PROPERTY_STARLIKE = 0,
  HARMAP_PROPERTY_CONVEX = 1,
} HarmapProperty;

/**
 * Opaque map handle.
 */
typedef struct HarmapMap HarmapMap;

typedef struct HarmapGrid {
  size_t radii;
  size_t angles;
  double r_max;
} HarmapGrid;

typedef struct HarmapParams {
  double gamma;
  double delta;
  double lambda;
} HarmapParams;

typedef struct HarmapVerdict {
  bool holds;
  double margin;
  double witness_re;
  double witness_im;
  size_t samples;
  bool near_degenerate;
} HarmapVerdict;

typedef struct HarmapRadius {
  double radius;
  double bracket_lo;
  double bracket_hi;
  double residual;
  size_t iterations;
} HarmapRadius;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *harmap_last_error_message(void);

/**
 * The grid used when callers have no preference.
 */
struct HarmapGrid harmap_grid_default(void);

/**
 * # Safety
 * `params` must point to a valid `HarmapParams`.
 */
enum HarmapStatus harmap_params_validate(const struct HarmapParams *params);

/**
 * Builds `s(z) + conj(t(z))` from `s_len`/`t_len` interleaved coefficient pairs.
 * `t_len = 0` means `t ≡ 0`.
 *
 * # Safety
 * `s` must hold `2·s_len` doubles, `t` `2·t_len`, and `out` must be writable.
 */
enum HarmapStatus harmap_map_new(const double *s,
                                 size_t s_len,
                                 const double *t,
                                 size_t t_len,
                                 struct HarmapMap **out);

/**
 * # Safety
 * `params` must be valid and `out` writable.
 */
enum HarmapStatus harmap_map_extremal_single(const struct HarmapParams *params,
                                             size_t m,
                                             struct HarmapMap **out);

/**
 * # Safety
 * `params` must be valid and `out` writable.
 */
enum HarmapStatus harmap_map_extremal_full(const struct HarmapParams *params,
                                           size_t order,
                                           struct HarmapMap **out);

/**
 * # Safety
 * `map` must come from this library and not be used afterwards. NULL is ignored.
 */
void harmap_map_free(struct HarmapMap *map);

/**
 * Truncation order N, or 0 for a NULL handle.
 *
 * # Safety
 * `map` must be NULL or a live handle.
 */
size_t harmap_map_order(const struct HarmapMap *map);

/**
 * # Safety
 * `map` must be a live handle; `out_re` and `out_im` writable.
 */
enum HarmapStatus harmap_map_evaluate(const struct HarmapMap *map,
                                      double re,
                                      double im,
                                      double *out_re,
                                      double *out_im);

/**
 * # Safety
 * All pointers must be valid; `out` writable.
 */
enum HarmapStatus harmap_membership_sampled(const struct HarmapMap *map,
                                            const struct HarmapParams *params,
                                            const struct HarmapGrid *grid,
                                            struct HarmapVerdict *out);

/**
 * Coefficient-sum test; writes the sum and its bound `2(γ−λ)`.
 *
 * # Safety
 * All pointers must be valid; outputs writable.
 */
enum HarmapStatus harmap_membership_sufficient(const struct HarmapMap *map,
                                               const struct HarmapParams *params,
                                               bool *out_holds,
                                               double *out_sum,
                                               double *out_bound);

/**
 * # Safety
 * `params` must be valid and `out` writable.
 */
enum HarmapStatus harmap_radius_fully_convex(const struct HarmapParams *params,
                                             double tol,
                                             struct HarmapRadius *out);

/**
 * # Safety
 * `params` must be valid and `out` writable.
 */
enum HarmapStatus harmap_radius_fully_starlike(const struct HarmapParams *params,
                                               double tol,
                                               struct HarmapRadius *out);

/**
 * Numeric radius of `property` for one map, from circle tests with `n` angles.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum HarmapStatus harmap_radius_oracle(const struct HarmapMap *map,
                                       enum HarmapProperty property,
                                       double tol,
                                       size_t n,
                                       struct HarmapRadius *out);

/**
 * Lower and upper growth bounds at radius `r` from `terms` series terms, tails included.
 *
 * # Safety
 * `params` must be valid; outputs writable.
 */
enum HarmapStatus harmap_growth(const struct HarmapParams *params,
                                double r,
                                size_t terms,
                                double *out_lower,
                                double *out_upper);

/**
 * Harmonic convolution `s₁∗s₂ + conj(t₁∗t₂)`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum HarmapStatus harmap_convolve(const struct HarmapMap *a,
                                  const struct HarmapMap *b,
                                  struct HarmapMap **out);

/**
 * Weighted sum of `count` maps; weights must be non-negative and sum to 1.
 *
 * # Safety
 * `maps` and `weights` must each hold `count` entries; `out` writable.
 */
enum HarmapStatus harmap_convex_combination(const struct HarmapMap *const *maps,
                                            const double *weights,
                                            size_t count,
                                            struct HarmapMap **out);

/**
 * Parses a map document from NUL-terminated JSON.
 *
 * # Safety
 * `json` must be a valid C string and `out` writable.
 */
enum HarmapStatus harmap_map_from_json(const char *json, struct HarmapMap **out);

/**
 * Serializes a map as a document; release the string with `harmap_string_free`.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum HarmapStatus harmap_map_to_json(const struct HarmapMap *map, char **out);

/**
 * # Safety
 * `s` must come from `harmap_map_to_json`, or be NULL.
 */
void harmap_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARMAP_H */
