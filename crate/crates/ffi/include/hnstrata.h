#ifndef HNSTRATA_H
#define HNSTRATA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HnsStatus {
  HNS_STATUS_OK = 0,
  HNS_STATUS_NULL_POINTER = 1,
  HNS_STATUS_INVALID_UTF8 = 2,
  HNS_STATUS_PARSE = 3,
  HNS_STATUS_INVALID_INPUT = 4,
  HNS_STATUS_PRECONDITION = 5,
  HNS_STATUS_TOO_LARGE = 6,
  HNS_STATUS_INTERNAL = 7,
} HnsStatus;

/**
 * A quiver with stability parameter and field size, with cached volumes.
 */
typedef struct HnsQuiver HnsQuiver;

/**
 * A curve given by its zeta function, with cached volumes.
 */
typedef struct HnsZeta HnsZeta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hns_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hns_string_free(char *s);

/**
 * Euler form of two classes `(r, d)` on a curve of genus `g`.
 */
int64_t hns_euler_form(int64_t r1, int64_t d1, int64_t r2, int64_t d2, int64_t g);

/**
 * Parses a zeta datum (`q`, `genus`, `numerator`) from TOML text.
 *
 * # Safety
 * `toml` must be a valid C string; `out` must be writable.
 */
enum HnsStatus hns_zeta_from_toml(const char *toml, struct HnsZeta **out);

/**
 * Builds a zeta datum from the numerator coefficients `a_0 .. a_2g`.
 *
 * # Safety
 * `numerator` must point to `len` values; `out` must be writable.
 */
enum HnsStatus hns_zeta_new(uint64_t q,
                            uint32_t genus,
                            const int64_t *numerator,
                            size_t len,
                            struct HnsZeta **out);

/**
 * # Safety
 * `z` must come from `hns_zeta_*` and not have been freed. Null is ignored.
 */
void hns_zeta_free(struct HnsZeta *z);

/**
 * Semistable volume of class `(r, d)`; `mode` is `"exact"` or `"trunc:K"`.
 * Writes a JSON document to `out`.
 *
 * # Safety
 * `z` must be a live handle, `mode` a valid C string, `out` writable.
 */
enum HnsStatus hns_vol_ss(const struct HnsZeta *z,
                          int64_t r,
                          int64_t d,
                          const char *mode,
                          char **out);

/**
 * HN types of weight `(r, d)` with first slope `>= num/den`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum HnsStatus hns_hn_types_json(int64_t r,
                                 int64_t d,
                                 int64_t min_slope_num,
                                 int64_t min_slope_den,
                                 bool vec_only,
                                 int64_t genus,
                                 char **out);

/**
 * Peels the strata of `noise_json` (a Hall element) off the semistable
 * function of `(r, d)`; writes the certificate JSON.
 *
 * # Safety
 * `noise_json` must be a valid C string; `out` writable.
 */
enum HnsStatus hns_peel_json(int64_t genus,
                             int64_t r,
                             int64_t d,
                             const char *noise_json,
                             char **out);

/**
 * Loads a quiver from TOML (`vertices`, `arrows`, `theta`; theta required)
 * for counting over `F_q`.
 *
 * # Safety
 * `toml` must be a valid C string; `out` writable.
 */
enum HnsStatus hns_quiver_from_toml(const char *toml, uint64_t q, struct HnsQuiver **out);

/**
 * Semistable volume of dimension vector `dims[0..len]`, written as `"num/den"`.
 *
 * # Safety
 * `h` must be a live handle, `dims` point to `len` values, `out` writable.
 */
enum HnsStatus hns_quiver_vol_ss(const struct HnsQuiver *h,
                                 const int64_t *dims,
                                 size_t len,
                                 char **out);

/**
 * # Safety
 * `h` must come from `hns_quiver_from_toml` and not have been freed. Null is
 * ignored.
 */
void hns_quiver_free(struct HnsQuiver *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HNSTRATA_H */
