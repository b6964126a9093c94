#ifndef TORFACT_H
#define TORFACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorfactStatus {
  TORFACT_STATUS_OK = 0,
  TORFACT_STATUS_NULL_POINTER = 1,
  TORFACT_STATUS_INVALID_UTF8 = 2,
  TORFACT_STATUS_PARSE_ERROR = 3,
  TORFACT_STATUS_INVALID_FAN = 4,
  TORFACT_STATUS_NOT_COMPLETE = 5,
  TORFACT_STATUS_INVALID_PARAMETER = 6,
  TORFACT_STATUS_UNBOUNDED = 7,
  TORFACT_STATUS_BUFFER_TOO_SMALL = 8,
  TORFACT_STATUS_PANIC = 9,
} TorfactStatus;

typedef enum TorfactVerdict {
  TORFACT_VERDICT_PRODUCT = 0,
  TORFACT_VERDICT_NOT_SEMISIMPLE = 1,
  TORFACT_VERDICT_UNRECOGNIZED = 2,
} TorfactVerdict;

/**
 * Opaque fan handle.
 */
typedef struct TorfactFan TorfactFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a NUL-terminated fan file. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be null or a valid C string; `out` must be null or writable.
 */
enum TorfactStatus torfact_fan_from_json(const char *json, struct TorfactFan **out);

/**
 * Fan of projective space of dimension `n`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum TorfactStatus torfact_fan_projective_space(size_t n, struct TorfactFan **out);

/**
 * Fan of the product of projective spaces with dimensions `dims[0..len]`.
 *
 * # Safety
 * `dims` must point to `len` readable values; `out` must be null or writable.
 */
enum TorfactStatus torfact_fan_product(const size_t *dims, size_t len, struct TorfactFan **out);

/**
 * Fan of the Hirzebruch surface with parameter `a`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum TorfactStatus torfact_fan_hirzebruch(int64_t a, struct TorfactFan **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `fan` must be null or a handle not yet freed.
 */
void torfact_fan_free(struct TorfactFan *fan);

/**
 * Lattice rank, or 0 for a null handle.
 *
 * # Safety
 * `fan` must be null or a live handle.
 */
size_t torfact_fan_rank(const struct TorfactFan *fan);

/**
 * Number of rays in the skeleton, or 0 for a null handle.
 *
 * # Safety
 * `fan` must be null or a live handle.
 */
size_t torfact_fan_ray_count(const struct TorfactFan *fan);

/**
 * Writes whether the fan covers the whole space.
 *
 * # Safety
 * `fan` must be null or a live handle; `complete` must be null or writable.
 */
enum TorfactStatus torfact_fan_is_complete(const struct TorfactFan *fan, bool *complete);

/**
 * Writes the number of Demazure roots.
 *
 * # Safety
 * `fan` must be null or a live handle; `count` must be null or writable.
 */
enum TorfactStatus torfact_fan_root_count(const struct TorfactFan *fan, size_t *count);

/**
 * Classifies a complete fan. For a product verdict the factor dimensions are
 * written to `dims[0..*len]`; `*len` is always set to the number of factors
 * (0 for other verdicts). Returns `BUFFER_TOO_SMALL` when `capacity < *len`.
 *
 * # Safety
 * `fan` must be null or a live handle; `verdict` and `len` must be null or
 * writable; `dims` must be null or point to `capacity` writable values.
 */
enum TorfactStatus torfact_fan_classify(const struct TorfactFan *fan,
                                        enum TorfactVerdict *verdict,
                                        size_t *dims,
                                        size_t capacity,
                                        size_t *len);

/**
 * Serializes the fan as a fan file. `*out` must be released with
 * `torfact_string_free`.
 *
 * # Safety
 * `fan` must be null or a live handle; `out` must be null or writable.
 */
enum TorfactStatus torfact_fan_to_json(const struct TorfactFan *fan, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from `torfact_fan_to_json` not yet freed.
 */
void torfact_string_free(char *s);

/**
 * Message for the last failing call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *torfact_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORFACT_H */
