#ifndef POLYAUT_H
#define POLYAUT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PaStatus {
  PA_STATUS_OK = 0,
  PA_STATUS_NULL_POINTER = 1,
  PA_STATUS_INVALID_UTF8 = 2,
  PA_STATUS_PARSE = 3,
  PA_STATUS_INVALID_FIELD = 4,
  PA_STATUS_INVALID_ARGUMENT = 5,
  PA_STATUS_NOT_INVERTIBLE = 6,
  PA_STATUS_POLE = 7,
  PA_STATUS_DOMAIN = 8,
  PA_STATUS_BUFFER_TOO_SMALL = 9,
  PA_STATUS_PANIC = 10,
} PaStatus;

typedef enum PaVerdict {
  PA_VERDICT_NO = 0,
  PA_VERDICT_YES = 1,
  PA_VERDICT_UNKNOWN = 2,
} PaVerdict;

/**
 * A scalar field, `Q` or `F_p`.
 */
typedef struct PaField PaField;

/**
 * An automorphism of the plane with its inverse.
 */
typedef struct PaMap PaMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on this thread.
 */
const char *pa_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pa_string_free(char *s);

/**
 * Parse `Q` or `Fp:<prime>`.
 *
 * # Safety
 * `descriptor` must be a nul-terminated string and `out` writable.
 */
enum PaStatus pa_field_new(const char *descriptor, struct PaField **out);

/**
 * # Safety
 * `field` must be null or a handle from `pa_field_new`.
 */
void pa_field_free(struct PaField *field);

/**
 * # Safety
 * `field` must be a live handle.
 */
uint64_t pa_field_characteristic(const struct PaField *field);

/**
 * Parse a plane automorphism such as `"(-x2, x1 + x2^2)"`.
 *
 * # Safety
 * Pointers must be valid; `out` receives an owned handle.
 */
enum PaStatus pa_map_parse(const struct PaField *field, const char *src, struct PaMap **out);

/**
 * # Safety
 * `map` must be null or a handle from this library.
 */
void pa_map_free(struct PaMap *map);

/**
 * Canonical text of the map.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_to_string(const struct PaMap *map, char **out);

/**
 * `first ∘ second`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_compose(const struct PaMap *first,
                             const struct PaMap *second,
                             struct PaMap **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_inverse(const struct PaMap *map, struct PaMap **out);

/**
 * Total degree; 0 for the zero map.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_degree(const struct PaMap *map, uint32_t *out);

/**
 * Whether `deg(f²) = deg(f)²` with `deg f ≥ 2`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_is_regular(const struct PaMap *map, bool *out);

/**
 * Family label of an algebraic map (`"I"`..`"IV"`), or `"henon"`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PaStatus pa_map_classify(const struct PaMap *map, char **out);

/**
 * Decide whether `g = h f h⁻¹` for some `h`. On `Yes` and a non-null
 * `conjugator`, an owned handle to `h` is written there; otherwise it is
 * set to null.
 *
 * # Safety
 * Pointers must be valid; `conjugator` may be null.
 */
enum PaStatus pa_conjugacy(const struct PaMap *f,
                           const struct PaMap *g,
                           enum PaVerdict *verdict,
                           struct PaMap **conjugator);

/**
 * Degrees of `f, f², …, f^n` for an endomorphism of any dimension. Writes
 * the sequence into `buf` (capacity `len`) and its length into `written`;
 * fails with `BufferTooSmall` when `len < n` and still reports `written`.
 *
 * # Safety
 * `buf` must have room for `len` values.
 */
enum PaStatus pa_degree_sequence(const struct PaField *field,
                                 const char *src,
                                 uint32_t n,
                                 uint64_t *buf,
                                 size_t len,
                                 size_t *written);

/**
 * Run the command-line front end on `argv` (without the program name).
 * Standard output is returned through `out`, standard error through `err`
 * when non-null; the return value is the exit status, or -1 if the
 * arguments could not be read.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings.
 */
int pa_cli_run(int argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYAUT_H */
