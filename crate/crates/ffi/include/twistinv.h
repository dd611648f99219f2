#ifndef TWISTINV_H
#define TWISTINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum TwStatus {
  TW_STATUS_OK = 0,
  TW_STATUS_NULL_POINTER = 1,
  TW_STATUS_INVALID_INPUT = 2,
  TW_STATUS_CONSISTENCY = 3,
  TW_STATUS_PANIC = 4,
  TW_STATUS_UTF8 = 5,
} TwStatus;

/**
 * A root datum of a simply connected semisimple group.
 */
typedef struct TwDatum TwDatum;

/**
 * An irreducible highest-weight module.
 */
typedef struct TwModule TwModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the next failing call.
 */
const char *tw_last_error_message(void);

/**
 * Parses a group spec such as `A3` or `A1xA1` into a new datum handle.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TwStatus tw_datum_new(const char *spec, struct TwDatum **out);

/**
 * # Safety
 * `d` must come from [`tw_datum_new`] and not be freed twice; null is ignored.
 */
void tw_datum_free(struct TwDatum *d);

/**
 * # Safety
 * `d` must be a live datum handle and `out` a valid pointer.
 */
enum TwStatus tw_datum_rank(const struct TwDatum *d, size_t *out);

/**
 * # Safety
 * `d` must be a live datum handle and `out` a valid pointer.
 */
enum TwStatus tw_datum_num_positive_roots(const struct TwDatum *d, size_t *out);

/**
 * Builds the irreducible module with highest weight `coords[0..len]` (fundamental-weight coordinates).
 *
 * # Safety
 * `d` must be a live datum handle, `coords` must point to `len` integers, `out` must be valid.
 */
enum TwStatus tw_module_new(const struct TwDatum *d,
                            const int64_t *coords,
                            size_t len,
                            struct TwModule **out);

/**
 * # Safety
 * `m` must come from [`tw_module_new`] and not be freed twice; null is ignored.
 */
void tw_module_free(struct TwModule *m);

/**
 * # Safety
 * `m` must be a live module handle and `out` a valid pointer.
 */
enum TwStatus tw_module_dim(const struct TwModule *m, size_t *out);

/**
 * # Safety
 * `m` must be a live module handle, `coords` must point to `len` integers, `out` must be valid.
 */
enum TwStatus tw_module_weight_multiplicity(const struct TwModule *m,
                                            const int64_t *coords,
                                            size_t len,
                                            size_t *out);

/**
 * Runs one command-line invocation, e.g. `{"fold", "--group", "A2", "--sigma", "(1 2)"}`.
 * `*out_text` receives the standard output (free with [`tw_string_free`]) and `*out_exit`
 * the exit code. Returns `TW_STATUS_OK` whenever the command ran, whatever its exit code.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out_text` and `out_exit` must be valid.
 */
enum TwStatus tw_run_json(size_t argc, const char *const *argv, char **out_text, int32_t *out_exit);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void tw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTINV_H */
