#ifndef SHADOWTRACE_H
#define SHADOWTRACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  /**
   * A check ran and found a mismatch or an invalid object.
   */
  ST_STATUS_INEQUALITY = 1,
  /**
   * A hypothesis (projectivity, separability) is missing.
   */
  ST_STATUS_HYPOTHESIS = 2,
  /**
   * Malformed input or an unknown name.
   */
  ST_STATUS_INPUT = 3,
  ST_STATUS_NULL_POINTER = 4,
  /**
   * The output buffer is too small; the required length is still written.
   */
  ST_STATUS_BUFFER_TOO_SMALL = 5,
  ST_STATUS_PANIC = 6,
} StStatus;

typedef struct StAlgebra StAlgebra;

typedef struct StBimodule StBimodule;

typedef struct StWorkspace StWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. Owned by the library.
 */
const char *st_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void st_string_free(char *s);

/**
 * Static version string.
 */
const char *st_version(void);

/**
 * A new empty workspace over `field` ("Q" or "GFp"); library objects resolve by name.
 *
 * # Safety
 * `field` must be a valid C string and `out` a valid pointer.
 */
enum StStatus st_workspace_new(const char *field, struct StWorkspace **out);

/**
 * # Safety
 * `ws` must be NULL or a handle from [`st_workspace_new`], not yet freed.
 */
void st_workspace_free(struct StWorkspace *ws);

/**
 * Loads JSON definitions. Returns `Inequality` if any object fails validation;
 * the objects that passed stay registered.
 *
 * # Safety
 * `ws` must be a live workspace handle and `json` a valid C string.
 */
enum StStatus st_workspace_load_json(struct StWorkspace *ws, const char *json);

/**
 * # Safety
 * `ws` must be a live workspace handle, `name` a valid C string, `out` a valid pointer.
 */
enum StStatus st_workspace_algebra(const struct StWorkspace *ws,
                                   const char *name,
                                   struct StAlgebra **out);

/**
 * # Safety
 * `ws` must be a live workspace handle, `name` a valid C string, `out` a valid pointer.
 */
enum StStatus st_workspace_bimodule(const struct StWorkspace *ws,
                                    const char *name,
                                    struct StBimodule **out);

/**
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
void st_algebra_free(struct StAlgebra *a);

/**
 * Dimension over the ground field; 0 for NULL.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
uintptr_t st_algebra_dim(const struct StAlgebra *a);

/**
 * The unit bimodule U_A.
 *
 * # Safety
 * `a` must be a live algebra handle and `out` a valid pointer.
 */
enum StStatus st_algebra_unit_bimodule(const struct StAlgebra *a, struct StBimodule **out);

/**
 * # Safety
 * `m` must be NULL or a live bimodule handle.
 */
void st_bimodule_free(struct StBimodule *m);

/**
 * # Safety
 * `m` must be NULL or a live bimodule handle.
 */
uintptr_t st_bimodule_dim(const struct StBimodule *m);

/**
 * HH_0..HH_cap dimensions of an (A, A)-bimodule into `out[0..len]`.
 * `written` receives cap + 1 even when `len` is too small.
 *
 * # Safety
 * `m` must be a live bimodule handle, `out` valid for `len` writes, `written` valid.
 */
enum StStatus st_hh_dims(const struct StBimodule *m,
                         uintptr_t cap,
                         uintptr_t *out,
                         uintptr_t len,
                         uintptr_t *written);

/**
 * χ(M) as JSON with its HH₀ bases.
 *
 * # Safety
 * `m` must be a live bimodule handle and `out` a valid pointer.
 */
enum StStatus st_euler_characteristic_json(const struct StBimodule *m, char **out);

/**
 * The HH₀ pairing and copairing as JSON.
 *
 * # Safety
 * `a` must be a live algebra handle and `out` a valid pointer.
 */
enum StStatus st_pairing_json(const struct StAlgebra *a, char **out);

/**
 * Runs the verification suite. `config` may be NULL for the default battery.
 * `exit` receives 0, 1 or 2 as the command line would report.
 *
 * # Safety
 * `config` must be NULL or a valid C string; `out` and `exit` valid pointers.
 */
enum StStatus st_verify_suite_json(const char *config, char **out, int *exit);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SHADOWTRACE_H */
