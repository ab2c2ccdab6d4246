/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CONTRA_H
#define CONTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ContraStatus {
  CONTRA_STATUS_OK = 0,
  CONTRA_STATUS_NULL_POINTER = 1,
  CONTRA_STATUS_UTF8 = 2,
  CONTRA_STATUS_PARSE = 3,
  CONTRA_STATUS_SCHEMA = 4,
  CONTRA_STATUS_SHAPE = 5,
  CONTRA_STATUS_FIELD_MISMATCH = 6,
  CONTRA_STATUS_COALGEBRA_MISMATCH = 7,
  CONTRA_STATUS_SIDE = 8,
  CONTRA_STATUS_NOT_SURJECTIVE = 9,
  CONTRA_STATUS_INVALID = 10,
  CONTRA_STATUS_INCONSISTENT = 11,
  CONTRA_STATUS_UNSUPPORTED = 12,
  CONTRA_STATUS_IO = 13,
  CONTRA_STATUS_PANIC = 14,
} ContraStatus;

typedef struct ContraCoalgebra ContraCoalgebra;

typedef struct ContraComodule ContraComodule;

typedef struct ContraContramodule ContraContramodule;

typedef struct ContraMorphism ContraMorphism;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *contra_last_error(void);

/**
 * Version string of the library. Static; do not free.
 */
const char *contra_version(void);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be used afterwards.
 */
void contra_coalgebra_free(struct ContraCoalgebra *h);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be used afterwards.
 */
void contra_comodule_free(struct ContraComodule *h);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be used afterwards.
 */
void contra_contramodule_free(struct ContraContramodule *h);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be used afterwards.
 */
void contra_morphism_free(struct ContraMorphism *h);

/**
 * Parses a coalgebra document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ContraStatus contra_coalgebra_from_json(const char *json, struct ContraCoalgebra **out);

/**
 * Parses a comodule document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ContraStatus contra_comodule_from_json(const char *json, struct ContraComodule **out);

/**
 * Parses a contramodule document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ContraStatus contra_contramodule_from_json(const char *json, struct ContraContramodule **out);

/**
 * Parses a coalgebra map document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ContraStatus contra_morphism_from_json(const char *json, struct ContraMorphism **out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum ContraStatus contra_coalgebra_dim(const struct ContraCoalgebra *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum ContraStatus contra_comodule_dim(const struct ContraComodule *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum ContraStatus contra_contramodule_dim(const struct ContraContramodule *h, size_t *out);

/**
 * Checks the coalgebra axioms; `*ok` is false if any fails.
 *
 * # Safety
 * `h` must be a live handle and `ok` writable.
 */
enum ContraStatus contra_coalgebra_verify(const struct ContraCoalgebra *h, bool *ok);

/**
 * # Safety
 * `h` must be a live handle and `ok` writable.
 */
enum ContraStatus contra_comodule_verify(const struct ContraComodule *h, bool *ok);

/**
 * # Safety
 * `h` must be a live handle and `ok` writable.
 */
enum ContraStatus contra_contramodule_verify(const struct ContraContramodule *h, bool *ok);

/**
 * # Safety
 * `h` must be a live handle and `ok` writable.
 */
enum ContraStatus contra_morphism_verify(const struct ContraMorphism *h, bool *ok);

/**
 * Whether the contramodule is projective.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum ContraStatus contra_contramodule_is_projective(const struct ContraContramodule *h, bool *out);

/**
 * Dimension of the space of comodule maps `a -> b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_hom_comodules_dim(const struct ContraComodule *a,
                                           const struct ContraComodule *b,
                                           size_t *out);

/**
 * Dimension of the space of contramodule maps `a -> b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_hom_contra_dim(const struct ContraContramodule *a,
                                        const struct ContraContramodule *b,
                                        size_t *out);

/**
 * `dim M □ N` for a right comodule `m` and a left comodule `n`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_cotensor_dim(const struct ContraComodule *m,
                                      const struct ContraComodule *n,
                                      size_t *out);

/**
 * `dim M ⊙ B` for a right comodule `m`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_contratensor_dim(const struct ContraComodule *m,
                                          const struct ContraContramodule *b,
                                          size_t *out);

/**
 * `dim Cohom(M, B)` for a left comodule `m`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_cohom_dim(const struct ContraComodule *m,
                                   const struct ContraContramodule *b,
                                   size_t *out);

/**
 * Induces `w` along the surjection `rho`; the result is a new handle.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum ContraStatus contra_induce(const struct ContraMorphism *rho,
                                const struct ContraContramodule *w,
                                struct ContraContramodule **out);

/**
 * Runs a job document `{"command", "inputs", "seed"?, "field"?}` as the
 * `contra run` command would, relative to the current directory. The
 * report is written to `*report` (free with [`contra_string_free`]) and
 * whether its checks passed to `*ok`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `report` and `ok` writable.
 */
enum ContraStatus contra_run_job(const char *json, char **report, bool *ok);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be used afterwards.
 */
void contra_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONTRA_H */
