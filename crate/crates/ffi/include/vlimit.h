#ifndef VLIMIT_H
#define VLIMIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  VL_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, unknown command or method, invalid config.
  VL_STATUS_INVALID_ARGUMENT = 3,
  // A weight, level or basis index outside what the handle covers.
  VL_STATUS_OUT_OF_RANGE = 4,
  // The engine reported an error; see the error kind.
  VL_STATUS_COMPUTE = 5,
  // Output buffer too small.
  VL_STATUS_BUFFER_TOO_SMALL = 6,
  VL_STATUS_PANIC = 7,
} VlStatus;

// The large-N limit of a tower, with labels saturated below a level bound.
typedef struct VlLimit VlLimit;

// A permutation-orbifold tower over a seed.
typedef struct VlTower VlTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, static storage.
const char *vl_version(void);

// Message of the last failure on this thread (empty after a success). Valid
// until the next call on this thread.
const char *vl_last_error_message(void);

// Stable tag of the last failure (`config`, `unsaturated`, ...).
const char *vl_last_error_kind(void);

// # Safety
// `s` must come from this library or be null.
void vl_string_free(char *s);

// Builds a tower from JSON specs, e.g. `{"kind":"heisenberg"}` and
// `{"family":"symmetric"}`.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum VlStatus vl_tower_new(const char *seed_json,
                           const char *family_json,
                           uint32_t cutoff,
                           struct VlTower **out_tower);

// # Safety
// `tower` must come from [`vl_tower_new`] or be null; it is invalid afterwards.
void vl_tower_free(struct VlTower *tower);

// `b_n(G_N)`: the number of orbit basis vectors of weight `n` at level `N`.
//
// # Safety
// `tower` must be a live handle; `out_dim` must be writable.
enum VlStatus vl_tower_dim(const struct VlTower *tower,
                           size_t level,
                           uint32_t weight,
                           size_t *out_dim);

// `C^N_abc` at level `N` for the basis labels `(weights[i], indices[i])`
// anchored at `N`. `method`: 0 definition, 1 group sum, 2 oligo. Either
// output may be null; `out_exact` receives an owned string.
//
// # Safety
// `weights` and `indices` must point to three elements each.
enum VlStatus vl_tower_sc(const struct VlTower *tower,
                          size_t level,
                          const uint32_t *weights,
                          const size_t *indices,
                          uint32_t method_code,
                          double *out_value,
                          char **out_exact);

// The limit algebra of `tower` on weights `0..=cutoff`, saturated by `max_level`.
//
// # Safety
// `tower` must be a live handle; `out_limit` must be writable. The limit
// keeps its own reference, so the tower may be freed first.
enum VlStatus vl_limit_new(const struct VlTower *tower,
                           uint32_t cutoff,
                           size_t max_level,
                           struct VlLimit **out_limit);

// # Safety
// `limit` must come from [`vl_limit_new`] or be null.
void vl_limit_free(struct VlLimit *limit);

// # Safety
// `limit` must be a live handle; `out_dim` must be writable.
enum VlStatus vl_limit_dim(const struct VlLimit *limit, uint32_t weight, size_t *out_dim);

// Exact `C^∞_abc` for limit labels `(weights[i], indices[i])`.
//
// # Safety
// As for [`vl_tower_sc`].
enum VlStatus vl_limit_constant(const struct VlLimit *limit,
                                const uint32_t *weights,
                                const size_t *indices,
                                double *out_value,
                                char **out_exact);

// Coefficients of the `F^k` character up to `q^order`, written to
// `buffer[0..=order]`.
//
// # Safety
// `buffer` must hold `len` elements.
enum VlStatus vl_fk_character(uint32_t k, size_t order, uint64_t *buffer, size_t len);

// Runs a CLI command (`"dims"`, `"sc"`, `"limit"`, ...) on a JSON config
// (null or `""` for defaults) and returns the JSON document.
//
// # Safety
// String arguments must be NUL-terminated; `out_document` must be writable.
enum VlStatus vl_run(const char *command, const char *config_json, char **out_document);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VLIMIT_H */
