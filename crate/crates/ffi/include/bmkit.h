#ifndef BMKIT_H
#define BMKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a library call.
typedef enum BmStatus {
  BM_STATUS_OK = 0,
  // A verification ran and found a counterexample.
  BM_STATUS_COUNTEREXAMPLE = 1,
  BM_STATUS_INVALID_ARGUMENT = 2,
  BM_STATUS_RESOURCE_BOUND = 3,
  BM_STATUS_NULL_POINTER = 4,
  BM_STATUS_INVALID_UTF8 = 5,
  // The value does not fit the requested fixed-width type.
  BM_STATUS_OVERFLOW = 6,
  BM_STATUS_PANIC = 7,
} BmStatus;

// Opaque square matrix indexed by partitions of one degree.
typedef struct BmMatrix BmMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null.
const char *bm_last_error(void);

// Library version as a static string.
const char *bm_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void bm_string_free(char *s);

// Sets the largest degree any enumeration may reach.
enum BmStatus bm_set_max_degree(size_t n);

// Current degree bound.
size_t bm_max_degree(void);

// Kostka number for partitions written like `2,1`.
//
// # Safety
// String arguments must be valid NUL-terminated; `out` must be writable.
enum BmStatus bm_kostka(const char *shape, const char *content, char **out);

// Kostka number through the character-theoretic oracle.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_kostka_oracle(const char *shape, const char *content, char **out);

// Character value χ^shape at cycle type `cycle_type`.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_character(const char *shape, const char *cycle_type, char **out);

// Littlewood-Richardson multiplicity; factors separated by `;`.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_lr_mult(const char *target, const char *factors, char **out);

// Multinomial coefficient n! / Π p_i!.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_multinomial(const char *p, char **out);

// Number of bipartitions with the given weights (`;`-separated) and column sums `q`.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_bip_count(const char *w, const char *q, char **out);

// r(τ) rendered as a signed sum of K-types.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_r_tau(const char *tau, char **out);

// cyc(σ(τ)) rendered as a sum of components.
//
// # Safety
// As for [`bm_kostka`].
enum BmStatus bm_cyc(const char *tau, char **out);

// Checks the local identity for one type sequence and point. Pass `l = 0`
// to pick the smallest admissible ℓ and q. Writes the JSON report to
// `report` (may be null) and returns `BM_STATUS_COUNTEREXAMPLE` when the
// sides differ.
//
// # Safety
// As for [`bm_kostka`]; `report` may be null.
enum BmStatus bm_verify_local_bm(const char *tau,
                                 const char *point,
                                 uint64_t l,
                                 uint64_t q,
                                 char **report);

// Number of irreducible components of M(n, q); `l = 0` for characteristic zero.
//
// # Safety
// `out` must be writable.
enum BmStatus bm_count_components(size_t n, uint64_t q, uint64_t l, uint64_t *out);

// Kostka matrix of degree n, rows and columns in canonical order.
//
// # Safety
// `out` must be writable.
enum BmStatus bm_kostka_matrix_new(size_t n, struct BmMatrix **out);

// Inverse Kostka matrix of degree n.
//
// # Safety
// `out` must be writable.
enum BmStatus bm_inverse_kostka_matrix_new(size_t n, struct BmMatrix **out);

// Number of rows (and columns). Returns 0 for null.
//
// # Safety
// `m` must be null or a live handle.
size_t bm_matrix_size(const struct BmMatrix *m);

// Entry (i, j) as a signed 64-bit integer.
//
// # Safety
// `m` must be a live handle; `out` writable.
enum BmStatus bm_matrix_entry(const struct BmMatrix *m, size_t i, size_t j, int64_t *out);

// Partition labelling row and column i, written like `2,1`.
//
// # Safety
// `m` must be a live handle; `out` writable.
enum BmStatus bm_matrix_label(const struct BmMatrix *m, size_t i, char **out);

// Releases a matrix handle. Null is ignored.
//
// # Safety
// `m` must come from this library and not have been freed.
void bm_matrix_free(struct BmMatrix *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BMKIT_H */
