#ifndef SKERNEL_H
#define SKERNEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum SkStatus {
  SK_STATUS_OK = 0,
  // A verification ran and failed; outputs are still written.
  SK_STATUS_VERIFY_FAILED = 1,
  SK_STATUS_NULL_POINTER = 2,
  SK_STATUS_INVALID_UTF8 = 3,
  SK_STATUS_PARSE = 4,
  SK_STATUS_IDENTITY = 5,
  SK_STATUS_SHAPE = 6,
  SK_STATUS_PARAMETER = 7,
  SK_STATUS_PRECONDITION = 8,
  SK_STATUS_RANGE = 9,
  // A Rust panic was caught at the boundary.
  SK_STATUS_INTERNAL = 10,
} SkStatus;

typedef struct SkComplex SkComplex;

typedef struct SkGroup SkGroup;

typedef struct SkMap SkMap;

typedef struct SkSpace SkSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until
// the next failing call on the same thread.
const char *sk_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void sk_string_free(char *s);

// Parses and validates a chain complex document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SkStatus sk_complex_from_json(const char *json, struct SkComplex **out);

// Canonical JSON form; release with `sk_string_free`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SkStatus sk_complex_to_json(const struct SkComplex *h, char **out);

// # Safety
// `h` must be NULL or a live handle from this library.
void sk_complex_free(struct SkComplex *h);

// Parses and validates a simplicial set document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SkStatus sk_space_from_json(const char *json, struct SkSpace **out);

// Canonical JSON form; release with `sk_string_free`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SkStatus sk_space_to_json(const struct SkSpace *h, char **out);

// # Safety
// `h` must be NULL or a live handle from this library.
void sk_space_free(struct SkSpace *h);

// Parses and validates a simplicial abelian group document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SkStatus sk_group_from_json(const char *json, struct SkGroup **out);

// Canonical JSON form; release with `sk_string_free`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SkStatus sk_group_to_json(const struct SkGroup *h, char **out);

// # Safety
// `h` must be NULL or a live handle from this library.
void sk_group_free(struct SkGroup *h);

// Parses and validates a simplicial map document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SkStatus sk_map_from_json(const char *json, struct SkMap **out);

// Canonical JSON form; release with `sk_string_free`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SkStatus sk_map_to_json(const struct SkMap *h, char **out);

// # Safety
// `h` must be NULL or a live handle from this library.
void sk_map_free(struct SkMap *h);

// `H_n` of a complex as text such as `Z^2 + Z/3`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SkStatus sk_complex_homology(const struct SkComplex *c, int64_t n, char **out);

// `H_n` (or reduced `H̃_n` when `reduced` is nonzero) of the normalized
// chains of a simplicial set.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum SkStatus sk_space_homology(const struct SkSpace *x, int64_t n, bool reduced, char **out);

// `K(C)` truncated at `dim`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SkStatus sk_dold_kan_k(const struct SkComplex *c, size_t dim, struct SkGroup **out);

// The normalized (Moore) complex `N(A)`.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum SkStatus sk_normalize(const struct SkGroup *a, struct SkComplex **out);

// The bar construction `B(A)`.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum SkStatus sk_bar(const struct SkGroup *a, struct SkGroup **out);

// Verifies `N(K(C)) ≅ C` on degrees `0..=dim`: `Ok` or `VerifyFailed`.
//
// # Safety
// `c` must be a live handle.
enum SkStatus sk_check_nk(const struct SkComplex *c, size_t dim);

// Verifies `K(N(A)) ≅ A`: `Ok` or `VerifyFailed`.
//
// # Safety
// `a` must be a live handle.
enum SkStatus sk_check_kn(const struct SkGroup *a);

// Weak-equivalence certificate of a map as JSON. Returns `VerifyFailed`
// (with the certificate written) when it does not pass.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum SkStatus sk_weq_certificate(const struct SkMap *f, uint32_t range, char **out);

// The counit `Wr(X) → X` truncated at `dim`, as a map handle.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum SkStatus sk_wrap_counit(const struct SkSpace *x, size_t dim, struct SkMap **out);

// Runs the verification suite; `medium` selects the larger instance
// counts and `threads = 0` runs sequentially. The report text is written
// to `out`; the status is `VerifyFailed` when any check fails.
//
// # Safety
// `out` must be writable.
enum SkStatus sk_suite_run(uint64_t seed, bool medium, size_t threads, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKERNEL_H */
