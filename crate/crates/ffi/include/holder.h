#ifndef HOLDER_H
#define HOLDER_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success; every other value has a message in
// [`holder_last_error`].
typedef enum HolderStatus {
  HOLDER_STATUS_OK = 0,
  HOLDER_STATUS_NULL_ARGUMENT = 1,
  HOLDER_STATUS_INVALID_UTF8 = 2,
  HOLDER_STATUS_PARSE = 3,
  HOLDER_STATUS_INVALID_GERM = 4,
  HOLDER_STATUS_FINITE_DETERMINACY = 5,
  HOLDER_STATUS_TRUNCATION = 6,
  HOLDER_STATUS_INVALID_ARC = 7,
  HOLDER_STATUS_LIMIT = 8,
  HOLDER_STATUS_INTERNAL = 9,
} HolderStatus;

// Link graph and canonical complex of a germ.
typedef struct HolderComplex HolderComplex;

// A parsed map germ `(x, p, q)`.
typedef struct HolderGerm HolderGerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *holder_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` is null or came from this library and has not been freed.
void holder_string_free(char *s);

// Parses germ file text (`p = ...`, `q = ...`, optional `name = "..."`).
//
// # Safety
// `text` is a NUL-terminated string and `out` is writable.
enum HolderStatus holder_germ_parse(const char *text, struct HolderGerm **out);

// # Safety
// `germ` is null or came from [`holder_germ_parse`] and has not been freed.
void holder_germ_free(struct HolderGerm *germ);

// Builds the link graph and canonical complex of `germ`.
//
// # Safety
// `germ` is a live handle and `out` is writable.
enum HolderStatus holder_germ_complex(const struct HolderGerm *germ, struct HolderComplex **out);

// # Safety
// `complex` is null or came from [`holder_germ_complex`] and has not been freed.
void holder_complex_free(struct HolderComplex *complex);

// Vertex and edge counts of the canonical complex.
//
// # Safety
// `complex` is a live handle; each output is writable or null.
enum HolderStatus holder_complex_size(const struct HolderComplex *complex,
                                      uintptr_t *vertices,
                                      uintptr_t *edges);

// Canonical form string of the canonical complex, e.g. `V1;L(1:1/1)`.
// Release with [`holder_string_free`].
//
// # Safety
// `complex` is a live handle and `out` is writable.
enum HolderStatus holder_complex_canonical_form(const struct HolderComplex *complex, char **out);

// Decides inner equivalence. `equivalent` receives 1 or 0.
//
// # Safety
// `f` and `g` are live handles and `equivalent` is writable.
enum HolderStatus holder_classify(const struct HolderGerm *f,
                                  const struct HolderGerm *g,
                                  int *equivalent);

// Contact order of two arc literals such as `(t, t^2, t^(5/2))`.
//
// `exact` receives `num/den` or `inf` (release with [`holder_string_free`]);
// `approx` receives the value as a double, infinity for coinciding arcs.
// Either output may be null. Both computation routes run; a disagreement
// is reported as [`HolderStatus::Internal`].
//
// # Safety
// `a` and `b` are NUL-terminated strings; outputs are writable or null.
enum HolderStatus holder_contact_order(const char *a, const char *b, char **exact, double *approx);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOLDER_H */
