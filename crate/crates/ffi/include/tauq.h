#ifndef TAUQ_H
#define TAUQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TauqStatus {
  TAUQ_STATUS_OK = 0,
  TAUQ_STATUS_NULL_ARGUMENT = 1,
  TAUQ_STATUS_INVALID_UTF8 = 2,
  TAUQ_STATUS_PARSE = 3,
  TAUQ_STATUS_UNKNOWN_VERTEX = 4,
  TAUQ_STATUS_UNKNOWN_FIXTURE = 5,
  TAUQ_STATUS_PRECONDITION = 6,
  TAUQ_STATUS_INVARIANT = 7,
  TAUQ_STATUS_STRUCTURE = 8,
  TAUQ_STATUS_INVALID_ARGUMENT = 9,
  TAUQ_STATUS_PANIC = 10,
} TauqStatus;

typedef enum TauqChainKind {
  TAUQ_CHAIN_KIND_THETA = 0,
  TAUQ_CHAIN_KIND_ETA = 1,
} TauqChainKind;

typedef enum TauqFlavor {
  TAUQ_FLAVOR_RIGHT = 0,
  TAUQ_FLAVOR_LEFT = 1,
  TAUQ_FLAVOR_BOTH = 2,
} TauqFlavor;

typedef enum TauqLMinus {
  TAUQ_L_MINUS_FREE = 0,
  TAUQ_L_MINUS_INJECTIVES = 1,
  TAUQ_L_MINUS_SINKS = 2,
} TauqLMinus;

/**
 * Opaque quiver handle.
 */
typedef struct TauqQuiver TauqQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses quiver text. The result is not checked against the translation
 * quiver axioms; use [`tauq_validate_json`] for that.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TauqStatus tauq_quiver_parse(const char *text, struct TauqQuiver **out);

/**
 * Loads a built-in fixture by name (case-insensitive).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TauqStatus tauq_corpus_load(const char *name, struct TauqQuiver **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `q` must come from this library and not have been freed.
 */
void tauq_quiver_free(struct TauqQuiver *q);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
size_t tauq_quiver_vertex_count(const struct TauqQuiver *q);

/**
 * Axiom check and admissibility as JSON `{"validation": .., "admissibility": ..}`.
 *
 * # Safety
 * `q` must be a live handle and `out` a writable pointer.
 */
enum TauqStatus tauq_validate_json(const struct TauqQuiver *q, char **out);

/**
 * Full classification report as JSON. A `bound` of 0 selects the default.
 *
 * # Safety
 * `q` must be a live handle and `out` a writable pointer.
 */
enum TauqStatus tauq_classify_json(const struct TauqQuiver *q, size_t bound, char **out);

/**
 * The θ- or η-ladder of one vertex as JSON.
 *
 * # Safety
 * `q` must be a live handle, `vertex` a NUL-terminated string and `out` a
 * writable pointer.
 */
enum TauqStatus tauq_chain_json(const struct TauqQuiver *q,
                                enum TauqChainKind kind,
                                const char *vertex,
                                size_t bound,
                                char **out);

/**
 * Result of the Nakayama test for one vertex as JSON.
 *
 * # Safety
 * As for [`tauq_chain_json`].
 */
enum TauqStatus tauq_nakayama_json(const struct TauqQuiver *q,
                                   const char *vertex,
                                   size_t bound,
                                   char **out);

/**
 * Additive-function search as JSON.
 *
 * # Safety
 * `q` must be a live handle and `out` a writable pointer.
 */
enum TauqStatus tauq_additive_json(const struct TauqQuiver *q,
                                   enum TauqFlavor flavor,
                                   enum TauqLMinus lminus,
                                   char **out);

/**
 * Deletion analysis for a comma-separated vertex list, as JSON.
 *
 * # Safety
 * `q` must be a live handle, `vertices` a NUL-terminated string and `out`
 * a writable pointer.
 */
enum TauqStatus tauq_reject_json(const struct TauqQuiver *q,
                                 const char *vertices,
                                 size_t bound,
                                 char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tauq_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null.
 */
const char *tauq_last_error(void);

/**
 * Library version as a static string.
 */
const char *tauq_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAUQ_H */
