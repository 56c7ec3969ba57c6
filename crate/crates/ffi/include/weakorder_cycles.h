#ifndef WEAKORDER_CYCLES_H
#define WEAKORDER_CYCLES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum WocStatus {
  WOC_STATUS_OK = 0,
  WOC_STATUS_NULL_POINTER = 1,
  WOC_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad descriptor, parameter or overlap.
   */
  WOC_STATUS_PARAMETER = 3,
  WOC_STATUS_EMPTY_FAMILY = 4,
  /**
   * The transition graph has a vertex with in-degree != out-degree.
   */
  WOC_STATUS_NOT_BALANCED = 5,
  /**
   * The transition graph splits into several components.
   */
  WOC_STATUS_NOT_CONNECTED = 6,
  WOC_STATUS_LENGTH_MISMATCH = 7,
  /**
   * The caller's buffer is too short; the required length was written.
   */
  WOC_STATUS_BUFFER_TOO_SMALL = 8,
  WOC_STATUS_PANIC = 9,
} WocStatus;

/**
 * A generated cycle.
 */
typedef struct WocCycle WocCycle;

/**
 * A family of equal-length words.
 */
typedef struct WocFamily WocFamily;

/**
 * A transition graph for a family and overlap.
 */
typedef struct WocGraph WocGraph;

/**
 * Counts from checking a symbol sequence against a family.
 */
typedef struct WocVerifySummary {
  bool ok;
  size_t windows_checked;
  size_t missing;
  size_t duplicated;
  size_t invalid_windows;
  size_t overlap_violations;
} WocVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `woc_*` call on the same thread.
 */
const char *woc_last_error_message(void);

/**
 * Parses a family descriptor such as `"wn:n=4"` or `"ms:0,1,1"`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string; `out` must be writable.
 */
enum WocStatus woc_family_parse(const char *descriptor, struct WocFamily **out);

/**
 * # Safety
 * `family` must come from [`woc_family_parse`] and not be used afterwards.
 */
void woc_family_free(struct WocFamily *family);

/**
 * Number of words in the family.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum WocStatus woc_family_count(const struct WocFamily *family, uint64_t *out);

/**
 * Length of the words a cycle for this family is built from; 0 for null.
 *
 * # Safety
 * `family` must be null or a live handle.
 */
size_t woc_family_word_length(const struct WocFamily *family);

/**
 * Builds the `overlap`-overlap cycle of `family`.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum WocStatus woc_generate(const struct WocFamily *family, size_t overlap, struct WocCycle **out);

/**
 * Builds the universal cycle of `family` (overlap = word length - 1).
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum WocStatus woc_generate_ucycle(const struct WocFamily *family, struct WocCycle **out);

/**
 * Number of symbols in the cycle; 0 for null.
 *
 * # Safety
 * `cycle` must be null or a live handle.
 */
size_t woc_cycle_len(const struct WocCycle *cycle);

/**
 * Overlap the cycle was built with; 0 for null.
 *
 * # Safety
 * `cycle` must be null or a live handle.
 */
size_t woc_cycle_overlap(const struct WocCycle *cycle);

/**
 * Copies the cycle into `buf`. With `cap` too small nothing is copied,
 * `*written` holds the required length and `BufferTooSmall` is returned.
 *
 * # Safety
 * `cycle` must be a live handle, `buf` valid for `cap` writes, `written`
 * writable.
 */
enum WocStatus woc_cycle_symbols(const struct WocCycle *cycle,
                                 uint32_t *buf,
                                 size_t cap,
                                 size_t *written);

/**
 * Rotates the cycle in place to its canonical starting point.
 *
 * # Safety
 * `cycle` must be a live handle.
 */
enum WocStatus woc_cycle_canonicalize(struct WocCycle *cycle);

/**
 * # Safety
 * `cycle` must come from `woc_generate*` and not be used afterwards.
 */
void woc_cycle_free(struct WocCycle *cycle);

/**
 * Checks that `symbols`, read cyclically with the given overlap, lists
 * every word of `family` exactly once.
 *
 * # Safety
 * `family` must be a live handle, `symbols` valid for `len` reads, `out`
 * writable.
 */
enum WocStatus woc_verify(const struct WocFamily *family,
                          const uint32_t *symbols,
                          size_t len,
                          size_t overlap,
                          struct WocVerifySummary *out);

/**
 * Builds the transition graph of `family` for the given overlap.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum WocStatus woc_graph_build(const struct WocFamily *family,
                               size_t overlap,
                               struct WocGraph **out);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t woc_graph_vertex_count(const struct WocGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t woc_graph_edge_count(const struct WocGraph *graph);

/**
 * Weakly connected components, ignoring isolated vertices.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t woc_graph_component_count(const struct WocGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
bool woc_graph_is_balanced(const struct WocGraph *graph);

/**
 * Graphviz rendering; release with [`woc_string_free`]. Null on failure.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
char *woc_graph_dot(const struct WocGraph *graph);

/**
 * # Safety
 * `graph` must come from [`woc_graph_build`] and not be used afterwards.
 */
void woc_graph_free(struct WocGraph *graph);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void woc_string_free(char *s);

/**
 * Parses a relation like `"2 < 1 = 3"` into its height word, written to
 * `buf` with the same sizing rules as [`woc_cycle_symbols`].
 *
 * # Safety
 * `text` must be NUL-terminated, `buf` valid for `cap` writes, `written`
 * writable.
 */
enum WocStatus woc_parse_relation(const char *text, uint32_t *buf, size_t cap, size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEAKORDER_CYCLES_H */
