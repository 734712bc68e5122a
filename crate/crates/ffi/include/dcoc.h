#ifndef DCOC_H
#define DCOC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. `Ok` and `No` are answers; everything else is an error.
 */
typedef enum DcocStatus {
  /**
   * Success, or a YES answer.
   */
  DCOC_STATUS_OK = 0,
  /**
   * A NO answer; not an error.
   */
  DCOC_STATUS_NO = 1,
  DCOC_STATUS_NULL_POINTER = 2,
  DCOC_STATUS_INVALID_UTF8 = 3,
  DCOC_STATUS_PARSE = 4,
  DCOC_STATUS_VERTEX_OUT_OF_RANGE = 5,
  DCOC_STATUS_INVALID_DIGRAPH = 6,
  DCOC_STATUS_NOT_SEMICOMPLETE = 7,
  DCOC_STATUS_TOO_LARGE = 8,
  DCOC_STATUS_INVALID_ARGUMENT = 9,
  DCOC_STATUS_ORACLE_GUARD = 10,
  DCOC_STATUS_PANIC = 11,
  DCOC_STATUS_OTHER = 12,
} DcocStatus;

/**
 * Opaque digraph handle.
 */
typedef struct DcocDigraph DcocDigraph;

/**
 * Opaque solution handle: a deletion set found by [`dcoc_solve`].
 */
typedef struct DcocSolution DcocSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *dcoc_version(void);

/**
 * Message for the last error on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *dcoc_last_error_message(void);

/**
 * Parses the edge-list text format into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum DcocStatus dcoc_digraph_parse(const char *text, struct DcocDigraph **out);

/**
 * Builds a digraph on `n` vertices from `m` arcs `tails[i] -> heads[i]`.
 *
 * # Safety
 * `tails` and `heads` must point to `m` readable values (or be null with
 * `m == 0`); `out` must be a valid pointer.
 */
enum DcocStatus dcoc_digraph_from_arcs(size_t n,
                                       const uint32_t *tails,
                                       const uint32_t *heads,
                                       size_t m,
                                       struct DcocDigraph **out);

/**
 * Releases a digraph handle. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be freed twice.
 */
void dcoc_digraph_free(struct DcocDigraph *d);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t dcoc_digraph_vertex_count(const struct DcocDigraph *d);

/**
 * Number of arcs; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t dcoc_digraph_arc_count(const struct DcocDigraph *d);

/**
 * False for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
bool dcoc_digraph_is_semicomplete(const struct DcocDigraph *d);

/**
 * Size of the largest strong component after deleting `removed`.
 *
 * # Safety
 * `d` must be a live handle, `removed` must point to `len` values (or be
 * null with `len == 0`) and `out` must be valid.
 */
enum DcocStatus dcoc_digraph_mco(const struct DcocDigraph *d,
                                 const uint32_t *removed,
                                 size_t len,
                                 size_t *out);

/**
 * `Ok` if deleting `x` (at most `k` vertices) leaves every strong component
 * with at most `ell` vertices, `No` otherwise.
 *
 * # Safety
 * As [`dcoc_digraph_mco`].
 */
enum DcocStatus dcoc_verify(const struct DcocDigraph *d,
                            size_t ell,
                            size_t k,
                            const uint32_t *x,
                            size_t len);

/**
 * Decides the instance on a semicomplete digraph. On `Ok` a new solution
 * handle is stored in `*out`; on `No` or an error `*out` is set to null.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum DcocStatus dcoc_solve(const struct DcocDigraph *d,
                           size_t ell,
                           size_t k,
                           struct DcocSolution **out);

/**
 * Minimum number of deletions on a semicomplete digraph, stored in `*out`
 * when it is at most `k`; `No` otherwise.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum DcocStatus dcoc_min_cost(const struct DcocDigraph *d, size_t ell, size_t k, size_t *out);

/**
 * Exact optimum by exhaustive search over sets of size at most `cap`, for
 * any digraph with at most 24 vertices.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum DcocStatus dcoc_oracle_optimum(const struct DcocDigraph *d,
                                    size_t ell,
                                    size_t cap,
                                    size_t *out);

/**
 * Size of the deletion set; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t dcoc_solution_cost(const struct DcocSolution *s);

/**
 * Copies up to `cap` witness vertices (ascending) into `buf` and returns
 * the full witness length.
 *
 * # Safety
 * `s` must be null or a live handle; `buf` must have room for `cap` values
 * (or be null with `cap == 0`).
 */
size_t dcoc_solution_witness(const struct DcocSolution *s, uint32_t *buf, size_t cap);

/**
 * Releases a solution handle. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void dcoc_solution_free(struct DcocSolution *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DCOC_H */
