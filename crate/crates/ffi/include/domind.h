#ifndef DOMIND_H
#define DOMIND_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum DomindStatus {
  DOMIND_STATUS_OK = 0,
  /**
   * Input text could not be parsed as a graph.
   */
  DOMIND_STATUS_PARSE = 1,
  /**
   * The graph is outside the class the bounds require
   * (connected, non-complete, at least three vertices).
   */
  DOMIND_STATUS_CLASS = 2,
  /**
   * A required argument was NULL or not valid UTF-8.
   */
  DOMIND_STATUS_ARGUMENT = 3,
  /**
   * The requested bound name is unknown, or the bound does not apply
   * to this graph.
   */
  DOMIND_STATUS_UNSUPPORTED = 4,
  /**
   * An exact-solver or enumeration size limit was exceeded.
   */
  DOMIND_STATUS_LIMIT = 5,
  /**
   * Internal panic; the library state is still consistent.
   */
  DOMIND_STATUS_PANIC = 6,
} DomindStatus;

/**
 * Opaque graph handle.
 */
typedef struct DomindGraph DomindGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph6-encoded graph.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum DomindStatus domind_graph_parse_graph6(const char *text, struct DomindGraph **out);

/**
 * Parses the edge-list format (first line `n`, then `u v` lines).
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum DomindStatus domind_graph_parse_edge_list(const char *text, struct DomindGraph **out);

/**
 * Builds a named family member from a `family:params` spec such as
 * `star:100` or `cbip:2,1000`.
 *
 * # Safety
 * `spec` must be NUL-terminated; `out` must be writable.
 */
enum DomindStatus domind_graph_named(const char *spec, struct DomindGraph **out);

/**
 * Releases a graph handle. NULL is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be freed twice.
 */
void domind_graph_free(struct DomindGraph *graph);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void domind_string_free(char *s);

/**
 * Number of vertices.
 *
 * # Safety
 * `graph` must be a live handle from this library, or NULL.
 */
uint64_t domind_graph_order(const struct DomindGraph *graph);

/**
 * Number of edges.
 *
 * # Safety
 * `graph` must be a live handle from this library, or NULL.
 */
uint64_t domind_graph_size(const struct DomindGraph *graph);

/**
 * 1 when the graph is connected, non-complete and has at least three
 * vertices; 0 otherwise.
 *
 * # Safety
 * `graph` must be a live handle from this library, or NULL.
 */
int32_t domind_graph_in_class(const struct DomindGraph *graph);

/**
 * Computes one bound by name (`gamma_cssf`, `gamma_hm1`, `gamma_hm2`,
 * `gamma_hm3`, `alpha_cw`, `alpha_s`, `alpha_acl`, `alpha_hr`,
 * `alpha_hm`) and writes its exact value as a `num/den` string.
 *
 * # Safety
 * `graph` must be live; `name` NUL-terminated; `out_value` writable.
 */
enum DomindStatus domind_bound(const struct DomindGraph *graph, const char *name, char **out_value);

/**
 * Floor of a named bound (the integer compared in the domination
 * tables).
 *
 * # Safety
 * `graph` must be live; `name` NUL-terminated; `out` writable.
 */
enum DomindStatus domind_bound_floor(const struct DomindGraph *graph,
                                     const char *name,
                                     int64_t *out);

/**
 * Ceiling of a named bound (the integer compared in the independence
 * tables).
 *
 * # Safety
 * `graph` must be live; `name` NUL-terminated; `out` writable.
 */
enum DomindStatus domind_bound_ceil(const struct DomindGraph *graph,
                                    const char *name,
                                    int64_t *out);

/**
 * Exact domination number for graphs up to `max_n` vertices.
 *
 * # Safety
 * `graph` must be live; `out` must be writable.
 */
enum DomindStatus domind_exact_gamma(const struct DomindGraph *graph,
                                     uint32_t max_n,
                                     uint64_t *out);

/**
 * Exact independence number for graphs up to `max_n` vertices.
 *
 * # Safety
 * `graph` must be live; `out` must be writable.
 */
enum DomindStatus domind_exact_alpha(const struct DomindGraph *graph,
                                     uint32_t max_n,
                                     uint64_t *out);

/**
 * Evaluates every applicable bound and writes the full report as a JSON
 * object (the same schema the CLI emits). `oracle_max_n` enables the
 * exact solvers for graphs up to that size; pass 0 to skip them.
 *
 * # Safety
 * `graph` must be live; `out_json` must be writable.
 */
enum DomindStatus domind_report_json(const struct DomindGraph *graph,
                                     uint32_t oracle_max_n,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOMIND_H */
