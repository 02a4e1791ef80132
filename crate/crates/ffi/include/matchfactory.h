#ifndef MATCHFACTORY_H
#define MATCHFACTORY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MfStatus {
  MF_STATUS_OK = 0,
  MF_STATUS_NULL_POINTER = 1,
  MF_STATUS_INVALID_UTF8 = 2,
  MF_STATUS_PARSE = 3,
  MF_STATUS_INVALID_ARGUMENT = 4,
  MF_STATUS_CONSTRUCTION = 5,
  MF_STATUS_PANIC = 6,
} MfStatus;

typedef enum MfVariant {
  MF_VARIANT_BASE = 0,
  MF_VARIANT_PRIME = 1,
  MF_VARIANT_DOUBLE_PRIME = 2,
  MF_VARIANT_TRIPLE_PRIME = 3,
} MfVariant;

typedef enum MfVerdict {
  MF_VERDICT_NO = 0,
  MF_VERDICT_YES = 1,
  MF_VERDICT_UNKNOWN = 2,
} MfVerdict;

/**
 * Opaque graph handle. Release with `mf_graph_free`.
 */
typedef struct MfGraph MfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mf_last_error(void);

/**
 * Parses the JSON edge-list document `{"n": .., "edges": [[a, b], ..]}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MfStatus mf_graph_parse(const char *text, struct MfGraph **out);

/**
 * Builds a graph from `edge_count` endpoint pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values (or be null when the count
 * is zero); `out` must be writable.
 */
enum MfStatus mf_graph_from_edges(size_t vertex_count,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct MfGraph **out);

/**
 * # Safety
 * `g` must be null or a handle returned by this library, freed at most once.
 */
void mf_graph_free(struct MfGraph *g);

/**
 * Serializes to the JSON edge-list document. Free the result with
 * `mf_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum MfStatus mf_graph_serialize(const struct MfGraph *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void mf_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
enum MfStatus mf_graph_counts(const struct MfGraph *g, size_t *vertex_count, size_t *edge_count);

/**
 * Endpoints of edge `edge`.
 *
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
enum MfStatus mf_graph_endpoints(const struct MfGraph *g, size_t edge, size_t *a, size_t *b);

/**
 * # Safety
 * `out` must be writable.
 */
enum MfStatus mf_construct_petersen(struct MfGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MfStatus mf_construct_p(size_t k, struct MfGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MfStatus mf_construct_h(size_t k, enum MfVariant variant, struct MfGraph **out);

/**
 * The r-graph for `r >= 4` together with the edge connectivity it is built
 * to have. `claimed_connectivity` may be null.
 *
 * # Safety
 * `out` must be writable; `claimed_connectivity` must be null or writable.
 */
enum MfStatus mf_counterexample(size_t r, struct MfGraph **out, size_t *claimed_connectivity);

/**
 * Sets `*regular` and, when regular, `*degree`.
 *
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
enum MfStatus mf_is_regular(const struct MfGraph *g, bool *regular, size_t *degree);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum MfStatus mf_edge_connectivity(const struct MfGraph *g, size_t *out);

/**
 * Sets `*is_r_graph` and, when true, `*r`.
 *
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
enum MfStatus mf_is_r_graph(const struct MfGraph *g, bool *is_r_graph, size_t *r);

/**
 * Weight of a minimum odd cut. Fails on odd order or a disconnected graph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum MfStatus mf_min_odd_cut(const struct MfGraph *g, size_t *out);

/**
 * Decides whether `m` pairwise disjoint perfect matchings exist. Zero for
 * `max_nodes` or a non-positive `max_seconds` means no limit; an exhausted
 * budget yields `MF_VERDICT_UNKNOWN`.
 *
 * # Safety
 * `g` must be a live handle; `verdict` must be writable; `nodes` must be
 * null or writable.
 */
enum MfStatus mf_has_disjoint_pms(const struct MfGraph *g,
                                  size_t m,
                                  uint64_t max_nodes,
                                  double max_seconds,
                                  enum MfVerdict *verdict,
                                  uint64_t *nodes);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MATCHFACTORY_H */
