/* C interface to the collapse-lab contractibility engine. */

#ifndef COLLAPSE_LAB_H
#define COLLAPSE_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum ClStatus {
  ClStatusOk = 0,
  // Malformed graph6 or edge input.
  ClStatusParse = 1,
  // Structurally invalid request (vertex out of range, empty graph, ...).
  ClStatusGraph = 2,
  // More than 64 vertices.
  ClStatusCapacity = 3,
  ClStatusNullPointer = 4,
} ClStatus;

// Opaque graph handle.
typedef struct ClGraph ClGraph;

// Opaque decision-engine handle; holds the memoization caches, so reuse
// one kernel across calls for speed. Safe to share across threads.
typedef struct ClKernel ClKernel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse one graph6 record into a new graph handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum ClStatus cl_graph_parse_g6(const char *text, struct ClGraph **out);

// Build a graph from an edge list given as parallel endpoint arrays.
//
// # Safety
// `us` and `vs` must point at `edge_count` readable elements each.
enum ClStatus cl_graph_from_edges(uint32_t vertex_count,
                                  const uint32_t *us,
                                  const uint32_t *vs,
                                  uintptr_t edge_count,
                                  struct ClGraph **out);

// # Safety
// `graph` must come from this library and not have been freed.
void cl_graph_free(struct ClGraph *graph);

// # Safety
// `graph` must be a live handle.
uint32_t cl_graph_vertex_count(const struct ClGraph *graph);

// # Safety
// `graph` must be a live handle.
uint32_t cl_graph_edge_count(const struct ClGraph *graph);

// Canonical graph6 form as a newly allocated string.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum ClStatus cl_graph_canonical_g6(const struct ClGraph *graph, char **out);

struct ClKernel *cl_kernel_new(void);

// # Safety
// `kernel` must come from `cl_kernel_new` and not have been freed.
void cl_kernel_free(struct ClKernel *kernel);

// Exact strong vertex contractibility.
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_svic_exact(const struct ClKernel *kernel, const struct ClGraph *graph, bool *out);

// Exact strong contractibility.
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_sic_exact(const struct ClKernel *kernel, const struct ClGraph *graph, bool *out);

// Greedy 0-dismantlability (order-free, exact for the class).
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_dismantlable0(const struct ClKernel *kernel,
                               const struct ClGraph *graph,
                               bool *out);

// Trivial reduced homology of the clique complex.
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_trivial_homology(const struct ClKernel *kernel,
                                  const struct ClGraph *graph,
                                  bool *out);

// k-dismantlability at a given level.
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_k_dismantlable(const struct ClKernel *kernel,
                                const struct ClGraph *graph,
                                uint32_t level,
                                bool *out);

// Full classification as a JSON object (same schema as the CLI).
//
// # Safety
// `kernel` and `graph` must be live handles and `out` valid.
enum ClStatus cl_classify_json(const struct ClKernel *kernel,
                               const struct ClGraph *graph,
                               bool strict_pseudocode,
                               char **out);

// Reduced homology (Betti numbers and torsion) as a JSON object.
//
// # Safety
// `graph` must be a live handle and `out` valid.
enum ClStatus cl_homology_json(const struct ClGraph *graph, char **out);

// Release a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void cl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COLLAPSE_LAB_H */
