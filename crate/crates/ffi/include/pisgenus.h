#ifndef PISGENUS_H
#define PISGENUS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PisgenusStatus {
  PISGENUS_STATUS_OK = 0,
  PISGENUS_STATUS_NULL_ARGUMENT = 1,
  PISGENUS_STATUS_INVALID_UTF8 = 2,
  PISGENUS_STATUS_PARSE = 3,
  PISGENUS_STATUS_UNSUPPORTED = 4,
  PISGENUS_STATUS_NOT_LOCAL = 5,
  PISGENUS_STATUS_BUDGET_EXHAUSTED = 6,
  PISGENUS_STATUS_CERTIFICATE_REJECTED = 7,
  PISGENUS_STATUS_MALFORMED_INPUT = 8,
  PISGENUS_STATUS_IO = 9,
  PISGENUS_STATUS_INTERNAL = 10,
} PisgenusStatus;

typedef enum PisgenusVerdict {
  PISGENUS_VERDICT_CONFIRMED = 0,
  PISGENUS_VERDICT_LOWER_ONLY = 1,
  PISGENUS_VERDICT_MISMATCH = 2,
} PisgenusVerdict;

/**
 * Opaque handle to a ring with its ideal lattice and PIS graph.
 */
typedef struct PisgenusInstance PisgenusInstance;

/**
 * Search limits; a `time_ms` of 0 means no wall-clock limit.
 */
typedef struct PisgenusBudget {
  uint64_t time_ms;
  uint64_t nodes;
  uint64_t seed;
} PisgenusBudget;

/**
 * `has_upper` is 0 when no embedding was found.
 */
typedef struct PisgenusBounds {
  uint64_t lower;
  uint64_t upper;
  uint8_t has_upper;
} PisgenusBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct PisgenusBudget pisgenus_budget_default(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *pisgenus_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void pisgenus_string_free(char *s);

/**
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PisgenusStatus pisgenus_instance_new(const char *spec, struct PisgenusInstance **out);

/**
 * # Safety
 * `inst` must be null or a handle from [`pisgenus_instance_new`], freed once.
 */
void pisgenus_instance_free(struct PisgenusInstance *inst);

/**
 * # Safety
 * Pointers must be valid; `inst` from [`pisgenus_instance_new`].
 */
enum PisgenusStatus pisgenus_instance_size(const struct PisgenusInstance *inst,
                                           size_t *vertices,
                                           size_t *edges);

/**
 * PIS graph as a JSON graph document.
 *
 * # Safety
 * Pointers must be valid; free the result with [`pisgenus_string_free`].
 */
enum PisgenusStatus pisgenus_instance_graph_json(const struct PisgenusInstance *inst, char **out);

/**
 * Ideal lattice as a JSON document.
 *
 * # Safety
 * Pointers must be valid; free the result with [`pisgenus_string_free`].
 */
enum PisgenusStatus pisgenus_instance_lattice_json(const struct PisgenusInstance *inst, char **out);

/**
 * Certified genus bounds. `cert_json` may be null; otherwise it receives the certificate.
 *
 * # Safety
 * Pointers must be valid or null where allowed; `budget` may be null for defaults.
 */
enum PisgenusStatus pisgenus_genus_bounds(const struct PisgenusInstance *inst,
                                          const struct PisgenusBudget *budget,
                                          struct PisgenusBounds *out,
                                          char **cert_json);

/**
 * Prediction against certified bounds. `report_json` may be null.
 *
 * # Safety
 * Pointers must be valid or null where allowed; `budget` may be null for defaults.
 */
enum PisgenusStatus pisgenus_verify(const struct PisgenusInstance *inst,
                                    const struct PisgenusBudget *budget,
                                    enum PisgenusVerdict *verdict,
                                    char **report_json);

/**
 * Re-checks a certificate (bounds or report JSON) against a graph (JSON or edge list).
 *
 * # Safety
 * Strings must be NUL-terminated; `out` must be valid.
 */
enum PisgenusStatus pisgenus_check_certificate(const char *graph,
                                               const char *cert,
                                               struct PisgenusBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PISGENUS_H */
