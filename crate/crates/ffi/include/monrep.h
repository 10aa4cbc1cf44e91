#ifndef MONREP_H
#define MONREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MonrepStatus {
  MONREP_STATUS_OK = 0,
  MONREP_STATUS_NULL_POINTER = 1,
  MONREP_STATUS_INVALID_UTF8 = 2,
  MONREP_STATUS_PARSE = 3,
  MONREP_STATUS_VALIDATION = 4,
  MONREP_STATUS_NOT_FOUND = 5,
  MONREP_STATUS_MODE_MISMATCH = 6,
  MONREP_STATUS_BUFFER_TOO_SMALL = 7,
  MONREP_STATUS_INTERNAL = 8,
} MonrepStatus;

typedef enum MonrepMode {
  MONREP_MODE_AUTO = 0,
  MONREP_MODE_SEMISIMPLE = 1,
  MONREP_MODE_SELF_INJECTIVE = 2,
  MONREP_MODE_BOUNDED = 3,
} MonrepMode;

typedef enum MonrepVerdict {
  MONREP_VERDICT_GP = 0,
  MONREP_VERDICT_NOT_GP = 1,
  MONREP_VERDICT_UNKNOWN = 2,
} MonrepVerdict;

/**
 * A parsed and validated instance file.
 */
typedef struct MonrepInstance MonrepInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next failing call on the same thread.
 */
const char *monrep_last_error(void);

/**
 * Library version as a static string.
 */
const char *monrep_version(void);

/**
 * Parses and validates instance-file text.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum MonrepStatus monrep_instance_parse(const char *text, struct MonrepInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `inst` must come from `monrep_instance_parse` and not be used afterwards.
 */
void monrep_instance_free(struct MonrepInstance *inst);

/**
 * Number of vertices of the quiver.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MonrepStatus monrep_vertex_count(const struct MonrepInstance *inst, size_t *out);

/**
 * Dimensions of the branch of representation `name` at vertex index
 * `vertex`, one per vertex of the base algebra. `len` receives the count
 * even when `cap` is too small.
 *
 * # Safety
 * Pointers must be valid; `dims` must hold `cap` entries.
 */
enum MonrepStatus monrep_branch_dims(const struct MonrepInstance *inst,
                                     const char *name,
                                     size_t vertex,
                                     size_t *dims,
                                     size_t cap,
                                     size_t *len);

/**
 * Whether representation `name` satisfies (m1) and (m2).
 *
 * # Safety
 * Pointers must be valid.
 */
enum MonrepStatus monrep_check_monic(const struct MonrepInstance *inst,
                                     const char *name,
                                     bool *out);

/**
 * Gorenstein-projectivity of representation `name`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MonrepStatus monrep_check_gp(const struct MonrepInstance *inst,
                                  const char *name,
                                  enum MonrepMode mode,
                                  size_t depth,
                                  uint64_t seed,
                                  enum MonrepVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONREP_H */
