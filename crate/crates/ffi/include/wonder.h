#ifndef WONDER_H
#define WONDER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WONDER_COMMAND_VALIDATE = 0,
  WONDER_COMMAND_POSET = 1,
  WONDER_COMMAND_NESTED = 2,
  WONDER_COMMAND_PRESENT = 3,
  WONDER_COMMAND_STRATUM = 4,
  WONDER_COMMAND_BETTI = 5,
  WONDER_COMMAND_CHECK = 6,
  WONDER_COMMAND_GOODFAN = 7,
  WONDER_COMMAND_GOODFAN_SEARCH = 8,
} WonderCommand;

typedef enum {
  WONDER_STATUS_OK = 0,
  /**
   * The computation ran and a check failed, or the input is inconsistent.
   */
  WONDER_STATUS_VALIDATION = 1,
  /**
   * The job document or an argument is malformed.
   */
  WONDER_STATUS_SCHEMA = 2,
  /**
   * The good-fan search ran out of subdivisions.
   */
  WONDER_STATUS_BUDGET = 3,
  WONDER_STATUS_NULL_POINTER = 4,
  WONDER_STATUS_INVALID_UTF8 = 5,
  /**
   * The output buffer is too short; the required length was written.
   */
  WONDER_STATUS_BUFFER_TOO_SMALL = 6,
  WONDER_STATUS_PANIC = 7,
} WonderStatus;

/**
 * A parsed and validated job document.
 */
typedef struct WonderJob WonderJob;

/**
 * A presentation of the integer cohomology of a model or a stratum.
 */
typedef struct WonderPresentation WonderPresentation;

/**
 * Optional overrides for [`wonder_job_run`]. Zero means "use the job file".
 */
typedef struct {
  size_t max_degree;
  size_t budget;
  uint64_t seed;
} WonderRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *wonder_last_error(void);

/**
 * Library version as a static string.
 */
const char *wonder_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void wonder_string_free(char *s);

/**
 * Parses a job document. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
WonderStatus wonder_job_from_json(const char *json, WonderJob **out);

/**
 * # Safety
 * `job` must be null or a handle from [`wonder_job_from_json`], not yet freed.
 */
void wonder_job_free(WonderJob *job);

/**
 * Runs a command and writes its JSON document to `*out_json` and whether
 * all checks passed to `*passed`. A failed check is not an error: the call
 * returns `WONDER_STATUS_OK` with `*passed` false. `nested` is required for
 * `WONDER_COMMAND_STRATUM` only; `options` may be null.
 *
 * # Safety
 * `job` must be a live handle; `nested` null or nul-terminated; `options`
 * null or readable; `out_json` and `passed` writable.
 */
WonderStatus wonder_job_run(const WonderJob *job,
                            WonderCommand command,
                            const char *nested,
                            const WonderRunOptions *options,
                            char **out_json,
                            bool *passed);

/**
 * Betti numbers of the model from the blowup formula, in even degrees.
 *
 * # Safety
 * `job` must be a live handle; `buf` must hold `cap` entries; `len` writable.
 */
WonderStatus wonder_job_betti(const WonderJob *job, int64_t *buf, size_t cap, size_t *len);

/**
 * Builds the presentation of the model, or of the stratum named by
 * `nested` (members `g1..`, rays `r0..`, comma separated) when non-null.
 *
 * # Safety
 * `job` must be a live handle; `nested` null or nul-terminated; `out` writable.
 */
WonderStatus wonder_presentation_new(const WonderJob *job,
                                     const char *nested,
                                     WonderPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from [`wonder_presentation_new`], not yet freed.
 */
void wonder_presentation_free(WonderPresentation *p);

/**
 * Ranks of the cohomology in degrees `0, 2, ..., 2 dim`.
 *
 * # Safety
 * `p` must be a live handle; `buf` must hold `cap` entries; `len` writable.
 */
WonderStatus wonder_presentation_hilbert(const WonderPresentation *p,
                                         size_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * Number of generators of the relation ideal.
 *
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
WonderStatus wonder_presentation_relation_count(const WonderPresentation *p, size_t *out);

/**
 * The presentation as a JSON document (same shape as `wonder present`).
 *
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
WonderStatus wonder_presentation_json(const WonderPresentation *p, char **out);

/**
 * The presentation as human-readable text.
 *
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
WonderStatus wonder_presentation_text(const WonderPresentation *p, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WONDER_H */
