/* C ABI for the similog possibilistic reasoning library. */

#ifndef SIMILOG_H
#define SIMILOG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum SimilogStatus {
  SIMILOG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SIMILOG_STATUS_NULL_POINTER = 1,
  /**
   * An input string was not valid UTF-8.
   */
  SIMILOG_STATUS_INVALID_UTF8 = 2,
  /**
   * The knowledge base or the query failed to parse.
   */
  SIMILOG_STATUS_PARSE_ERROR = 3,
  /**
   * The similarity relation (or other declared object) failed validation.
   */
  SIMILOG_STATUS_VALIDATION_ERROR = 4,
  /**
   * The query could not be evaluated.
   */
  SIMILOG_STATUS_EVAL_ERROR = 5,
  /**
   * The query result is a world set, not a number.
   */
  SIMILOG_STATUS_NOT_NUMERIC = 6,
  /**
   * A scalar argument (epsilon, t-norm name) was out of range.
   */
  SIMILOG_STATUS_INVALID_ARGUMENT = 7,
} SimilogStatus;

/**
 * Opaque knowledge-base handle.
 */
typedef struct SimilogKb SimilogKb;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a knowledge-base text into a new handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated string and `out` to writable
 * pointer storage; both must stay valid for the duration of the call.
 */
enum SimilogStatus similog_kb_parse(const char *text, struct SimilogKb **out);

/**
 * Releases a knowledge-base handle. A null handle is a no-op.
 *
 * # Safety
 * `kb` must be a handle returned by this library and not yet freed.
 */
void similog_kb_free(struct SimilogKb *kb);

/**
 * Overrides the handle's t-norm (`"min"`, `"lukasiewicz"`, `"product"`).
 *
 * # Safety
 * `kb` must be a live handle from this library; `name` a NUL-terminated
 * string.
 */
enum SimilogStatus similog_kb_set_tnorm(struct SimilogKb *kb, const char *name);

/**
 * Validates the handle's similarity relation at tolerance `epsilon`.
 *
 * # Safety
 * `kb` must be a live handle from this library.
 */
enum SimilogStatus similog_kb_validate(const struct SimilogKb *kb, double epsilon);

/**
 * Computes the transitive closure, returning a new handle whose similarity
 * matrix is closed. `raised_out` (optional) receives the number of raised
 * entries.
 *
 * # Safety
 * `kb` must be a live handle; `out` must point to writable pointer storage;
 * `raised_out` may be null.
 */
enum SimilogStatus similog_kb_close(const struct SimilogKb *kb,
                                    double epsilon,
                                    struct SimilogKb **out,
                                    uintptr_t *raised_out);

/**
 * Serializes the knowledge base into its canonical text form.
 *
 * # Safety
 * `kb` must be a live handle; `out` must point to writable pointer storage.
 */
enum SimilogStatus similog_kb_serialize(const struct SimilogKb *kb, char **out);

/**
 * Exports the knowledge base as a JSON document (world labels, similarity
 * matrix, propositions, tight necessity/possibility values).
 *
 * # Safety
 * `kb` must be a live handle; `out` must point to writable pointer storage.
 */
enum SimilogStatus similog_kb_export_json(const struct SimilogKb *kb, double epsilon, char **out);

/**
 * Evaluates a numeric query (`I`, `C`, `nec`, `poss`, `gmp_nec`,
 * `gmp_poss`); truth-valued queries yield 1.0 or 0.0. World-set queries
 * (`pi`) return `SIMILOG_STATUS_NOT_NUMERIC` — use
 * [`similog_query_json`] for those.
 *
 * # Safety
 * `kb` must be a live handle; `query` a NUL-terminated string; `value_out`
 * must point to writable storage.
 */
enum SimilogStatus similog_query_number(const struct SimilogKb *kb,
                                        const char *query,
                                        double epsilon,
                                        double *value_out);

/**
 * Evaluates any query and returns the structured JSON record (including the
 * witness) as a string.
 *
 * # Safety
 * `kb` must be a live handle; `query` a NUL-terminated string; `out` must
 * point to writable pointer storage.
 */
enum SimilogStatus similog_query_json(const struct SimilogKb *kb,
                                      const char *query,
                                      double epsilon,
                                      char **out);

/**
 * Releases a string returned by this library. A null pointer is a no-op.
 *
 * # Safety
 * `s` must be a string returned by this library and not yet freed.
 */
void similog_string_free(char *s);

/**
 * Returns a copy of the last error message recorded on this thread (empty
 * string if none). The caller frees it with [`similog_string_free`].
 */
char *similog_last_error_message(void);

/**
 * The library version as a static string; do not free.
 */
const char *similog_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SIMILOG_H */
