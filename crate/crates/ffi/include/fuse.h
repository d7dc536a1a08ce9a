#ifndef FUSE_H
#define FUSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum FuseStatus {
  FUSE_STATUS_OK = 0,
  /**
   * A null pointer or a string that is not UTF-8.
   */
  FUSE_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A corpus file could not be read.
   */
  FUSE_STATUS_IO = 2,
  /**
   * The corpus has ERROR diagnostics.
   */
  FUSE_STATUS_INVALID_CORPUS = 3,
  /**
   * The query text did not parse, or named an unknown language.
   */
  FUSE_STATUS_QUERY = 4,
  /**
   * A bug in the library; the call had no effect.
   */
  FUSE_STATUS_INTERNAL = 5,
} FuseStatus;

/**
 * Opaque handle to a validated corpus.
 */
typedef struct FuseCorpus FuseCorpus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads and validates the corpus described by `manifest`.
 *
 * On success `*out` receives a handle to free with `fuse_corpus_free`. On
 * failure `*out` is set to NULL and the diagnostics are available from
 * `fuse_last_error_message`.
 *
 * # Safety
 * `manifest` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FuseStatus fuse_corpus_load(const char *manifest, struct FuseCorpus **out);

/**
 * Releases a handle from `fuse_corpus_load`. NULL is ignored.
 *
 * # Safety
 * `corpus` must come from `fuse_corpus_load` and not be used afterwards.
 */
void fuse_corpus_free(struct FuseCorpus *corpus);

/**
 * Validates the corpus at `manifest` and writes every diagnostic (TSV
 * lines) to `*diagnostics`. Returns `FUSE_STATUS_OK` when there is no
 * ERROR.
 *
 * # Safety
 * `manifest` must be a NUL-terminated string and `diagnostics` a valid
 * pointer.
 */
enum FuseStatus fuse_validate(const char *manifest, char **diagnostics);

/**
 * Runs `query` and writes the result rows to `*out`, as TSV with a header
 * or as JSON lines when `json` is true.
 *
 * # Safety
 * `corpus` must be a live handle, `query` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum FuseStatus fuse_corpus_query(const struct FuseCorpus *corpus,
                                  const char *query,
                                  bool json,
                                  char **out);

/**
 * Writes corpus statistics to `*out`.
 *
 * # Safety
 * `corpus` must be a live handle and `out` a valid pointer.
 */
enum FuseStatus fuse_corpus_stats(const struct FuseCorpus *corpus, bool json, char **out);

/**
 * Ranks role names for predicate group `group` in language `lang`.
 * `used` is a comma-separated list of roles to skip and may be NULL.
 *
 * # Safety
 * `corpus` must be a live handle; the strings NUL-terminated (or `used`
 * NULL); `out` a valid pointer.
 */
enum FuseStatus fuse_corpus_suggest(const struct FuseCorpus *corpus,
                                    const char *lang,
                                    const char *group,
                                    const char *used,
                                    bool json,
                                    char **out);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call on the same thread.
 */
const char *fuse_last_error_message(void);

/**
 * Releases a string returned through an `out` parameter. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void fuse_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *fuse_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSE_H */
