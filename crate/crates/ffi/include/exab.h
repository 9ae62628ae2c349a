#ifndef EXAB_H
#define EXAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ExabStatus {
  EXAB_STATUS_OK = 0,
  // A verification ran and reported a failure; the report is in the output.
  EXAB_STATUS_FAIL = 1,
  EXAB_STATUS_INPUT_ERROR = 2,
  EXAB_STATUS_LABELING_ERROR = 3,
  EXAB_STATUS_NULL_POINTER = 4,
  EXAB_STATUS_INVALID_UTF8 = 5,
  EXAB_STATUS_PANIC = 6,
} ExabStatus;

typedef struct ExabArrangement ExabArrangement;

// A validated graded poset together with the file it was read from.
typedef struct ExabPoset ExabPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error message on this thread, or null. Owned by the library and
// valid until the next call on the same thread.
const char *exab_last_error(void);

// Library version as a static string.
const char *exab_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void exab_string_free(char *s);

// Parses and validates a poset file held in memory. Inputs above the
// `EXAB_MAX_RANK` limit are refused unless `force` is set.
//
// # Safety
// `json` must be a nul-terminated string and `out` valid for writes.
enum ExabStatus exab_poset_from_json(const char *json, bool force, struct ExabPoset **out);

// # Safety
// `p` must be null or a handle from [`exab_poset_from_json`] not yet freed.
void exab_poset_free(struct ExabPoset *p);

// # Safety
// `p` must be a live handle and `rank` valid for writes.
enum ExabStatus exab_poset_rank(const struct ExabPoset *p, size_t *rank);

// Computes `op` (`poincare`, `ab`, `extab`, `pullback`, `num`, `cd`,
// `iota-extab`) and writes the rendered polynomial to `*out`. `labeling` is
// `file`, `min-atom`, `none`, or null for the default.
//
// # Safety
// `p` must be a live handle, the strings nul-terminated, `out` valid for writes.
enum ExabStatus exab_poset_compute(const struct ExabPoset *p,
                                   const char *op,
                                   const char *labeling,
                                   bool json,
                                   char **out);

// Runs the comma-separated `checks` (null means `all`) and writes the report
// to `*out`. Returns `EXAB_STATUS_FAIL` when any check fails.
//
// # Safety
// As [`exab_poset_compute`].
enum ExabStatus exab_poset_verify(const struct ExabPoset *p,
                                  const char *checks,
                                  bool json,
                                  char **out);

// Parses `{"dim": d, "normals": [...]}`.
//
// # Safety
// As [`exab_poset_from_json`].
enum ExabStatus exab_arrangement_from_json(const char *json,
                                           bool force,
                                           struct ExabArrangement **out);

// # Safety
// `a` must be null or a handle from [`exab_arrangement_from_json`] not yet freed.
void exab_arrangement_free(struct ExabArrangement *a);

// Runs `op` (`flats`, `faces`, `check-pullback`, `fibers`) and writes the
// result to `*out`.
//
// # Safety
// `a` must be a live handle, `op` nul-terminated, `out` valid for writes.
enum ExabStatus exab_arrangement_run(const struct ExabArrangement *a,
                                     const char *op,
                                     bool json,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXAB_H */
