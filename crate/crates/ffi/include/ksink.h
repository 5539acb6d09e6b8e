#ifndef KSINK_H
#define KSINK_H

/* This header is generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code returned by every `ksink_*` call.
 */
typedef enum {
  KSINK_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  KSINK_STATUS_NULL_ARGUMENT = 1,
  /*
   An input string was not valid UTF-8.
   */
  KSINK_STATUS_INVALID_UTF8 = 2,
  /*
   A document or parameter failed to parse.
   */
  KSINK_STATUS_PARSE_ERROR = 3,
  /*
   The input parsed but is semantically invalid.
   */
  KSINK_STATUS_INVALID_INPUT = 4,
  /*
   The enumeration budget was exceeded.
   */
  KSINK_STATUS_BUDGET_EXCEEDED = 5,
  /*
   An unexpected internal failure.
   */
  KSINK_STATUS_INTERNAL_ERROR = 6,
} KsinkStatus;

/*
 Opaque handle to a parsed problem instance.
 */
typedef struct KsinkInstance KsinkInstance;

/*
 The message of the most recent failure on this thread. The pointer is
 owned by the library and stays valid until the next `ksink_*` call on
 the same thread; do not free it.
 */
const char *ksink_last_error_message(void);

/*
 Parses an instance document (JSON) into an opaque handle.

 # Safety
 `document_json` must point to a nul-terminated string and `out` to a
 writable pointer slot. On success `*out` owns the handle; release it
 with [`ksink_instance_free`].
 */
KsinkStatus ksink_instance_parse(const char *document_json, KsinkInstance **out);

/*
 Releases a handle returned by [`ksink_instance_parse`]. Null is a no-op.

 # Safety
 `instance` must be a pointer from [`ksink_instance_parse`] that has not
 been freed already.
 */
void ksink_instance_free(KsinkInstance *instance);

/*
 Approximate solve; writes the solution document JSON to `out_solution`.

 `epsilon` is an exact rational like `"1/4"` or `"0.25"`; `parallelism`
 is the worker count (0 is treated as 1) and does not change the output
 bytes.

 # Safety
 `instance` must be a live handle; `epsilon` a nul-terminated string;
 `out_solution` a writable slot. Free `*out_solution` with
 [`ksink_string_free`].
 */
KsinkStatus ksink_solve_fptas(const KsinkInstance *instance,
                              const char *epsilon,
                              uint32_t parallelism,
                              char **out_solution);

/*
 Exact solve; `budget` of 0 selects the default evaluation budget.

 # Safety
 As for [`ksink_solve_fptas`].
 */
KsinkStatus ksink_solve_exact(const KsinkInstance *instance,
                              uint64_t budget,
                              uint32_t parallelism,
                              char **out_solution);

/*
 Evaluates an explicit sink set given as whitespace-separated tokens
 (vertex names or `e<index>:<offset>`).

 # Safety
 As for [`ksink_solve_fptas`].
 */
KsinkStatus ksink_evaluate(const KsinkInstance *instance,
                           const char *sink_tokens,
                           char **out_solution);

/*
 Builds the sink-placement instance document of a hitting-set document.

 # Safety
 `hitting_set_json` must be nul-terminated; `out_instance` writable.
 Free `*out_instance` with [`ksink_string_free`].
 */
KsinkStatus ksink_generate_from_hitting_set(const char *hitting_set_json, char **out_instance);

/*
 Runs the hitting-set reduction equivalence check; writes 1 into
 `out_consistent` when both decision routes agree. `budget` of 0 selects
 the default.

 # Safety
 `hitting_set_json` must be nul-terminated; `out_consistent` writable.
 */
KsinkStatus ksink_verify_hitting_set(const char *hitting_set_json,
                                     uint64_t budget,
                                     uint8_t *out_consistent);

/*
 Releases a string returned through any out-parameter. Null is a no-op.

 # Safety
 `text` must come from this library and not have been freed already.
 */
void ksink_string_free(char *text);

#endif  /* KSINK_H */
