/* C interface to the qcjt library.  Generated; do not edit. */

#ifndef QCJT_H
#define QCJT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible interface function.
typedef enum QcjtStatus {
  QCJT_STATUS_OK = 0,
  // A parameter fails its precondition (bad prime, zero lambda, range).
  QCJT_STATUS_BAD_PARAMETER = 1,
  // The module data violates the defining relations.
  QCJT_STATUS_VALIDATION = 2,
  // The requested procedure is not defined for this input.
  QCJT_STATUS_UNAVAILABLE = 3,
  // A dimension or scan guard refused the computation.
  QCJT_STATUS_SIZE_GUARD = 4,
  // Malformed JSON or an I/O failure.
  QCJT_STATUS_JSON = 5,
  QCJT_STATUS_NULL_POINTER = 6,
  // A string argument is not valid UTF-8.
  QCJT_STATUS_UTF8 = 7,
  QCJT_STATUS_INTERNAL = 8,
} QcjtStatus;

// Opaque handle to a module representation.
typedef struct QcjtModule QcjtModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty before the
// first failure.  Valid until the next failing call on the same thread.
const char *qcjt_last_error(void);

// Releases a string returned by this interface.  NULL is ignored.
void qcjt_string_free(char *s);

// Releases a module handle.  NULL is ignored.
void qcjt_module_free(struct QcjtModule *m);

// Parses and validates module JSON into a fresh handle.
enum QcjtStatus qcjt_module_from_json(const char *json_text, struct QcjtModule **out);

// Serializes the module to its canonical JSON.
enum QcjtStatus qcjt_module_to_json(const struct QcjtModule *m, char **out);

// Vector-space dimension of the module; 0 for NULL.
uint64_t qcjt_module_dim(const struct QcjtModule *m);

// Jordan type at the point lambda (packed field encodings, one per
// generator), in compressed notation such as `[1] [2] [3]`.
enum QcjtStatus qcjt_jordan_type(const struct QcjtModule *m,
                                 const uint64_t *lambda,
                                 size_t len,
                                 char **out);

// Constant-Jordan-type verdict: the symbolic certificate for two
// generators with a scan of extensions up to `e_max` as fallback.
// Writes 1 or 0 to `is_constant` and the verdict JSON to `out`.
enum QcjtStatus qcjt_constant_type(const struct QcjtModule *m,
                                   uint32_t e_max,
                                   int32_t *is_constant,
                                   char **out);

// Syzygy (positive index) or cosyzygy (negative index) as a new handle;
// index 0 copies the module.
enum QcjtStatus qcjt_syzygy(const struct QcjtModule *m, int64_t index, struct QcjtModule **out);

// First `count` Betti numbers of the minimal resolution, written to the
// caller's buffer.
enum QcjtStatus qcjt_betti(const struct QcjtModule *m, uint64_t *out, size_t count);

// Decides whether the module is a syzygy of the trivial module; writes
// `SyzygyOfK(i)`, `NotSyzygyOfK(reason)`, or `NotCertified(reason)`.
enum QcjtStatus qcjt_classify(const struct QcjtModule *m, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCJT_H */
