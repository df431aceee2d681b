/*
 * C interface of the adsp solver: decide whether prescribed conjugacy
 * classes admit an irreducible zero-sum matrix tuple, construct the
 * solution in the rigid case, and verify candidates.
 *
 * Every operation returns a status code: 0 success, 1 invalid input,
 * 2 internal error, 3 resource cap exceeded.  See adsp_last_error for
 * the message accompanying a failure.
 */

#ifndef ADSP_H
#define ADSP_H

/* Generated from the adsp-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Opaque parsed instance: a tuple of conjugacy classes plus the mode
// hint from the file, if any.
typedef struct AdspInstance AdspInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse an instance document (same JSON schema as the command-line
// `decide` input) into a handle written to `*out`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer.  On success the handle must eventually be released with
// [`adsp_instance_free`].
int32_t adsp_instance_parse(const char *json, struct AdspInstance **out);

// Release a handle returned by [`adsp_instance_parse`].  Null is a
// no-op.
//
// # Safety
// `inst` must be a handle from [`adsp_instance_parse`] not freed
// before, or null.
void adsp_instance_free(struct AdspInstance *inst);

// Decide existence of an irreducible solution.  `mode`: 0 auto,
// 1 general, 2 nilpotent, 3 generic; a mode hint stored in the instance
// applies when `mode` is 0.  `box_cap` of 0 means the default cap.  On
// success `*out_json` receives the decision document.
//
// # Safety
// `inst` must be a live handle; `out_json` must be a valid pointer.  A
// returned string must be released with [`adsp_string_free`].
int32_t adsp_decide(const struct AdspInstance *inst,
                    int32_t mode,
                    uint64_t box_cap,
                    char **out_json);

// Report rigidity: `*out_rigid` becomes 1 when the instance has exactly
// one irreducible solution up to conjugation, else 0.
//
// # Safety
// `inst` must be a live handle; `out_rigid` must be a valid pointer.
int32_t adsp_rigid(const struct AdspInstance *inst, uint64_t box_cap, int32_t *out_rigid);

// Construct the unique irreducible solution of a rigid instance.  On
// success `*out_json` receives a `{"matrices": …}` document.
//
// # Safety
// `inst` must be a live handle; `out_json` must be a valid pointer.  A
// returned string must be released with [`adsp_string_free`].
int32_t adsp_construct(const struct AdspInstance *inst, uint64_t box_cap, char **out_json);

// Check a candidate solution against the instance.  `*out_json`
// receives `{"classes_ok": …, "sum_zero": …, "irreducible": …}`; the
// status is 0 even when the verdicts are negative.
//
// # Safety
// `inst` must be a live handle; `solution_json` a valid NUL-terminated
// string; `out_json` a valid pointer.  A returned string must be
// released with [`adsp_string_free`].
int32_t adsp_verify(const struct AdspInstance *inst, const char *solution_json, char **out_json);

// Root-system introspection: `α`, `λ`, root class, defect `p(α)`, and
// the number of admissible roots below `α`.
//
// # Safety
// `inst` must be a live handle; `out_json` must be a valid pointer.  A
// returned string must be released with [`adsp_string_free`].
int32_t adsp_roots(const struct AdspInstance *inst, uint64_t box_cap, char **out_json);

// Release a string returned by any of the operations.  Null is a no-op.
//
// # Safety
// `s` must be a string returned by this library not freed before, or
// null.
void adsp_string_free(char *s);

// Message for the most recent failure on this thread, empty after a
// success.  The pointer stays valid until the next library call on the
// same thread; do not free it.
const char *adsp_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADSP_H */
