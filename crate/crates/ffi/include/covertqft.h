/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef COVERTQFT_H
#define COVERTQFT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of a call.
 */
typedef enum CqStatus {
  CQ_STATUS_OK = 0,
  CQ_STATUS_NULL_POINTER = 1,
  CQ_STATUS_INVALID_ARGUMENT = 2,
  CQ_STATUS_PARSE = 3,
  CQ_STATUS_DEGREE_MISMATCH = 4,
  CQ_STATUS_ORACLE_BOUND = 5,
  CQ_STATUS_VERIFICATION = 6,
  CQ_STATUS_INTERNAL = 7,
  CQ_STATUS_PANIC = 8,
} CqStatus;

/*
 Opaque character table of `S_d`.
 */
typedef struct CqCharTable CqCharTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *cq_last_error(void);

/*
 Release a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void cq_string_free(char *s);

/*
 Library version, a static string.
 */
const char *cq_version(void);

/*
 JSON list of the partitions of `d` with hooklengths, content, n, dim and
 q-dimension (same shape as `covertqft partitions`).

 # Safety
 `out` must be valid for one pointer write.
 */
enum CqStatus cq_partitions_json(uint32_t d, char **out);

/*
 Character table of `S_d`; release with [`cq_chartable_free`].

 # Safety
 `out` must be valid for one pointer write.
 */
enum CqStatus cq_chartable_new(uint32_t d, struct CqCharTable **out);

/*
 # Safety
 `t` must be null or a live handle from [`cq_chartable_new`].
 */
void cq_chartable_free(struct CqCharTable *t);

/*
 Number of rows (and columns); 0 for a null handle.

 # Safety
 `t` must be null or a live handle.
 */
size_t cq_chartable_size(const struct CqCharTable *t);

/*
 Entry `χ_{row}(col)`; rows start at the trivial representation, columns
 at the identity class.

 # Safety
 `t` must be a live handle and `out` valid for one write.
 */
enum CqStatus cq_chartable_entry(const struct CqCharTable *t, size_t row, size_t col, int64_t *out);

/*
 Label of a row (`is_row != 0`) or column, such as `2+1`.

 # Safety
 `t` must be a live handle and `out` valid for one write.
 */
enum CqStatus cq_chartable_label(const struct CqCharTable *t,
                                 size_t index,
                                 int32_t is_row,
                                 char **out);

/*
 Hurwitz number as an exact fraction string. `classes` holds partitions
 separated by `;` (for example `"2+1;3"`), or is empty.

 # Safety
 `classes` must be a nul-terminated string and `out` valid for one write.
 */
enum CqStatus cq_hurwitz(uint32_t d,
                         uint32_t g,
                         const char *classes,
                         uint32_t simple,
                         int32_t connected,
                         char **out);

/*
 Closed anti-diagonal invariant as a JSON record; `order > 0` adds the
 `u`-expansion to that order instead of the `Q` form.

 # Safety
 `out` must be valid for one write.
 */
enum CqStatus cq_antid_json(uint32_t d,
                            uint32_t g,
                            int64_t k1,
                            int64_t k2,
                            int64_t order,
                            char **out);

/*
 Check the fibre relation for degree `d` through `u^order`; `*passed` is
 1 when the residual vanishes.

 # Safety
 `passed` must be valid for one write.
 */
enum CqStatus cq_relfin(uint32_t d, int64_t order, int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COVERTQFT_H */
