#ifndef LTISTRUCT_H
#define LTISTRUCT_H

/* Generated by cbindgen; edit the Rust sources instead. */

#include <stddef.h>
#include <stdint.h>

typedef enum LtsStatus {
  LTS_STATUS_OK = 0,
  LTS_STATUS_NULL_POINTER = 1,
  LTS_STATUS_INVALID_UTF8 = 2,
  LTS_STATUS_PARSE = 3,
  LTS_STATUS_DIMENSION_MISMATCH = 4,
  LTS_STATUS_SINGULAR = 5,
  LTS_STATUS_INDEX_NOT_ZERO = 6,
  LTS_STATUS_NO_MANIFEST_OUTPUTS = 7,
  LTS_STATUS_ALGEBRAIC_LOOP = 8,
  LTS_STATUS_BAD_NODE = 9,
  LTS_STATUS_INVALID = 10,
  LTS_STATUS_PANIC = 11,
} LtsStatus;

/**
 * Opaque generalized realization.
 */
typedef struct LtsRealization LtsRealization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * call into the library from the same thread; never NULL.
 */
const char *lts_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void lts_string_free(char *s);

/**
 * Parses a realization document (JSON text).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LtsStatus lts_realization_parse(const char *json, struct LtsRealization **out);

/**
 * # Safety
 * `h` must be NULL or a handle from this library, not yet freed.
 */
void lts_realization_free(struct LtsRealization *h);

/**
 * Writes the state, auxiliary, input and output counts. Any output pointer
 * may be NULL.
 *
 * # Safety
 * `h` must be a live handle; non-NULL pointers must be writable.
 */
enum LtsStatus lts_realization_dims(const struct LtsRealization *h,
                                    uintptr_t *n,
                                    uintptr_t *l,
                                    uintptr_t *m,
                                    uintptr_t *p);

/**
 * Eliminates auxiliary variables, producing a new handle with `l = 0`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_minimize(const struct LtsRealization *h, struct LtsRealization **out);

/**
 * The realization in file format.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_realization_to_json(const struct LtsRealization *h, char **out);

/**
 * Transfer matrix as a JSON array of rows of rational-function strings.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_transfer_function(const struct LtsRealization *h, char **out);

/**
 * Dynamical structure function in its JSON dump format.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_dsf(const struct LtsRealization *h, char **out);

/**
 * Number of blocks in the subsystem structure.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_block_count(const struct LtsRealization *h, uintptr_t *out);

/**
 * Runs every consistency check. `passed` receives 1 when none failed;
 * `report`, if not NULL, receives the JSON report.
 *
 * # Safety
 * `h` must be a live handle; `passed` must be writable; `report` may be NULL.
 */
enum LtsStatus lts_check(const struct LtsRealization *h, int32_t *passed, char **report);

/**
 * Simulates the ring GDS on `n` nodes. `x0` holds `n` bytes (0 or 1),
 * `inputs` holds `steps` node numbers in `1..=n`, and `states` receives
 * `(steps + 1) * n` bytes, row `t` being `x[t]`.
 *
 * # Safety
 * All pointers must reference buffers of the stated sizes.
 */
enum LtsStatus lts_gds_ring_simulate(uintptr_t n,
                                     const uint8_t *x0,
                                     const uintptr_t *inputs,
                                     uintptr_t steps,
                                     uint8_t *states);

/**
 * Library version string (static, do not free).
 */
const char *lts_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LTISTRUCT_H */
