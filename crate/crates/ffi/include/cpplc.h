#ifndef CPPLC_H
#define CPPLC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Algorithm codes for `CpplcSolveOptions.algorithm`.
 */
#define CPPLC_ALG_GHC 0

#define CPPLC_ALG_ILS 1

#define CPPLC_ALG_VNS 2

#define CPPLC_ALG_EA 3

#define CPPLC_ALG_ACO 4

#define CPPLC_ALG_EXACT 5

typedef enum CpplcStatus {
  CPPLC_STATUS_OK = 0,
  CPPLC_STATUS_NULL_POINTER = 1,
  CPPLC_STATUS_INVALID_UTF8 = 2,
  CPPLC_STATUS_IO = 3,
  CPPLC_STATUS_PARSE = 4,
  CPPLC_STATUS_INVALID_INSTANCE = 5,
  CPPLC_STATUS_INVALID_TOUR = 6,
  CPPLC_STATUS_TOO_LARGE = 7,
  CPPLC_STATUS_INVALID_ARGUMENT = 8,
  CPPLC_STATUS_PANIC = 9,
} CpplcStatus;

/**
 * Opaque instance handle. Holds the parsed instance and its shortest paths.
 */
typedef struct CpplcInstance CpplcInstance;

typedef struct CpplcSolveOptions {
  uint32_t algorithm;
  uint64_t seed;
  size_t max_iters;
  /**
   * Zero means no cap on evaluations.
   */
  uint64_t max_evals;
  size_t pop;
  /**
   * Nonzero selects `1/sqrt` attractiveness for ACO.
   */
  uint8_t inverse_eta;
} CpplcSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance from NUL-terminated text.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum CpplcStatus cpplc_instance_parse(const char *text, struct CpplcInstance **out);

/**
 * Reads an instance file.
 *
 * # Safety
 * `path` must be a valid C string and `out` a valid pointer.
 */
enum CpplcStatus cpplc_instance_read(const char *path, struct CpplcInstance **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `inst` must come from this library and not be used afterwards.
 */
void cpplc_instance_free(struct CpplcInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum CpplcStatus cpplc_instance_num_edges(const struct CpplcInstance *inst, size_t *out);

/**
 * Optimal cost of servicing the edges in `order` (length `len`, 1-based ids).
 *
 * # Safety
 * `order` must point to `len` readable values and `out_cost` be valid.
 */
enum CpplcStatus cpplc_tour_cost(const struct CpplcInstance *inst,
                                 const uint32_t *order,
                                 size_t len,
                                 double *out_cost);

/**
 * Optimal directions for `order`, written to `out_dirs` (length `len`).
 * `out_cost` may be null.
 *
 * # Safety
 * `order` must point to `len` readable values and `out_dirs` to `len`
 * writable bytes.
 */
enum CpplcStatus cpplc_tour_directions(const struct CpplcInstance *inst,
                                       const uint32_t *order,
                                       size_t len,
                                       uint8_t *out_dirs,
                                       double *out_cost);

/**
 * Default options: EA, seed 0, 100 iterations, no evaluation cap,
 * population 10.
 */
struct CpplcSolveOptions cpplc_solve_options_default(void);

/**
 * Runs a solver. The best order and directions are written to `out_order`
 * and `out_dirs`, each of capacity `len`, which must equal the edge count.
 * `out_cost` and `out_evals` may be null.
 *
 * # Safety
 * `opts` must be valid, `out_order` must point to `len` writable values and
 * `out_dirs` to `len` writable bytes.
 */
enum CpplcStatus cpplc_solve(const struct CpplcInstance *inst,
                             const struct CpplcSolveOptions *opts,
                             uint32_t *out_order,
                             uint8_t *out_dirs,
                             size_t len,
                             double *out_cost,
                             uint64_t *out_evals);

/**
 * Static description of a status code.
 */
const char *cpplc_status_message(enum CpplcStatus status);

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cpplc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CPPLC_H */
