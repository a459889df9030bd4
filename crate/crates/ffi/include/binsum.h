#ifndef BINSUM_H
#define BINSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BinsumStatus {
  BINSUM_STATUS_OK = 0,
  BINSUM_STATUS_NULL_POINTER = 1,
  BINSUM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A division that must be exact was not, or two routes disagreed.
   */
  BINSUM_STATUS_CHECK_FAILED = 3,
  BINSUM_STATUS_INTERNAL = 4,
} BinsumStatus;

typedef enum BinsumAlgorithm {
  BINSUM_ALGORITHM_DIRECT = 0,
  BINSUM_ALGORITHM_REC_R = 1,
  BINSUM_ALGORITHM_REC_MIXED = 2,
} BinsumAlgorithm;

/**
 * Cache of F(n, r) values shared across calls.
 */
typedef struct BinsumMemo BinsumMemo;

/**
 * One theorem check.
 */
typedef struct BinsumRecord BinsumRecord;

/**
 * Result of a sweep.
 */
typedef struct BinsumReport BinsumReport;

/**
 * Fixed-width view of a [`BinsumRecord`].
 */
typedef struct BinsumRecordSummary {
  uint64_t n;
  uint64_t r;
  /**
   * Meaningless when `nu2_infinite` is set.
   */
  uint64_t nu2;
  bool nu2_infinite;
  uint64_t bound;
  /**
   * Meaningless when `slack_infinite` is set.
   */
  int64_t slack;
  bool slack_infinite;
  bool pass;
} BinsumRecordSummary;

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *binsum_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed yet. NULL is
 * ignored.
 */
void binsum_string_free(char *s);

/**
 * Sum of the base-`p` digits of `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BinsumStatus binsum_digit_sum(uint64_t n, uint64_t p, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BinsumStatus binsum_nu_factorial(uint64_t n, uint64_t p, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BinsumStatus binsum_nu_binomial(uint64_t s, uint64_t t, uint64_t p, uint64_t *out);

/**
 * `2n - min(α(n), α(r))`.
 */
uint64_t binsum_theorem_bound(uint64_t n, uint64_t r);

/**
 * F(n, r) as a decimal string, written to `*out`.
 *
 * # Safety
 * `out` must be writable; free the string with `binsum_string_free`.
 */
enum BinsumStatus binsum_f_value(uint64_t n,
                                 uint64_t r,
                                 enum BinsumAlgorithm algorithm,
                                 char **out);

struct BinsumMemo *binsum_memo_new(void);

/**
 * # Safety
 * `memo` must come from `binsum_memo_new` and not be used afterwards.
 */
void binsum_memo_free(struct BinsumMemo *memo);

/**
 * Number of cached values; 0 for NULL.
 *
 * # Safety
 * `memo` must be a live handle or NULL.
 */
size_t binsum_memo_len(const struct BinsumMemo *memo);

/**
 * F(n, r) through a caller-owned cache. A handle must not be used from
 * two threads at once.
 *
 * # Safety
 * `memo` must be a live handle and `out` writable.
 */
enum BinsumStatus binsum_memo_f_value(struct BinsumMemo *memo,
                                      uint64_t n,
                                      uint64_t r,
                                      enum BinsumAlgorithm algorithm,
                                      char **out);

/**
 * Checks the bound at `(n, r)`. Never NULL; free with
 * `binsum_record_free`.
 */
struct BinsumRecord *binsum_verify(uint64_t n, uint64_t r);

/**
 * # Safety
 * `record` must come from `binsum_verify` and not be used afterwards.
 */
void binsum_record_free(struct BinsumRecord *record);

/**
 * # Safety
 * `record` must be a live handle and `out` writable.
 */
enum BinsumStatus binsum_record_summary(const struct BinsumRecord *record,
                                        struct BinsumRecordSummary *out);

/**
 * The record's F value as a decimal string.
 *
 * # Safety
 * `record` must be a live handle and `out` writable.
 */
enum BinsumStatus binsum_record_f_value(const struct BinsumRecord *record, char **out);

/**
 * The record as JSON, same schema as `binsum verify --format json`.
 *
 * # Safety
 * `record` must be a live handle and `out` writable.
 */
enum BinsumStatus binsum_record_to_json(const struct BinsumRecord *record, char **out);

/**
 * Runs the checks named in the comma-separated `checks` over
 * `[0, n_max] x [0, r_max]` and writes a report handle to `*out`.
 *
 * # Safety
 * `checks` must be a NUL-terminated string and `out` writable.
 */
enum BinsumStatus binsum_sweep(uint64_t n_max,
                               uint64_t r_max,
                               const char *checks,
                               size_t workers,
                               size_t failure_cap,
                               struct BinsumReport **out);

/**
 * # Safety
 * `report` must come from `binsum_sweep` and not be used afterwards.
 */
void binsum_report_free(struct BinsumReport *report);

/**
 * Grid points visited; 0 for NULL.
 *
 * # Safety
 * `report` must be a live handle or NULL.
 */
uint64_t binsum_report_total(const struct BinsumReport *report);

/**
 * Failures seen, including any beyond the cap; 0 for NULL.
 *
 * # Safety
 * `report` must be a live handle or NULL.
 */
uint64_t binsum_report_failure_count(const struct BinsumReport *report);

/**
 * The report as JSON, same schema as `binsum sweep --format json`. With
 * `include_timing` false the elapsed time is zeroed.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum BinsumStatus binsum_report_to_json(const struct BinsumReport *report,
                                        bool include_timing,
                                        char **out);

#endif  /* BINSUM_H */
