#ifndef MAXANT_H
#define MAXANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MaxantStatus {
  MAXANT_STATUS_OK = 0,
  MAXANT_STATUS_NULL_POINTER = 1,
  MAXANT_STATUS_INVALID_CONFIG = 2,
  MAXANT_STATUS_INVALID_INPUT = 3,
  MAXANT_STATUS_IO = 4,
  MAXANT_STATUS_INSUFFICIENT_DATA = 5,
  MAXANT_STATUS_SINGULAR = 6,
  MAXANT_STATUS_PANIC = 7,
} MaxantStatus;

typedef enum MaxantScheme {
  MAXANT_SCHEME_STBC = 0,
  MAXANT_SCHEME_MAX_SEL = 1,
} MaxantScheme;

/**
 * Parsed scenario plus the entries it was built from, so overrides can
 * be layered on later.
 */
typedef struct MaxantScenario MaxantScenario;

typedef struct MaxantSweep MaxantSweep;

typedef struct MaxantBerPoint {
  double snr_db;
  /**
   * 0 = STBC, 1 = max-antenna selection.
   */
  uint32_t scheme;
  uint64_t trials;
  uint64_t bits_sent;
  uint64_t bit_errors;
  double ber;
  double ci_low;
  double ci_high;
} MaxantBerPoint;

typedef struct MaxantSlopeFit {
  double slope;
  double slope_stderr;
  double intercept;
  double window_lo_db;
  double window_hi_db;
  double r_squared;
  uint64_t n_points;
} MaxantSlopeFit;

typedef struct MaxantAirtime {
  double coordinated_ms;
  double sequential_ms;
  double gain;
} MaxantAirtime;

typedef struct MaxantMacSummary {
  uint64_t group_size;
  struct MaxantAirtime airtime;
  uint64_t bits_sent;
  uint64_t bit_errors;
  uint64_t outages;
  double mean_link_ber;
} MaxantMacSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *maxant_last_error(void);

/**
 * # Safety
 * `out_per` must be a valid pointer to a double.
 */
enum MaxantStatus maxant_per_from_ber(double ber, uint64_t packet_bits, double *out_per);

/**
 * Scenario from config text (same format as the CLI). Pass null for the
 * documented defaults.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out_scenario` must be
 * a valid pointer.
 */
enum MaxantStatus maxant_scenario_new(const char *text, struct MaxantScenario **out_scenario);

/**
 * Applies a `section.key=value` override. On error the scenario is left
 * unchanged.
 *
 * # Safety
 * `scenario` must come from `maxant_scenario_new`; `assignment` must be a
 * NUL-terminated string.
 */
enum MaxantStatus maxant_scenario_set(struct MaxantScenario *scenario, const char *assignment);

/**
 * # Safety
 * `scenario` must be null or come from `maxant_scenario_new`, and must
 * not be used afterwards.
 */
void maxant_scenario_free(struct MaxantScenario *scenario);

/**
 * Runs the BER sweep for both schemes.
 *
 * # Safety
 * `scenario` must come from `maxant_scenario_new`; `out_sweep` must be a
 * valid pointer.
 */
enum MaxantStatus maxant_sweep_run(const struct MaxantScenario *scenario,
                                   struct MaxantSweep **out_sweep);

/**
 * Number of points, sorted by scheme then SNR. 0 for a null handle.
 *
 * # Safety
 * `sweep` must be null or come from `maxant_sweep_run`.
 */
size_t maxant_sweep_len(const struct MaxantSweep *sweep);

/**
 * # Safety
 * `sweep` must come from `maxant_sweep_run`; `out_point` must be valid.
 */
enum MaxantStatus maxant_sweep_point(const struct MaxantSweep *sweep,
                                     size_t index,
                                     struct MaxantBerPoint *out_point);

/**
 * Diversity-order fit for one scheme over `[lo_db, hi_db]`.
 *
 * # Safety
 * `sweep` must come from `maxant_sweep_run`; `out_fit` must be valid.
 */
enum MaxantStatus maxant_sweep_fit(const struct MaxantSweep *sweep,
                                   enum MaxantScheme scheme,
                                   double lo_db,
                                   double hi_db,
                                   struct MaxantSlopeFit *out_fit);

/**
 * Writes the sweep CSV exactly as the CLI does.
 *
 * # Safety
 * `sweep` must come from `maxant_sweep_run`; `path` must be a
 * NUL-terminated string.
 */
enum MaxantStatus maxant_sweep_write_csv(const struct MaxantSweep *sweep, const char *path);

/**
 * # Safety
 * `sweep` must be null or come from `maxant_sweep_run`, and must not be
 * used afterwards.
 */
void maxant_sweep_free(struct MaxantSweep *sweep);

/**
 * Coordinated versus sequential airtime for a group of `group_size` APs.
 *
 * # Safety
 * `out_airtime` must be a valid pointer.
 */
enum MaxantStatus maxant_airtime_compare(double sounding_ms,
                                         double txop_ms,
                                         bool per_ap_sounding,
                                         size_t group_size,
                                         struct MaxantAirtime *out_airtime);

/**
 * Transmit antenna with the largest channel norm. `re` and `im` hold the
 * `nr x nt` channel in row-major order.
 *
 * # Safety
 * `re` and `im` must each point to `nr * nt` doubles; `out_antenna` must
 * be valid.
 */
enum MaxantStatus maxant_select_best_antenna(const double *re,
                                             const double *im,
                                             size_t nr,
                                             size_t nt,
                                             size_t *out_antenna);

/**
 * Runs the coordinated MAC episodes described by the `[mac]` section of
 * `text` (null for defaults).
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out_summary` must be
 * valid.
 */
enum MaxantStatus maxant_mac_run(const char *text, struct MaxantMacSummary *out_summary);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAXANT_H */
