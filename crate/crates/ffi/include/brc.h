#ifndef BRC_H
#define BRC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrcConvention {
  BRC_CONVENTION_OUTERMOST = 0,
  BRC_CONVENTION_INNERMOST = 1,
} BrcConvention;

typedef enum BrcFunctional {
  BRC_FUNCTIONAL_L = 0,
  BRC_FUNCTIONAL_L0 = 1,
} BrcFunctional;

typedef enum BrcStatus {
  BRC_STATUS_OK = 0,
  BRC_STATUS_NULL_POINTER = 1,
  BRC_STATUS_INVALID_ARGUMENT = 2,
  BRC_STATUS_OUT_OF_RANGE = 3,
  BRC_STATUS_DOMAIN = 4,
  BRC_STATUS_DRIFT = 5,
  BRC_STATUS_NUMERIC = 6,
  BRC_STATUS_DEGENERATE = 7,
  BRC_STATUS_BUFFER_TOO_SMALL = 8,
  BRC_STATUS_PANIC = 9,
} BrcStatus;

// Opaque spectrum handle.
typedef struct BrcSpectrum BrcSpectrum;

typedef struct BrcSpectrumStats {
  uint32_t n;
  size_t count;
  double l_min;
  double l_max;
  double mean;
  double sigma;
} BrcSpectrumStats;

typedef struct BrcMultifractalPoint {
  double q;
  double tau;
  double d;
  double alpha;
  double f;
} BrcMultifractalPoint;

typedef struct BrcMarkovStats {
  uint32_t n;
  double l_min_star;
  double l_max_star;
  double mean_star;
  double sigma_star;
  double xi_bar;
} BrcMarkovStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next library call on the same thread.
const char *brc_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *brc_version(void);

// Hyperbolic distance between two points of the unit ball.
//
// # Safety
// `p` and `q` must point to three doubles; `out` must be writable.
enum BrcStatus brc_dist_ball(const double *p, const double *q, double *out);

// Applies a catalog generator (`"g1"`, `"h_tilde_plus"`, ...) raised to
// `power` to a ball point.
//
// # Safety
// `name` must be a NUL-terminated string; `r` and `out` must point to three doubles.
enum BrcStatus brc_apply_generator(const char *name, int32_t power, const double *r, double *out);

// Enumerates the path spectrum at depth `n` into a new handle.
//
// # Safety
// `out` must be writable; the handle must be released with [`brc_spectrum_free`].
enum BrcStatus brc_spectrum_create(uint32_t n,
                                   enum BrcFunctional functional,
                                   enum BrcConvention convention,
                                   struct BrcSpectrum **out);

// Releases a handle; null is ignored.
//
// # Safety
// `h` must be null or a handle from [`brc_spectrum_create`] not yet freed.
void brc_spectrum_free(struct BrcSpectrum *h);

// # Safety
// `h` must be a live handle; `out` must be writable.
enum BrcStatus brc_spectrum_stats(const struct BrcSpectrum *h, struct BrcSpectrumStats *out);

// Copies the sorted spectrum into `buf`. `len` must be at least the count;
// pass a null `buf` to query the count through `needed`.
//
// # Safety
// `h` must be a live handle; `buf` must be null or hold `len` doubles;
// `needed` must be null or writable.
enum BrcStatus brc_spectrum_values(const struct BrcSpectrum *h,
                                   double *buf,
                                   size_t len,
                                   size_t *needed);

// `ln Z(q)` of the spectrum.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum BrcStatus brc_spectrum_ln_partition(const struct BrcSpectrum *h, double q, double *out);

// Multifractal exponents at `q`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum BrcStatus brc_spectrum_multifractal(const struct BrcSpectrum *h,
                                         double q,
                                         struct BrcMultifractalPoint *out);

// `(α_min, α_max)` of the spectrum.
//
// # Safety
// `h` must be a live handle; both outputs must be writable.
enum BrcStatus brc_spectrum_alpha_limits(const struct BrcSpectrum *h,
                                         double *alpha_min,
                                         double *alpha_max);

// Markov estimate at depth `n`, keeping every correlation lag.
//
// # Safety
// `out` must be writable.
enum BrcStatus brc_markov_estimate(uint32_t n, struct BrcMarkovStats *out);

// Signed λ-length between horospheres of heights `h_i`, `h_j`.
//
// # Safety
// `out` must be writable.
enum BrcStatus brc_lambda_length(double h_i, double h_j, double *out);

// Horocyclic arc length `w(h)`.
//
// # Safety
// `out` must be writable.
enum BrcStatus brc_horo_arc_length(double h, double *out);

// Action variable `J(ε)` for `ε ∈ [0, 1]`.
//
// # Safety
// `out` must be writable.
enum BrcStatus brc_action_variable(double epsilon, double *out);

// Energy of the antikink.
//
// # Safety
// `out` must be writable.
enum BrcStatus brc_kink_energy(double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BRC_H */
