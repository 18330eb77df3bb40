#ifndef DEGINV_H
#define DEGINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum DeginvStatus {
  DEGINV_STATUS_OK = 0,
  DEGINV_STATUS_NULL_POINTER = 1,
  DEGINV_STATUS_INVALID_ARGUMENT = 2,
  DEGINV_STATUS_DOMAIN = 3,
  DEGINV_STATUS_ACCURACY = 4,
  DEGINV_STATUS_VANISHING = 5,
  DEGINV_STATUS_NON_TERMINATION = 6,
  DEGINV_STATUS_FIT = 7,
  DEGINV_STATUS_PANIC = 8,
} DeginvStatus;

// Opaque genus-two period matrix.
typedef struct DeginvSiegelPoint DeginvSiegelPoint;

// Opaque result of a degeneration sweep.
typedef struct DeginvSweepReport DeginvSweepReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *deginv_last_error(void);

// Library version as a NUL-terminated string with static lifetime.
const char *deginv_version(void);

// `log|η(ω)|`, for `Im ω ≥ 0.05`.
//
// # Safety
// `out` must be null or valid for writes.
enum DeginvStatus deginv_log_abs_eta(double omega_re,
                                     double omega_im,
                                     double eps,
                                     size_t max_radius,
                                     double *out);

// `log ‖η‖(ω)`.
//
// # Safety
// `out` must be null or valid for writes.
enum DeginvStatus deginv_log_petersson_eta(double omega_re,
                                           double omega_im,
                                           double eps,
                                           size_t max_radius,
                                           double *out);

// The odd genus-one theta function `θ(z, ω)`.
//
// # Safety
// `out_re` and `out_im` must be null or valid for writes.
enum DeginvStatus deginv_theta_odd_genus1(double z_re,
                                          double z_im,
                                          double omega_re,
                                          double omega_im,
                                          double eps,
                                          size_t max_radius,
                                          double *out_re,
                                          double *out_im);

// Creates a period matrix `[[d11, d12], [d12, d22]]`; fails unless its
// imaginary part is positive definite.
//
// # Safety
// `out` must be null or valid for writes. The handle must be released with
// [`deginv_siegel_point_free`].
enum DeginvStatus deginv_siegel_point_new(double d11_re,
                                          double d11_im,
                                          double d12_re,
                                          double d12_im,
                                          double d22_re,
                                          double d22_im,
                                          struct DeginvSiegelPoint **out);

// Releases a period matrix. Null is ignored.
//
// # Safety
// `p` must be null or a handle from [`deginv_siegel_point_new`] not yet freed.
void deginv_siegel_point_free(struct DeginvSiegelPoint *p);

// Genus-two theta constant or function with characteristic. Characteristic
// entries are given in halves: `0` for 0 and `1` for ½.
//
// # Safety
// `p` must be a live handle; `out_re`, `out_im` null or valid for writes.
enum DeginvStatus deginv_theta_char_genus2(const struct DeginvSiegelPoint *p,
                                           uint8_t a1,
                                           uint8_t a2,
                                           uint8_t b1,
                                           uint8_t b2,
                                           double z1_re,
                                           double z1_im,
                                           double z2_re,
                                           double z2_im,
                                           double eps,
                                           size_t max_radius,
                                           double *out_re,
                                           double *out_im);

// `χ₁₀(Ω)`.
//
// # Safety
// `p` must be a live handle; `out_re`, `out_im` null or valid for writes.
enum DeginvStatus deginv_chi10(const struct DeginvSiegelPoint *p,
                               double eps,
                               size_t max_radius,
                               double *out_re,
                               double *out_im);

// `log ‖χ₁₀‖(Ω)`; `DEGINV_STATUS_VANISHING` when `|χ₁₀| < eps`.
//
// # Safety
// `p` must be a live handle; `out` null or valid for writes.
enum DeginvStatus deginv_log_petersson_chi10(const struct DeginvSiegelPoint *p,
                                             double eps,
                                             size_t max_radius,
                                             double *out);

// The genus-two β invariant.
//
// # Safety
// `p` must be a live handle; `out` null or valid for writes.
enum DeginvStatus deginv_beta_genus2(const struct DeginvSiegelPoint *p,
                                     double eps,
                                     size_t max_radius,
                                     double *out);

// Faltings' δ of `ℂ/(ℤ + ℤω)`.
//
// # Safety
// `out` must be null or valid for writes.
enum DeginvStatus deginv_delta_elliptic(double omega_re,
                                        double omega_im,
                                        double eps,
                                        size_t max_radius,
                                        double *out);

// `log d` of `ℂ/(ℤ + ℤω)`.
//
// # Safety
// `out` must be null or valid for writes.
enum DeginvStatus deginv_arakelov_d_torus(double omega_re,
                                          double omega_im,
                                          double eps,
                                          size_t max_radius,
                                          double *out);

// Arakelov Green's function `g(0, u)` on `ℂ/(ℤ + ℤω)`.
//
// # Safety
// `out` must be null or valid for writes.
enum DeginvStatus deginv_green_torus(double u_re,
                                     double u_im,
                                     double omega_re,
                                     double omega_im,
                                     double eps,
                                     size_t max_radius,
                                     double *out);

// Sweeps the separating family at the `n` values of `t` in `points`
// (strictly decreasing, in `(0, 0.05]`).
//
// # Safety
// `points` must reference `n` doubles; `out` null or valid for writes. The
// report must be released with [`deginv_sweep_report_free`].
enum DeginvStatus deginv_sweep_separating(double omega1_re,
                                          double omega1_im,
                                          double omega2_re,
                                          double omega2_im,
                                          const double *points,
                                          size_t n,
                                          double eps,
                                          size_t max_radius,
                                          struct DeginvSweepReport **out);

// Sweeps the non-separating family at the `n` values of `y` in `points`
// (strictly increasing, in `[2, 40]`).
//
// # Safety
// As [`deginv_sweep_separating`].
enum DeginvStatus deginv_sweep_nonseparating(double omega_re,
                                             double omega_im,
                                             double u_re,
                                             double u_im,
                                             double x_offset,
                                             const double *points,
                                             size_t n,
                                             double eps,
                                             size_t max_radius,
                                             struct DeginvSweepReport **out);

// Number of samples in a report; 0 for null.
//
// # Safety
// `r` must be null or a live report.
size_t deginv_sweep_report_len(const struct DeginvSweepReport *r);

// Sample `i` of a report.
//
// # Safety
// `r` must be a live report; `param`, `value` null or valid for writes.
enum DeginvStatus deginv_sweep_report_sample(const struct DeginvSweepReport *r,
                                             size_t i,
                                             double *param,
                                             double *value);

// Summary of a report. Any out pointer may be null to skip that field.
//
// # Safety
// `r` must be a live report; non-null out pointers valid for writes.
enum DeginvStatus deginv_sweep_report_summary(const struct DeginvSweepReport *r,
                                              double *extrapolated_limit,
                                              double *rhs,
                                              double *discrepancy,
                                              double *estimated_order);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must be null or a report not yet freed.
void deginv_sweep_report_free(struct DeginvSweepReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEGINV_H */
