#ifndef HOMSIM_H
#define HOMSIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum HomsimStatus {
  HOMSIM_STATUS_OK = 0,
  HOMSIM_STATUS_NULL_POINTER = 1,
  HOMSIM_STATUS_DOMAIN = 2,
  HOMSIM_STATUS_UNITARITY = 3,
  HOMSIM_STATUS_UNBALANCED_SPLITTER = 4,
  HOMSIM_STATUS_CONVERGENCE = 5,
  HOMSIM_STATUS_CONFIG = 6,
  HOMSIM_STATUS_INVALID_UTF8 = 7,
  HOMSIM_STATUS_PANIC = 8,
  HOMSIM_STATUS_INTERNAL = 9,
} HomsimStatus;

/**
 * Opaque experiment geometry.
 */
typedef struct HomsimGeometry HomsimGeometry;

/**
 * Quadrature value and its error estimate.
 */
typedef struct HomsimQuadrature {
  double value;
  double error_estimate;
} HomsimQuadrature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *homsim_last_error(void);

/**
 * Static description of a status code.
 */
const char *homsim_status_name(enum HomsimStatus status);

/**
 * Creates a balanced-splitter geometry.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum HomsimStatus homsim_geometry_new(double t_a,
                                      double t_b,
                                      double t_c,
                                      double t_d,
                                      double delta_a,
                                      double delta_b,
                                      double delta_c,
                                      double delta_d,
                                      struct HomsimGeometry **out);

/**
 * Replaces the splitter amplitudes. Closed forms then reject the handle
 * unless `r = t = 1/sqrt 2`.
 *
 * # Safety
 * `geom` must be null or a live handle.
 */
enum HomsimStatus homsim_geometry_set_splitter(struct HomsimGeometry *geom, double r, double t);

/**
 * Releases a geometry. Null is ignored.
 *
 * # Safety
 * `geom` must be null or a handle not yet freed.
 */
void homsim_geometry_free(struct HomsimGeometry *geom);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_joint_probability(const struct HomsimGeometry *geom,
                                           double tau_c,
                                           double tau_d,
                                           double *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_no_interference_probability(const struct HomsimGeometry *geom,
                                                     double tau_c,
                                                     double tau_d,
                                                     double *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_hom_probability(const struct HomsimGeometry *geom, double *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_marginal_probability(const struct HomsimGeometry *geom,
                                              double tau_c,
                                              double *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_windowed_probability(const struct HomsimGeometry *geom,
                                              double tau_c,
                                              double window_center,
                                              double t_w,
                                              double *out);

double homsim_erf(double x);

/**
 * Double integral of the joint density by quadrature. A tolerance `<= 0`
 * selects the default 1e-11.
 *
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_oracle_hom(const struct HomsimGeometry *geom,
                                    double absolute_tolerance,
                                    struct HomsimQuadrature *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_oracle_marginal(const struct HomsimGeometry *geom,
                                         double tau_c,
                                         double absolute_tolerance,
                                         struct HomsimQuadrature *out);

/**
 * # Safety
 * `geom` must be null or a live handle; `out` null or writable.
 */
enum HomsimStatus homsim_oracle_windowed(const struct HomsimGeometry *geom,
                                         double tau_c,
                                         double window_center,
                                         double t_w,
                                         double absolute_tolerance,
                                         struct HomsimQuadrature *out);

/**
 * Runs a TOML scenario config and returns the CSV dataset. `jobs = 0` uses
 * the available parallelism. Free the result with [`homsim_string_free`].
 *
 * # Safety
 * `config` must be null or a NUL-terminated string; `out_csv` null or
 * writable.
 */
enum HomsimStatus homsim_run_scenario(const char *config, size_t jobs, char **out_csv);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void homsim_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMSIM_H */
