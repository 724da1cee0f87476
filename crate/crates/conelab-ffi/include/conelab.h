#ifndef CONELAB_H
#define CONELAB_H

/* Generated by cbindgen from conelab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define CONELAB_OK 0

/**
 * The requested certificate was evaluated and failed.
 */
#define CONELAB_CERT_FAIL 1

/**
 * Invalid input: bad parameters, domains, or preconditions.
 */
#define CONELAB_ERR_INVALID 2

/**
 * A numerical procedure did not converge or exhausted its search range.
 */
#define CONELAB_ERR_NUMERICAL 3

/**
 * A required pointer argument was null.
 */
#define CONELAB_ERR_NULL 4

/**
 * An internal invariant failed; the library caught a panic.
 */
#define CONELAB_ERR_INTERNAL 5

/**
 * Opaque angular domain handle.
 */
typedef struct ConelabDomain ConelabDomain;

/**
 * Exponent data written by [`conelab_exponent`].
 */
typedef struct ConelabExponent {
  /**
   * Principal Dirichlet eigenvalue of the angular domain.
   */
  double lambda1;
  /**
   * Decaying characteristic root.
   */
  double alpha_minus;
  /**
   * Growing characteristic root.
   */
  double alpha_plus;
  /**
   * Critical exponent `1 - 2/alpha_minus`.
   */
  double p_star;
} ConelabExponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a polar cap domain on `S^{N-1}` with opening angle `theta1`
 * (radians).  Writes the handle to `out`.
 *
 * # Safety
 * `out` must be a valid pointer.  The handle must be released with
 * [`conelab_domain_free`].
 */
int32_t conelab_domain_cap(uint32_t dimension, double theta1, struct ConelabDomain **out);

/**
 * Create a band domain `theta0 < theta < theta1` (radians).
 *
 * # Safety
 * `out` must be a valid pointer.  The handle must be released with
 * [`conelab_domain_free`].
 */
int32_t conelab_domain_band(uint32_t dimension,
                            double theta0,
                            double theta1,
                            struct ConelabDomain **out);

/**
 * Create the boundaryless whole-sphere domain.
 *
 * # Safety
 * `out` must be a valid pointer.  The handle must be released with
 * [`conelab_domain_free`].
 */
int32_t conelab_domain_full_sphere(uint32_t dimension, struct ConelabDomain **out);

/**
 * Release a domain handle.  Passing null is a no-op.
 *
 * # Safety
 * `domain` must be null or a handle produced by one of the constructors,
 * not yet freed.
 */
void conelab_domain_free(struct ConelabDomain *domain);

/**
 * Principal Dirichlet eigenvalue of the angular domain, Richardson
 * extrapolated over `nodes` and `2 * nodes`.
 *
 * # Safety
 * `domain` must be a live handle and `out` a valid pointer.
 */
int32_t conelab_eigenvalue(const struct ConelabDomain *domain, uint32_t nodes, double *out);

/**
 * Eigenvalue, characteristic roots, and critical exponent of the domain.
 *
 * # Safety
 * `domain` must be a live handle and `out` a valid pointer.
 */
int32_t conelab_exponent(const struct ConelabDomain *domain,
                         uint32_t nodes,
                         struct ConelabExponent *out);

/**
 * Pointwise supersolution certificate for the candidate
 * `c r^{2/(1-p)} phi_1` with the identity matrix.  Writes the JSON
 * report to `out_json`.  Returns `CONELAB_OK` when the certificate
 * passes and `CONELAB_CERT_FAIL` when it is evaluated but fails; the
 * JSON is written in both cases.
 *
 * # Safety
 * `domain` must be a live handle and `out_json` a valid pointer.  The
 * string must be released with [`conelab_string_free`].
 */
int32_t conelab_certify_supersolution(const struct ConelabDomain *domain,
                                      double p,
                                      double c,
                                      uint32_t nodes,
                                      char **out_json);

/**
 * Nonexistence certificate from the lower bound `v >= c r^alpha`, with
 * the identity matrix.  Writes the JSON report to `out_json`.
 *
 * # Safety
 * `domain` must be a live handle and `out_json` a valid pointer.  The
 * string must be released with [`conelab_string_free`].
 */
int32_t conelab_certify_nonexistence(const struct ConelabDomain *domain,
                                     double p,
                                     double alpha,
                                     double c,
                                     uint32_t nodes_per_decade,
                                     uint32_t n_theta,
                                     char **out_json);

/**
 * Critical-case certificate with an explicit indicator-well depth.
 * Writes the JSON report to `out_json`.
 *
 * # Safety
 * `domain` must be a live handle and `out_json` a valid pointer.  The
 * string must be released with [`conelab_string_free`].
 */
int32_t conelab_certify_critical(const struct ConelabDomain *domain,
                                 double epsilon,
                                 uint32_t nodes,
                                 uint32_t nodes_per_decade,
                                 char **out_json);

/**
 * Sup norm of the Newtonian potential of the truncated log-squared
 * density, and the amplitude keeping it below one.
 *
 * # Safety
 * `out_norm` and `out_epsilon_star` must be valid pointers.
 */
int32_t conelab_potential_norm(uint32_t dimension,
                               double epsilon,
                               double *out_norm,
                               double *out_epsilon_star);

/**
 * Release a string returned by a certificate call.  Passing null is a
 * no-op.
 *
 * # Safety
 * `text` must be null or a string produced by this library, not yet
 * freed.
 */
void conelab_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONELAB_H */
