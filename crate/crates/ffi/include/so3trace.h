#ifndef SO3TRACE_H
#define SO3TRACE_H

/* Generated by cbindgen from so3trace-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API call.
 */
typedef enum {
  SO3TRACE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SO3TRACE_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument failed validation (range, normalization, unitarity).
   */
  SO3TRACE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The transverse field component vanishes.
   */
  SO3TRACE_STATUS_DEGENERATE_GEOMETRY = 3,
  /**
   * No field strength realizes the requested ratio.
   */
  SO3TRACE_STATUS_NO_SOLUTION = 4,
  /**
   * A state was not of maximally entangled form.
   */
  SO3TRACE_STATUS_NOT_MAXIMALLY_ENTANGLED = 5,
  /**
   * The break count did not stabilize under refinement.
   */
  SO3TRACE_STATUS_INSUFFICIENT_RESOLUTION = 6,
  /**
   * The trajectory closed in the ball but not at a +/-1 phase.
   */
  SO3TRACE_STATUS_NON_COMMENSURATE_CLOSURE = 7,
  /**
   * The trajectory is open; the request needs a closed one.
   */
  SO3TRACE_STATUS_OPEN_TRAJECTORY = 8,
  /**
   * Numerical integration lost the required accuracy.
   */
  SO3TRACE_STATUS_ACCURACY_LOSS = 9,
  /**
   * Optics parameters are mutually inconsistent.
   */
  SO3TRACE_STATUS_INCONSISTENT_PARAMETERS = 10,
  /**
   * Internal consistency failure.
   */
  SO3TRACE_STATUS_INTERNAL_ERROR = 11,
} So3traceStatus;

/**
 * Evolution selector for tracing.
 */
typedef enum {
  /**
   * Drive only the first qubit.
   */
  SO3TRACE_MODE_SINGLE = 0,
  /**
   * Drive both qubits through the same field.
   */
  SO3TRACE_MODE_DUAL = 1,
} So3traceMode;

/**
 * Opaque rotating-field configuration handle.
 */
typedef struct So3traceFieldConfig So3traceFieldConfig;

/**
 * Opaque traced-trajectory handle.
 */
typedef struct So3traceTrajectory So3traceTrajectory;

/**
 * Amplitude pair of a maximally entangled state / special-unitary matrix.
 */
typedef struct {
  double alpha_re;
  double alpha_im;
  double beta_re;
  double beta_im;
} So3traceMes;

/**
 * A point of the rotation ball with its covering-sheet sign (+1 or -1).
 */
typedef struct {
  double kx;
  double ky;
  double kz;
  double angle;
  int sheet;
} So3traceBallPoint;

/**
 * One trajectory sample. `break_flag` is 1 on the sample immediately after
 * a detected surface break.
 */
typedef struct {
  double t;
  So3traceMes mes;
  So3traceBallPoint point;
  int break_flag;
} So3traceSample;

/**
 * A 2x2 complex matrix in row-major order, split into re/im parts.
 */
typedef struct {
  double m00_re;
  double m00_im;
  double m01_re;
  double m01_im;
  double m10_re;
  double m10_im;
  double m11_re;
  double m11_im;
} So3traceMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a NUL-terminated static string.
 */
const char *so3trace_version(void);

/**
 * Static description of a status code.
 */
const char *so3trace_status_message(So3traceStatus status);

/**
 * Creates a field configuration handle.
 *
 * # Safety
 * `out` must be a valid pointer; the returned handle must be released with
 * [`so3trace_field_config_free`].
 */
So3traceStatus so3trace_field_config_new(double b,
                                         double theta,
                                         double omega,
                                         double hbar,
                                         So3traceFieldConfig **out);

/**
 * Creates a configuration whose field strength realizes
 * `omega0 = ratio * omega` exactly.
 *
 * # Safety
 * `out` must be a valid pointer; the returned handle must be released with
 * [`so3trace_field_config_free`].
 */
So3traceStatus so3trace_field_config_for_ratio(double theta,
                                               double omega,
                                               double hbar,
                                               double ratio,
                                               So3traceFieldConfig **out);

/**
 * Releases a configuration handle. Null is ignored.
 *
 * # Safety
 * `cfg` must be a handle from this library that has not been freed.
 */
void so3trace_field_config_free(So3traceFieldConfig *cfg);

/**
 * Half the quasienergy splitting of a configuration.
 *
 * # Safety
 * `cfg` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_omega_zero(const So3traceFieldConfig *cfg, double *out);

/**
 * Solves `omega0(b) = ratio * omega` for the field strength.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
So3traceStatus so3trace_solve_field_for_ratio(double theta,
                                              double omega,
                                              double hbar,
                                              double ratio,
                                              double *out);

/**
 * The propagator amplitudes in the initial eigenbasis at time `t`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_propagator(const So3traceFieldConfig *cfg, double t, So3traceMes *out);

/**
 * The amplitudes of the doubly driven state at time `t`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_dual_propagator(const So3traceFieldConfig *cfg, double t, So3traceMes *out);

/**
 * Amplitudes of the rotation by `angle` about the unit axis `(kx, ky, kz)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
So3traceStatus so3trace_su2_from_axis_angle(double kx,
                                            double ky,
                                            double kz,
                                            double angle,
                                            So3traceMes *out);

/**
 * Projects an amplitude pair into the rotation ball.
 *
 * # Safety
 * `state` and `out` must be valid pointers.
 */
So3traceStatus so3trace_ball_point(const So3traceMes *state, So3traceBallPoint *out);

/**
 * Traces an evolution into a trajectory handle.
 *
 * # Safety
 * `cfg` must be a live handle and `out` a valid pointer; the returned
 * handle must be released with [`so3trace_trajectory_free`].
 */
So3traceStatus so3trace_trace(const So3traceFieldConfig *cfg,
                              So3traceMode mode,
                              double t_max,
                              uintptr_t n_steps,
                              So3traceTrajectory **out);

/**
 * Releases a trajectory handle. Null is ignored.
 *
 * # Safety
 * `traj` must be a handle from this library that has not been freed.
 */
void so3trace_trajectory_free(So3traceTrajectory *traj);

/**
 * Number of samples held by a trajectory; zero for a null handle.
 *
 * # Safety
 * `traj` must be a live handle or null.
 */
uintptr_t so3trace_trajectory_sample_count(const So3traceTrajectory *traj);

/**
 * Copies out the sample at `index`.
 *
 * # Safety
 * `traj` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_trajectory_sample(const So3traceTrajectory *traj,
                                          uintptr_t index,
                                          So3traceSample *out);

/**
 * Number of surface breaks detected at the trajectory's own resolution.
 *
 * # Safety
 * `traj` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_trajectory_break_count(const So3traceTrajectory *traj, uintptr_t *out);

/**
 * Break count validated by re-tracing at doubled resolution until stable.
 *
 * # Safety
 * `traj` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_trajectory_validated_break_count(const So3traceTrajectory *traj,
                                                         uintptr_t *out);

/**
 * Closure phase of the trajectory: +1, -1, or 0 for an open path.
 *
 * # Safety
 * `traj` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_trajectory_closure_phase(const So3traceTrajectory *traj, int *out);

/**
 * Checks `closure phase = (-1)^breaks`; writes 1 when the rule holds.
 *
 * # Safety
 * `traj` must be a live handle and `out` a valid pointer.
 */
So3traceStatus so3trace_trajectory_parity_check(const So3traceTrajectory *traj, int *out);

/**
 * Retarder settings reproducing the propagator of `cfg` at time `t`.
 *
 * # Safety
 * `cfg` must be a live handle; `phi1`, `phi2`, `delta` must be valid
 * pointers.
 */
So3traceStatus so3trace_map_dynamics_to_optics(const So3traceFieldConfig *cfg,
                                               double t,
                                               double *phi1,
                                               double *phi2,
                                               double *delta);

/**
 * Jones matrix of an axis-aligned retarder.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
So3traceStatus so3trace_u1_matrix(double phi1, So3traceMatrix *out);

/**
 * Jones matrix of a retarder tilted by `delta` from the z-axis.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
So3traceStatus so3trace_u2_matrix(double phi2, double delta, So3traceMatrix *out);

/**
 * Retardance of a quadratic electro-optic cell.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
So3traceStatus so3trace_phase_from_field(double lambda,
                                         double kerr_k,
                                         double d,
                                         double e,
                                         double *out);

/**
 * Bright-port intensity of the balanced interferometer whose sample arm
 * applies `first` then `second`. Both stages must be special-unitary.
 *
 * # Safety
 * `first`, `second` and `out` must be valid pointers.
 */
So3traceStatus so3trace_mach_zehnder_intensity(const So3traceMatrix *first,
                                               const So3traceMatrix *second,
                                               double reference_phase,
                                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SO3TRACE_H */
