/* Copyright 2026 The gamowlab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Generated by cbindgen; do not edit. */

#ifndef GAMOWLAB_H
#define GAMOWLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum GamowlabStatus {
  GAMOWLAB_STATUS_OK = 0,
  GAMOWLAB_STATUS_NULL_POINTER = 1,
  GAMOWLAB_STATUS_INVALID_ARGUMENT = 2,
  GAMOWLAB_STATUS_DIMENSION_MISMATCH = 3,
  GAMOWLAB_STATUS_VARIANT_MISMATCH = 4,
  GAMOWLAB_STATUS_NUMERICAL = 5,
  GAMOWLAB_STATUS_BUFFER_TOO_SMALL = 6,
  GAMOWLAB_STATUS_PANIC = 7,
} GamowlabStatus;

// Values accepted by the `variant` parameters.
typedef enum GamowlabVariant {
  GAMOWLAB_VARIANT_SEMIGROUP_D = 0,
  GAMOWLAB_VARIANT_INVERTIBLE = 1,
  GAMOWLAB_VARIANT_HERMITIAN = 2,
} GamowlabVariant;

// Opaque resonance space.
typedef struct GamowlabSpace GamowlabSpace;

// Opaque commutator trajectory.
typedef struct GamowlabTrajectory GamowlabTrajectory;

typedef struct GamowlabDecayFit {
  double slope;
  double intercept;
  double max_abs_residual;
  size_t n_points;
} GamowlabDecayFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (NUL
// terminated, truncated to `len − 1` bytes) and returns the full message
// length in bytes, excluding the NUL. Returns 0 when there is no error.
//
// # Safety
// `buf` must be NULL or point to `len` writable bytes.
size_t gamowlab_last_error_message(char *buf, size_t len);

// Static, NUL-terminated name of a status code ("unknown status" for
// values outside [`GamowlabStatus`]).
const char *gamowlab_status_name(int32_t status);

// Creates a space of `n` resonances from parallel `energies`/`widths`.
//
// # Safety
// `energies` and `widths` must point to `n` doubles; `out` must be writable.
enum GamowlabStatus gamowlab_space_new(const double *energies,
                                       const double *widths,
                                       size_t n,
                                       struct GamowlabSpace **out);

// # Safety
// `space` must be NULL or a pointer returned by [`gamowlab_space_new`] that
// has not been freed.
void gamowlab_space_free(struct GamowlabSpace *space);

// Matrix dimension `2N`, or 0 for NULL.
//
// # Safety
// `space` must be NULL or a live space handle.
size_t gamowlab_space_dim(const struct GamowlabSpace *space);

// Writes `U(t)` for `variant` into `out` (`2·d·d` doubles).
//
// # Safety
// `space` must be a live handle; `out` must point to `out_len` doubles.
enum GamowlabStatus gamowlab_evolution_operator(const struct GamowlabSpace *space,
                                                double t,
                                                int32_t variant,
                                                double *out,
                                                size_t out_len);

// Writes the evolved observable `O(t)` into `out`.
//
// # Safety
// `space` must be a live handle; `obs` must point to `obs_len` doubles and
// `out` to `out_len` doubles.
enum GamowlabStatus gamowlab_heisenberg(const struct GamowlabSpace *space,
                                        double t,
                                        int32_t variant,
                                        const double *obs,
                                        size_t obs_len,
                                        double *out,
                                        size_t out_len);

// Computes `[O₁(t), O₂(t)]` on a strictly increasing time grid.
//
// # Safety
// `space` must be a live handle; `o1`, `o2` must point to `obs_len` doubles,
// `times` to `n_times` doubles; `out` must be writable.
enum GamowlabStatus gamowlab_trajectory_new(const struct GamowlabSpace *space,
                                            const double *o1,
                                            const double *o2,
                                            size_t obs_len,
                                            const double *times,
                                            size_t n_times,
                                            int32_t variant,
                                            struct GamowlabTrajectory **out);

// # Safety
// `traj` must be NULL or a live trajectory handle.
void gamowlab_trajectory_free(struct GamowlabTrajectory *traj);

// Number of grid points, or 0 for NULL.
//
// # Safety
// `traj` must be NULL or a live trajectory handle.
size_t gamowlab_trajectory_len(const struct GamowlabTrajectory *traj);

// Copies the Frobenius norms (one per grid point) into `out`.
//
// # Safety
// `traj` must be a live handle; `out` must point to `out_len` doubles.
enum GamowlabStatus gamowlab_trajectory_norms(const struct GamowlabTrajectory *traj,
                                              double *out,
                                              size_t out_len);

// Copies the commutator at grid index `k` into `out`.
//
// # Safety
// `traj` must be a live handle; `out` must point to `out_len` doubles.
enum GamowlabStatus gamowlab_trajectory_value(const struct GamowlabTrajectory *traj,
                                              size_t k,
                                              double *out,
                                              size_t out_len);

// Log-linear decay fit. `window` in (0, 1] selects the last fraction of the
// grid; any other value uses the default (full grid for one resonance,
// last half otherwise).
//
// # Safety
// `traj` must be a live handle; `out` must be writable.
enum GamowlabStatus gamowlab_trajectory_fit(const struct GamowlabTrajectory *traj,
                                            double window,
                                            struct GamowlabDecayFit *out);

// First grid time `k·dt ≤ t_max` with commutator norm below `eps`.
// `*found` is set to 1 and `*out_t` to the time when one exists, else
// `*found` is 0.
//
// # Safety
// `space` must be a live handle; `o1`, `o2` must point to `obs_len` doubles;
// `out_t` and `found` must be writable.
enum GamowlabStatus gamowlab_commutation_time(const struct GamowlabSpace *space,
                                              const double *o1,
                                              const double *o2,
                                              size_t obs_len,
                                              double eps,
                                              int32_t variant,
                                              double t_max,
                                              double dt,
                                              double *out_t,
                                              int32_t *found);

// `|O₁(t)_{G,D}| / |O₁_{G,D}|` under the invertible evolution (one
// resonance).
//
// # Safety
// `space` must be a live handle; `o1` must point to `obs_len` doubles;
// `out` must be writable.
enum GamowlabStatus gamowlab_growth_witness(const struct GamowlabSpace *space,
                                            const double *o1,
                                            size_t obs_len,
                                            double t,
                                            double *out);

// Applies the dual amplitude-damping channel `n` times to a 2×2 observable
// (8 doubles in, 8 doubles out).
//
// # Safety
// `obs` and `out` must each point to 8 doubles.
enum GamowlabStatus gamowlab_damping_iterate(double p, size_t n, const double *obs, double *out);

// Closed form of [`gamowlab_damping_iterate`].
//
// # Safety
// `obs` and `out` must each point to 8 doubles.
enum GamowlabStatus gamowlab_damping_closed_form(double p,
                                                 size_t n,
                                                 const double *obs,
                                                 double *out);

// Projector onto `range(p) ∩ range(q)`; all buffers hold `len = 2·d·d`
// doubles.
//
// # Safety
// `p`, `q` and `out` must each point to `len` doubles.
enum GamowlabStatus gamowlab_projector_meet(const double *p,
                                            const double *q,
                                            size_t len,
                                            double *out);

// Projector onto `range(p) + range(q)`; all buffers hold `len = 2·d·d`
// doubles.
//
// # Safety
// `p`, `q` and `out` must each point to `len` doubles.
enum GamowlabStatus gamowlab_projector_join(const double *p,
                                            const double *q,
                                            size_t len,
                                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMOWLAB_H */
